"""Embedding, topological-minor and minor relations on finite trees.

Deciders with witness models, a brute-force edit-sequence oracle, canonical
forms, enumeration and an exhaustive certification sweep.
"""

__version__ = "0.1.0"

from .canon import CanonicalCode, automorphisms, canonical_code, is_isomorphic
from .constructions import (attach_copies, child_type_multiset, enumerate_free_trees,
                            enumerate_rooted_trees, gen, replace_child_subtree)
from .decide import decide, decide_mutual, holds
from .models import (MinorModel, ModelCheck, Relation, RelationKind, check_model, compose_models,
                     enumerate_self_models, identity_model)
from .ops import OpKind, OpStep, apply_op, oracle_reachable
from .structure import (FixedElement, branch_vertices, center, closure, fixed_element, inf_vertices,
                        subtree_at, successors)
from .tree import RootedTree, Tree

__all__ = [
    "Tree", "RootedTree", "CanonicalCode", "FixedElement", "MinorModel", "ModelCheck", "Relation",
    "RelationKind", "OpKind", "OpStep", "canonical_code", "is_isomorphic", "automorphisms", "center",
    "closure", "branch_vertices", "inf_vertices", "fixed_element", "subtree_at", "successors",
    "apply_op", "oracle_reachable", "check_model", "decide", "decide_mutual", "holds",
    "compose_models", "identity_model", "enumerate_self_models", "gen", "enumerate_free_trees",
    "enumerate_rooted_trees", "child_type_multiset", "replace_child_subtree", "attach_copies",
]
