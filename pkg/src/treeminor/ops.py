"""Local edit operations and the brute-force reachability oracle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ._accel import env_int
from .canon import free_code
from .errors import MissingTarget, NotDegree2, SizeLimitExceeded, WouldDisconnect
from .models import Relation, RelationKind
from .tree import Tree, norm_edge


class OpKind(str, Enum):
    EDGE_REMOVAL = "edge-removal"
    EDGE_CONTRACTION = "edge-contraction"
    VERTEX_REMOVAL = "vertex-removal"
    DEG2_DISSOLUTION = "deg2-dissolution"


OPERATIONS = {
    Relation.EMBED: (OpKind.EDGE_REMOVAL, OpKind.VERTEX_REMOVAL),
    Relation.TOPO: (OpKind.EDGE_REMOVAL, OpKind.VERTEX_REMOVAL, OpKind.DEG2_DISSOLUTION),
    Relation.MINOR: (OpKind.EDGE_REMOVAL, OpKind.EDGE_CONTRACTION, OpKind.VERTEX_REMOVAL),
}


@dataclass(frozen=True)
class OpStep:
    kind: OpKind
    target: int | tuple[int, int]

    def __str__(self) -> str:
        tgt = self.target if isinstance(self.target, int) else f"{self.target[0]}-{self.target[1]}"
        return f"{self.kind.value}({tgt})"


def _drop_vertex(t: Tree, v: int, extra_edge=None) -> tuple[Tree, dict[int, int]]:
    mapping = {old: old - (old > v) for old in range(t.n) if old != v}
    edges = [(mapping[a], mapping[b]) for a, b in t.edges if v not in (a, b)]
    if extra_edge is not None:
        edges.append((mapping[extra_edge[0]], mapping[extra_edge[1]]))
    return Tree(t.n - 1, frozenset(norm_edge(a, b) for a, b in edges)), mapping


def apply_op(t: Tree, step: OpStep) -> tuple[Tree, dict[int, int]]:
    """Apply one edit and relabel contiguously.

    Returns the new tree and a map from surviving old vertices to new ids; after
    a contraction both endpoints map to the merged vertex. Edge removal is only
    allowed on a pendant edge and discards the isolated leaf, so the result is a
    tree again.
    """
    kind, tgt = step.kind, step.target
    if kind in (OpKind.EDGE_REMOVAL, OpKind.EDGE_CONTRACTION):
        u, v = norm_edge(*tgt)
        if not t.has_edge(u, v):
            raise MissingTarget(f"edge {u}-{v} not in tree")
        if kind is OpKind.EDGE_REMOVAL:
            if len(t.adjacency[v]) == 1:
                return _drop_vertex(t, v)
            if len(t.adjacency[u]) == 1:
                return _drop_vertex(t, u)
            raise WouldDisconnect(f"removing inner edge {u}-{v} splits the tree")
        mapping = {old: (u if old == v else old) for old in range(t.n)}
        mapping = {old: new - (new > v) for old, new in mapping.items()}
        edges = frozenset(norm_edge(mapping[a], mapping[b]) for a, b in t.edges if (a, b) != (u, v))
        return Tree(t.n - 1, edges), mapping
    t.check_vertex(tgt)
    if kind is OpKind.VERTEX_REMOVAL:
        if t.n == 1:
            raise WouldDisconnect("cannot remove the only vertex")
        if len(t.adjacency[tgt]) != 1:
            raise WouldDisconnect(f"vertex {tgt} is not a leaf")
        return _drop_vertex(t, tgt)
    if kind is OpKind.DEG2_DISSOLUTION:
        nb = t.adjacency[tgt]
        if len(nb) != 2:
            raise NotDegree2(f"vertex {tgt} has degree {len(nb)}")
        return _drop_vertex(t, tgt, extra_edge=nb)
    raise ValueError(f"unknown operation {kind!r}")


def legal_steps(t: Tree, kinds) -> list[OpStep]:
    out = []
    for kind in kinds:
        if kind is OpKind.EDGE_REMOVAL:
            out += [OpStep(kind, e) for e in t.edge_list if min(len(t.adjacency[e[0]]), len(t.adjacency[e[1]])) == 1]
        elif kind is OpKind.EDGE_CONTRACTION:
            out += [OpStep(kind, e) for e in t.edge_list]
        elif kind is OpKind.VERTEX_REMOVAL:
            if t.n > 1:
                out += [OpStep(kind, v) for v in range(t.n) if len(t.adjacency[v]) == 1]
        elif kind is OpKind.DEG2_DISSOLUTION:
            out += [OpStep(kind, v) for v in range(t.n) if len(t.adjacency[v]) == 2]
    return out


def _kind_of(rel) -> Relation:
    if isinstance(rel, RelationKind):
        if rel.rooted:
            raise ValueError("the operation oracle handles unrooted relations only")
        return rel.kind
    return Relation(rel)


def reachable_codes(host: Tree, rel, min_size: int = 1, limit: int | None = None) -> dict[str, Tree]:
    """Free codes of every tree reachable from ``host`` by the relation's edits.

    Every edit removes exactly one vertex, so the search walks down one size
    layer at a time and stops at ``min_size``.
    """
    if limit is None:
        limit = env_int("TREEMINOR_ORACLE_CAP", 8)
    if host.n > limit:
        raise SizeLimitExceeded(f"host has {host.n} vertices; the operation oracle is capped at {limit}")
    kinds = OPERATIONS[_kind_of(rel)]
    seen = {free_code(host): host}
    layer = [host]
    while layer and layer[0].n > min_size:
        nxt = []
        for t in layer:
            for step in legal_steps(t, kinds):
                s, _ = apply_op(t, step)
                code = free_code(s)
                if code not in seen:
                    seen[code] = s
                    nxt.append(s)
        layer = nxt
    return seen


def oracle_reachable(pattern: Tree, host: Tree, rel, limit: int | None = None) -> bool:
    """True iff some edit sequence from ``rel``'s operation set turns host into pattern."""
    if pattern.n > host.n:
        if limit is not None and host.n > limit:
            raise SizeLimitExceeded(f"host has {host.n} vertices; the operation oracle is capped at {limit}")
        return False
    return free_code(pattern) in reachable_codes(host, rel, min_size=pattern.n, limit=limit)
