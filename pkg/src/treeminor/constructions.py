"""Tree generators, exhaustive enumeration and root-level grafting."""

from __future__ import annotations

import heapq
from collections import Counter
from typing import Sequence

import numpy as np

from ._accel import env_int
from .canon import CanonicalCode, free_code, rooted_code, subtree_codes, tree_from_code
from .errors import BadParams, NotAChild, SizeLimitExceeded
from .structure import subtree_at, successors
from .tree import RootedTree, Tree, norm_edge


def path(n: int) -> Tree:
    if n < 1:
        raise BadParams("path needs n >= 1")
    return Tree(n, frozenset((i, i + 1) for i in range(n - 1)))


def star(k: int) -> Tree:
    """K_{1,k}: hub 0 with k leaves."""
    if k < 0:
        raise BadParams("star needs k >= 0")
    return Tree(k + 1, frozenset((0, i) for i in range(1, k + 1)))


def spider(*legs: int) -> Tree:
    """Hub 0 with one path of each given length hanging off it."""
    if any(leg < 1 for leg in legs):
        raise BadParams("spider leg lengths must be >= 1")
    edges = []
    nxt = 1
    for leg in legs:
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(nxt, frozenset(edges))


def caterpillar(legs: Sequence[int]) -> Tree:
    """Spine ``0..len(legs)-1`` with ``legs[i]`` pendant leaves at spine vertex i."""
    if not legs or any(k < 0 for k in legs):
        raise BadParams("caterpillar needs a non-empty list of leaf counts >= 0")
    spine = len(legs)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i, k in enumerate(legs):
        for _ in range(k):
            edges.append((i, nxt))
            nxt += 1
    return Tree(nxt, frozenset(edges))


def from_prufer(seq: Sequence[int]) -> Tree:
    n = len(seq) + 2
    if any(not 0 <= s < n for s in seq):
        raise BadParams("Prüfer entries must lie in 0..n-1")
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Tree(n, frozenset(norm_edge(*e) for e in edges))


def random_prufer(n: int, seed: int) -> Tree:
    """Uniform random labelled tree on n vertices, deterministic in ``seed``."""
    if n < 1:
        raise BadParams("random tree needs n >= 1")
    if n == 1:
        return Tree(1)
    if n == 2:
        return path(2)
    rng = np.random.default_rng(seed)
    return from_prufer([int(x) for x in rng.integers(0, n, size=n - 2)])


FAMILIES = {
    "path": lambda p: path(*p),
    "star": lambda p: star(*p),
    "spider": lambda p: spider(*p),
    "caterpillar": lambda p: caterpillar(p),
    "prufer": lambda p: random_prufer(*p),
}


def gen(family: str, params: Sequence[int]) -> Tree:
    try:
        builder = FAMILIES[family.lower()]
    except KeyError:
        raise BadParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    try:
        return builder(list(params))
    except TypeError:
        raise BadParams(f"wrong number of parameters for {family}") from None


def _check_cap(n: int, cap: int | None) -> None:
    if cap is None:
        cap = env_int("TREEMINOR_ENUM_CAP", 10)
    if not 1 <= n <= cap:
        raise SizeLimitExceeded(f"enumeration supports 1 <= n <= {cap}, got {n}")


def _grow_codes(n: int, code_of) -> list[str]:
    """Codes of all trees on n vertices, grown one leaf at a time and deduped."""
    layer = {"()"}
    for _ in range(n - 1):
        nxt = set()
        for code in layer:
            rt = tree_from_code(code)
            base = rt.tree
            for v in range(base.n):
                t = Tree(base.n + 1, base.edges | {(v, base.n)})
                nxt.add(code_of(t))
        layer = nxt
    return sorted(layer)


def enumerate_free_trees(n: int, cap: int | None = None) -> list[Tree]:
    """One tree per isomorphism class on n vertices, ordered by canonical code."""
    _check_cap(n, cap)
    return [tree_from_code(c).tree for c in _grow_codes(n, free_code)]


def enumerate_rooted_trees(n: int, cap: int | None = None) -> list[RootedTree]:
    """One rooted tree per rooted isomorphism class, root 0, ordered by code."""
    _check_cap(n, cap)
    return [tree_from_code(c) for c in _grow_codes(n, lambda t: rooted_code(t.rooted_at(0)))]


def child_type_multiset(rt: RootedTree) -> Counter:
    """Multiplicity of each rooted isomorphism type among the root's child subtrees."""
    codes = subtree_codes(rt)
    return Counter(CanonicalCode(codes[c], rooted=True) for c in successors(rt, rt.root))


def _graft(rt: RootedTree, drop: Sequence[int], grafts: Sequence[RootedTree]) -> RootedTree:
    """Remove the root-children subtrees in ``drop``, hang each graft under the root."""
    gone = set()
    for v in drop:
        gone.update(rt.subtree_vertices(v))
    keep = [v for v in range(rt.n) if v not in gone]
    edges = [e for e in rt.tree.edges if e[0] not in gone and e[1] not in gone]
    nxt = rt.n
    for g in grafts:
        base = nxt
        edges.extend((base + a, base + b) for a, b in g.tree.edges)
        edges.append((rt.root, base + g.root))
        keep.extend(range(base, base + g.n))
        nxt += g.n
    mapping = {old: new for new, old in enumerate(sorted(keep))}
    tree = Tree(len(keep), frozenset(norm_edge(mapping[a], mapping[b]) for a, b in edges))
    return RootedTree(tree, mapping[rt.root])


def replace_child_subtree(rt: RootedTree, v: int, s: RootedTree) -> RootedTree:
    """Swap the root-child subtree ``(T_v, v)`` for a fresh copy of ``s``."""
    if v not in rt.children[rt.root]:
        raise NotAChild(f"vertex {v} is not a child of the root {rt.root}")
    return _graft(rt, [v], [s])


def attach_copies(rt: RootedTree, beta_code, k: RootedTree, lam: int) -> RootedTree:
    """Drop every root child whose subtree has code ``beta_code`` and attach ``lam`` copies of ``k``."""
    if lam < 0:
        raise BadParams("lambda must be a natural number")
    beta = str(beta_code)
    codes = subtree_codes(rt)
    drop = [c for c in rt.children[rt.root] if codes[c] == beta]
    return _graft(rt, drop, [k] * lam)


def child_subtree(rt: RootedTree, v: int) -> RootedTree:
    """Convenience: the rooted subtree ``(T_v, v)`` without its relabelling map."""
    return subtree_at(rt, v)[0]


__all__ = [
    "path", "star", "spider", "caterpillar", "from_prufer", "random_prufer", "gen",
    "enumerate_free_trees", "enumerate_rooted_trees", "child_type_multiset",
    "replace_child_subtree", "attach_copies", "child_subtree",
]
