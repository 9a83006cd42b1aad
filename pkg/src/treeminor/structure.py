"""Structural queries: centers, closures, branch vertices, rooted subtrees."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import MissingTarget
from .tree import RootedTree, Tree, compact, norm_edge


class ElementKind(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True)
class FixedElement:
    kind: ElementKind
    value: int | tuple[int, int]

    def vertices(self) -> tuple[int, ...]:
        return (self.value,) if self.kind is ElementKind.VERTEX else tuple(self.value)

    def is_stabilized_by(self, perm) -> bool:
        """True if the vertex bijection ``perm`` maps this element onto itself."""
        if self.kind is ElementKind.VERTEX:
            return perm[self.value] == self.value
        u, v = self.value
        return norm_edge(perm[u], perm[v]) == self.value

    def __str__(self) -> str:
        return " ".join([self.kind.value, *map(str, self.vertices())])


def center(t: Tree) -> FixedElement:
    """Strip leaves layer by layer until one vertex or one edge remains."""
    n = t.n
    if n == 1:
        return FixedElement(ElementKind.VERTEX, 0)
    deg = [len(a) for a in t.adjacency]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adjacency[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    layer.sort()
    if len(layer) == 1:
        return FixedElement(ElementKind.VERTEX, layer[0])
    return FixedElement(ElementKind.EDGE, (layer[0], layer[1]))


def closure(t: Tree, a: Iterable[int]) -> frozenset[int]:
    """A together with every vertex on a path between two members of A."""
    a = set(a)
    for v in a:
        t.check_vertex(v)
    if len(a) <= 1:
        return frozenset(a)
    # prune leaves outside A until none are left; what survives is the spanning subtree
    alive = [True] * t.n
    deg = [len(x) for x in t.adjacency]
    stack = [v for v in range(t.n) if deg[v] <= 1 and v not in a]
    while stack:
        v = stack.pop()
        alive[v] = False
        for w in t.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1 and w not in a:
                    stack.append(w)
    return frozenset(v for v in range(t.n) if alive[v])


def branch_vertices(t: Tree) -> frozenset[int]:
    """F(T): vertices of degree greater than two."""
    return frozenset(int(v) for v in (t.degrees > 2).nonzero()[0])


def inf_vertices(t: Tree) -> frozenset[int]:
    """Vertices of infinite degree. Always empty for a finite tree."""
    return frozenset()


def fixed_element(t: Tree) -> FixedElement:
    """A vertex or edge fixed by every self-model of ``t``.

    The descending sequence of closures of infinite-degree vertices is empty from
    the first step on a finite tree, so the search falls through to the tree
    itself, where every self-model is an automorphism and the center is fixed.
    """
    stage = t
    hubs = inf_vertices(stage)
    while hubs:
        stage, _ = compact(stage, closure(stage, hubs))
        hubs = inf_vertices(stage)
    return center(stage)


def successors(rt: RootedTree, v: int) -> list[int]:
    rt.tree.check_vertex(v)
    return sorted(rt.children[v])


def subtree_at(rt: RootedTree, v: int) -> tuple[RootedTree, dict[int, int]]:
    """The full subtree ``(T_v, v)`` and the old-to-new vertex map."""
    if not (0 <= v < rt.n):
        raise MissingTarget(f"vertex {v} not in tree of size {rt.n}")
    return compact(rt.tree, rt.subtree_vertices(v), root=v)
