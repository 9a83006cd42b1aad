"""Finite trees on vertices ``0..n-1`` and their rooted variant."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidTree, MissingTarget

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    """A finite simple tree. Edges are stored as sorted pairs ``(u, v)``, ``u < v``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidTree(f"a tree needs at least one vertex, got n={self.n}")
        edges = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidTree(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidTree(f"edge {u} {v} out of range for n={self.n}")
            e2 = norm_edge(u, v)
            if e2 in edges:
                raise InvalidTree(f"parallel edge {e2[0]} {e2[1]}")
            edges.add(e2)
        if len(edges) != self.n - 1:
            raise InvalidTree(f"expected {self.n - 1} edges, got {len(edges)}")
        object.__setattr__(self, "edges", frozenset(edges))
        # connectivity: n-1 edges + connected => tree
        seen = {0}
        stack = [0]
        adj = self.adjacency
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != self.n:
            raise InvalidTree("edge set is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None) -> "Tree":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=0)
        return cls(n, frozenset(edges))

    @classmethod
    def from_parents(cls, parents: Iterable[int]) -> "Tree":
        """Build from a parent array; the root has parent ``-1``."""
        parents = list(parents)
        return cls(len(parents), frozenset(norm_edge(v, p) for v, p in enumerate(parents) if p >= 0))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        if self.edges:
            arr = np.array(self.edge_list, dtype=np.int64)
            np.add.at(deg, arr.ravel(), 1)
        deg.setflags(write=False)
        return deg

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) <= 1]

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise MissingTarget(f"vertex {v} not in tree of size {self.n}")

    def relabel(self, mapping: Mapping[int, int] | Iterable[int]) -> "Tree":
        """Apply a vertex bijection (``mapping[old] = new``)."""
        if not isinstance(mapping, Mapping):
            mapping = dict(enumerate(mapping))
        return Tree(self.n, frozenset(norm_edge(mapping[u], mapping[v]) for u, v in self.edges))

    def path(self, u: int, v: int) -> list[int]:
        """Vertices on the unique u-v path, endpoints included."""
        rt = self.rooted_at(u)
        out = [v]
        while out[-1] != u:
            out.append(rt.parent[out[-1]])
        return out[::-1]

    def rooted_at(self, root: int) -> "RootedTree":
        cache = self.__dict__.setdefault("_rootings", {})
        rt = cache.get(root)
        if rt is None:
            rt = cache[root] = RootedTree(self, root)
        return rt

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={list(self.edge_list)})"


@dataclass(frozen=True)
class RootedTree:
    """A tree with a distinguished root and the induced tree order."""

    tree: Tree
    root: int

    def __post_init__(self):
        if not (0 <= self.root < self.tree.n):
            raise InvalidTree(f"root {self.root} out of range for n={self.tree.n}")

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def _bfs(self):
        n = self.tree.n
        parent = [-1] * n
        depth = [0] * n
        order = [self.root]
        seen = [False] * n
        seen[self.root] = True
        q = deque([self.root])
        adj = self.tree.adjacency
        while q:
            x = q.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    order.append(y)
                    q.append(y)
        return tuple(parent), tuple(depth), tuple(order)

    @property
    def parent(self) -> tuple[int, ...]:
        return self._bfs[0]

    @property
    def depth(self) -> tuple[int, ...]:
        return self._bfs[1]

    @property
    def bfs_order(self) -> tuple[int, ...]:
        return self._bfs[2]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        par = self.parent
        return tuple(tuple(y for y in self.tree.adjacency[x] if y != par[x]) for x in range(self.n))

    @cached_property
    def postorder(self) -> tuple[int, ...]:
        out: list[int] = []
        stack = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.children[x]):
                stack.append((c, False))
        return tuple(out)

    @cached_property
    def kernel_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR children (``ptr``, ``idx``) and postorder, as int64 arrays."""
        counts = np.array([len(c) for c in self.children], dtype=np.int64)
        ptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=ptr[1:])
        idx = np.fromiter((c for cs in self.children for c in cs), dtype=np.int64, count=int(ptr[-1]))
        post = np.array(self.postorder, dtype=np.int64)
        return ptr, idx, post

    def leq(self, v: int, w: int) -> bool:
        """Tree order: ``v <= w`` iff the root-to-w path passes through v."""
        depth, par = self.depth, self.parent
        while depth[w] > depth[v]:
            w = par[w]
        return v == w

    def subtree_vertices(self, v: int) -> list[int]:
        self.tree.check_vertex(v)
        out = [v]
        i = 0
        while i < len(out):
            out.extend(self.children[out[i]])
            i += 1
        return out

    def __repr__(self) -> str:
        return f"RootedTree(root={self.root}, n={self.n}, edges={list(self.tree.edge_list)})"


def compact(tree: Tree, keep: Iterable[int], root: int | None = None):
    """Induced subtree on ``keep`` relabelled to ``0..k-1`` by ascending old id.

    Returns ``(tree, mapping)`` or ``(RootedTree, mapping)`` when ``root`` is given.
    """
    keep = sorted(set(keep))
    mapping = {old: new for new, old in enumerate(keep)}
    sub = Tree(len(keep), frozenset(norm_edge(mapping[u], mapping[v])
                                    for u, v in tree.edges if u in mapping and v in mapping))
    if root is None:
        return sub, mapping
    return RootedTree(sub, mapping[root]), mapping


def single_vertex() -> Tree:
    return Tree(1, frozenset())
