"""Deciders for embedding, topological minor and graph minor, with witnesses.

Rooted questions run one table kernel on the given rootings. Unrooted
questions root the pattern at vertex 0 and try every host root in ascending
order: a model of the pattern in the host is a rooted model once the host is
rooted inside the branch set of pattern vertex 0.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels as K
from .errors import SizeLimitExceeded
from .models import AnyTree, MinorModel, Relation, RelationKind
from .tree import RootedTree, Tree


def resolve_relation(rel, pattern: AnyTree, host: AnyTree) -> RelationKind:
    """Accept a RelationKind, a Relation or its name; names infer rootedness from the inputs."""
    if isinstance(rel, RelationKind):
        kind = rel
    else:
        both = isinstance(pattern, RootedTree) and isinstance(host, RootedTree)
        kind = RelationKind(Relation(rel), both)
    if kind.rooted and not (isinstance(pattern, RootedTree) and isinstance(host, RootedTree)):
        raise TypeError("rooted relations need rooted pattern and host")
    return kind


def _plain(t: AnyTree) -> Tree:
    return t.tree if isinstance(t, RootedTree) else t


def _tables(kind: Relation, prt: RootedTree, hrt: RootedTree):
    a, b = prt.kernel_arrays, hrt.kernel_arrays
    if kind is Relation.EMBED:
        return K.embed_table(*a, *b)
    if kind is Relation.TOPO:
        return K.topo_table(*a, *b)
    widest = max((len(c) for c in prt.children), default=0)
    if widest > K.MAX_MINOR_CHILDREN:
        raise SizeLimitExceeded(f"pattern vertex with {widest} children exceeds the minor DP cap of "
                                f"{K.MAX_MINOR_CHILDREN}")
    return K.minor_table(*a, *b)


def _upward_slots(D, prt: RootedTree, hrt: RootedTree) -> np.ndarray:
    """``U[w, c]``: some host vertex u hangs off a proper ancestor of c, off the
    path to c, with ``D[w, u]``."""
    U = np.zeros_like(D)
    for c in hrt.bfs_order:
        p = hrt.parent[c]
        if p < 0:
            continue
        side = [u for u in hrt.children[p] if u != c]
        row = U[:, p].copy()
        if side:
            row |= D[:, side].max(axis=1)
        U[:, c] = row
    return U


def _topo_root_anchor(tabs, prt: RootedTree, hrt: RootedTree):
    """Rooted topological anchor for the pattern root.

    Besides a plain subdivision embedding below its center, the root's branch
    set may climb from its center to an ancestor y and drop one child into a
    different branch hanging off that climb; the branch set's top is then y.
    Returns ``(center, None)`` or ``(center, (child, u))``, or None.
    """
    T, D = tabs
    r = prt.root
    if not D[r, hrt.root] and prt.n > 1:
        U = _upward_slots(D, prt, hrt)
    else:
        U = None
    for c in hrt.bfs_order:
        if T[r, c]:
            return c, None
        if U is None:
            continue
        ws = list(prt.children[r])
        cs = list(hrt.children[c])
        for w in ws:
            if not U[w, c]:
                continue
            rest = [x for x in ws if x != w]
            if rest and (len(rest) > len(cs) or _match(D, rest, cs)[0] < 0):
                continue
            y = c
            while True:
                y = hrt.parent[y]
                side = [u for u in hrt.children[y] if not hrt.leq(u, c) and D[w, u]]
                if side:
                    return c, (w, side[0])
    return None


def _anchor(kind: RelationKind, tab, prt: RootedTree, hrt: RootedTree):
    """Host vertex for the pattern root in some rooted model, or None."""
    r, s = prt.root, hrt.root
    if kind.kind is Relation.MINOR:
        return s if tab[r, s] else None
    if kind.kind is Relation.TOPO:
        if kind.rooted:
            return _topo_root_anchor(tab, prt, hrt)
        T, D = tab
        if not D[r, s]:
            return None
        return next(x for x in hrt.bfs_order if T[r, x]), None
    hits = [x for x in hrt.bfs_order if tab[r, x]]
    return hits[0] if hits else None


def _search(pattern: AnyTree, host: AnyTree, kind: RelationKind):
    """Yield ``(prt, hrt, table, anchor)`` for the first successful rooting, else None."""
    pat, hst = _plain(pattern), _plain(host)
    if pat.n > hst.n:
        return None
    if kind.rooted:
        prt, hrt = pattern, host
        tab = _tables(kind.kind, prt, hrt)
        x = _anchor(kind, tab, prt, hrt)
        return None if x is None else (prt, hrt, tab, x)
    prt = pat.rooted_at(0)
    for h in range(hst.n):
        hrt = hst.rooted_at(h)
        tab = _tables(kind.kind, prt, hrt)
        x = _anchor(kind, tab, prt, hrt)
        if x is not None:
            return prt, hrt, tab, x
    return None


def holds(pattern: AnyTree, host: AnyTree, rel) -> bool:
    """Whether pattern <= host under ``rel``, without building a witness."""
    return _search(pattern, host, resolve_relation(rel, pattern, host)) is not None


def decide(pattern: AnyTree, host: AnyTree, rel) -> MinorModel | None:
    """A witness model for pattern <= host under ``rel``, or None."""
    kind = resolve_relation(rel, pattern, host)
    found = _search(pattern, host, kind)
    if found is None:
        return None
    prt, hrt, tab, x = found
    if kind.kind is Relation.EMBED:
        sets = _embed_witness(prt, hrt, tab, x)
    elif kind.kind is Relation.TOPO:
        sets = _topo_witness(prt, hrt, tab, x, prefer_singletons=not kind.rooted)
    else:
        sets = _minor_witness(prt, hrt, tab, x)
    return MinorModel(pattern, host, sets, kind)


def decide_mutual(t1: AnyTree, t2: AnyTree, rel) -> bool:
    if _plain(t1).n != _plain(t2).n:
        return False  # each direction forces |t1| <= |t2|
    return holds(t1, t2, rel) and holds(t2, t1, rel)


def _match(tab, ws, cs) -> list[int]:
    """Host children for ``ws`` (in order), or ``[-1, ...]`` when none saturate."""
    m = K.match_left(np.ascontiguousarray(tab[np.ix_(ws, cs)]))
    return [cs[j] if j >= 0 else -1 for j in m]


def _embed_witness(prt, hrt, E, x0):
    out = {}
    stack = [(prt.root, x0)]
    while stack:
        v, x = stack.pop()
        out[v] = {x}
        ws = list(prt.children[v])
        if ws:
            stack.extend(zip(ws, _match(E, ws, list(hrt.children[x]))))
    return out


def _topo_witness(prt, hrt, tabs, anchor, prefer_singletons):
    T, D = tabs
    x0, climb = anchor
    r = prt.root
    phi = {r: x0}
    legs = {}  # pattern child w -> host vertices strictly between phi(parent) and phi(w)
    out_root = {x0}
    todo = []
    ws = list(prt.children[r])
    if climb is not None:
        w, u = climb
        ws.remove(w)
        y = x0
        while hrt.parent[u] != y:
            y = hrt.parent[y]
            out_root.add(y)
        todo.append((w, u))
    if ws:
        todo.extend(zip(ws, _match(D, ws, list(hrt.children[x0]))))
    stack = []

    def hang(w, c):
        z = next(y for y in hrt.subtree_vertices(c) if T[w, y])
        path = [z]
        while path[-1] != c:
            path.append(hrt.parent[path[-1]])
        legs[w] = path[1:]
        phi[w] = z
        stack.append((w, z))

    for w, c in todo:
        hang(w, c)
    while stack:
        v, x = stack.pop()
        ws = list(prt.children[v])
        if ws:
            for w, c in zip(ws, _match(D, ws, list(hrt.children[x]))):
                hang(w, c)
    deg = [len(a) for a in prt.tree.adjacency]
    out = {v: {x} for v, x in phi.items()}
    out[r] = out_root
    for w, leg in legs.items():
        v = prt.parent[w]
        owner = v if prefer_singletons and deg[w] > 2 and deg[v] <= 2 else w
        out[owner].update(leg)
    return out


def _minor_witness(prt, hrt, A, y0):
    pch, hch = prt.children, hrt.children

    @lru_cache(maxsize=None)
    def fits(v, mask, x):
        """Children of v in ``mask`` sit at incomparable tops inside S_x."""
        if mask & (mask - 1) == 0:
            return bool(A[pch[v][mask.bit_length() - 1], x])
        return spread(v, mask, x, 0) is not None

    @lru_cache(maxsize=None)
    def spread(v, mask, x, i):
        """Split ``mask`` over host children ``hch[x][i:]``; returns the chosen submasks."""
        cs = hch[x]
        if mask == 0:
            return ()
        if i == len(cs):
            return None
        subs = [0]
        sub = mask
        while sub:
            subs.append(sub)
            sub = (sub - 1) & mask
        subs.sort(key=lambda s: (bin(s).count("1"), s))
        for sub in subs:
            if sub and not fits(v, sub, cs[i]):
                continue
            rest = spread(v, mask ^ sub, x, i + 1)
            if rest is not None:
                return (sub,) + rest
        return None

    out = {}

    def place(v, y):
        branch = {y}
        out[v] = branch
        work = [((1 << len(pch[v])) - 1, y)] if pch[v] else []
        while work:
            mask, x = work.pop()
            choice = spread(v, mask, x, 0)
            for c, sub in zip(hch[x], choice):
                if sub == 0:
                    continue
                if sub & (sub - 1) == 0:
                    place(pch[v][sub.bit_length() - 1], c)
                else:
                    branch.add(c)
                    work.append((sub, c))

    place(prt.root, y0)
    return out
