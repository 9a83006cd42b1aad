"""Minor models (branch-set maps), their validation and composition."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping

from ._accel import env_int
from .errors import FormatError, HostPatternMismatch, SizeLimitExceeded
from .structure import branch_vertices
from .tree import RootedTree, Tree

AnyTree = Tree | RootedTree


class Relation(str, Enum):
    EMBED = "embed"
    TOPO = "topo"
    MINOR = "minor"


@dataclass(frozen=True)
class RelationKind:
    kind: Relation
    rooted: bool = False

    @classmethod
    def parse(cls, name: str | Relation, rooted: bool = False) -> "RelationKind":
        try:
            return cls(Relation(name), rooted)
        except ValueError:
            raise ValueError(f"unknown relation {name!r}; expected embed, topo or minor") from None

    def __str__(self) -> str:
        return f"{'rooted ' if self.rooted else ''}{self.kind.value}"


MINOR = RelationKind(Relation.MINOR)


def _plain(t: AnyTree) -> Tree:
    return t.tree if isinstance(t, RootedTree) else t


@dataclass(frozen=True)
class MinorModel:
    """Map from pattern vertices to disjoint connected host vertex sets.

    ``relation`` selects the extra shape constraint that ``check_model``
    enforces on top of the plain minor conditions.
    """

    pattern: AnyTree
    host: AnyTree
    branch_sets: Mapping[int, frozenset]
    relation: RelationKind = MINOR

    def __post_init__(self):
        object.__setattr__(self, "branch_sets",
                           {int(v): frozenset(int(x) for x in s) for v, s in self.branch_sets.items()})

    @property
    def rooted(self) -> bool:
        return isinstance(self.pattern, RootedTree) and isinstance(self.host, RootedTree)

    def __getitem__(self, v: int) -> frozenset:
        return self.branch_sets[v]

    def is_singleton(self) -> bool:
        return all(len(s) == 1 for s in self.branch_sets.values())

    def vertex_map(self) -> tuple[int, ...]:
        """For all-singleton models, the underlying vertex map."""
        return tuple(next(iter(self.branch_sets[v])) for v in range(_plain(self.pattern).n))


@dataclass
class ModelCheck:
    ok: bool
    clause: str | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _fail(clause: str, **detail) -> ModelCheck:
    return ModelCheck(False, clause, detail)


def _connected(t: Tree, vs: frozenset) -> bool:
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in t.adjacency[x]:
            if y in vs and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def set_top(rt: RootedTree, vs) -> int:
    """Tree-order minimum of a connected vertex set: its vertex nearest the root."""
    return min(vs, key=lambda x: (rt.depth[x], x))


def contact_edges(m: MinorModel) -> dict[tuple[int, int], tuple[int, int]]:
    """For each pattern edge ``(v, w)``, a host edge ``(x, y)`` with x in mu(v), y in mu(w).

    Between two disjoint connected sets of a tree there is at most one edge.
    Both orientations are stored.
    """
    host = _plain(m.host)
    owner = {x: v for v, s in m.branch_sets.items() for x in s}
    out = {}
    for x, y in host.edges:
        a, b = owner.get(x), owner.get(y)
        if a is not None and b is not None and a != b:
            out[(a, b)] = (x, y)
            out[(b, a)] = (y, x)
    return out


def _topo_shape(host: Tree, vs: frozenset, contacts: list[int]) -> bool:
    """Branch set is a path with a center whose legs to the contacts meet only at the center."""
    if any(sum(1 for y in host.adjacency[x] if y in vs) > 2 for x in vs):
        return False
    for c in sorted(vs):
        legs = []
        for x in contacts:
            if x == c:
                continue
            legs.append(host.path(c, x)[1:])
        used = set()
        clash = False
        for leg in legs:
            if used.intersection(leg):
                clash = True
                break
            used.update(leg)
        if not clash and used | {c} == set(vs):
            return True
    return False


def check_model(m: MinorModel) -> ModelCheck:
    """Validate ``m`` against the model conditions and its relation's shape.

    On failure the result names the first violated clause (``keys``, ``range``,
    ``nonempty``, ``connected``, ``disjoint``, ``edge``, ``shape``, ``rooted``)
    and carries the offending vertices.
    """
    pat, host = _plain(m.pattern), _plain(m.host)
    bs = m.branch_sets
    if set(bs) != set(range(pat.n)):
        return _fail("keys", missing=sorted(set(range(pat.n)) - set(bs)), extra=sorted(set(bs) - set(range(pat.n))))
    for v in range(pat.n):
        s = bs[v]
        if not s:
            return _fail("nonempty", vertex=v)
        bad = [x for x in s if not 0 <= x < host.n]
        if bad:
            return _fail("range", vertex=v, hosts=sorted(bad))
        if not _connected(host, s):
            return _fail("connected", vertex=v, branch_set=sorted(s))
    owner: dict[int, int] = {}
    for v in range(pat.n):
        for x in bs[v]:
            if x in owner:
                return _fail("disjoint", vertices=[owner[x], v], host_vertex=x)
            owner[x] = v
    contacts = contact_edges(m)
    for v, w in pat.edge_list:
        if (v, w) not in contacts:
            return _fail("edge", pattern_edge=[v, w])

    kind = m.relation.kind
    if kind is Relation.EMBED and not m.is_singleton():
        v = next(v for v in range(pat.n) if len(bs[v]) != 1)
        return _fail("shape", vertex=v, reason="embedding needs singleton branch sets")
    if kind is Relation.TOPO:
        for v in range(pat.n):
            pts = [contacts[(v, w)][0] for w in pat.adjacency[v]]
            if not _topo_shape(host, bs[v], pts):
                return _fail("shape", vertex=v, reason="branch set is not a subdivided star path")

    if m.relation.rooted:
        if not m.rooted:
            return _fail("rooted", reason="rooted relation needs rooted pattern and host")
        rp, rh = m.pattern, m.host
        tops = [set_top(rh, bs[v]) for v in range(pat.n)]
        for v in range(pat.n):
            for w in range(pat.n):
                if rp.leq(v, w) != rh.leq(tops[v], tops[w]):
                    return _fail("rooted", pair=[v, w], tops=[tops[v], tops[w]])
    return ModelCheck(True)


def branch_vertex_violations(m: MinorModel) -> list[int]:
    """Pattern vertices of degree > 2 whose branch set misses every host branch vertex."""
    fp = branch_vertices(_plain(m.pattern))
    fh = branch_vertices(_plain(m.host))
    return sorted(v for v in fp if not (m.branch_sets[v] & fh))


def identity_model(t: AnyTree, relation: RelationKind | None = None) -> MinorModel:
    if relation is None:
        relation = RelationKind(Relation.EMBED, isinstance(t, RootedTree))
    return MinorModel(t, t, {v: frozenset([v]) for v in range(_plain(t).n)}, relation)


def compose_models(m1: MinorModel, m2: MinorModel) -> MinorModel:
    """Model of m1.pattern in m2.host: each branch set is the union of the
    m2-images of the m1 branch set."""
    if m1.host != m2.pattern:
        raise HostPatternMismatch("host of the first model differs from pattern of the second")
    sets = {v: frozenset().union(*(m2.branch_sets[w] for w in s)) for v, s in m1.branch_sets.items()}
    order = [Relation.EMBED, Relation.TOPO, Relation.MINOR]
    kind = max(m1.relation.kind, m2.relation.kind, key=order.index)
    if kind is Relation.TOPO:
        kind = Relation.MINOR  # unions of subdivided paths need not be paths
    rooted = m1.relation.rooted and m2.relation.rooted
    return MinorModel(m1.pattern, m2.host, sets, RelationKind(kind, rooted))


def connected_sets(host: Tree) -> list[frozenset]:
    """Every nonempty connected vertex set of ``host``, smallest first."""
    layer = {frozenset([x]) for x in range(host.n)}
    out = set(layer)
    while layer:
        nxt = set()
        for s in layer:
            for x in s:
                for y in host.adjacency[x]:
                    if y not in s:
                        nxt.add(s | {y})
        nxt -= out
        out |= nxt
        layer = nxt
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def enumerate_models(pattern: AnyTree, host: AnyTree, relation: RelationKind = MINOR,
                     limit: int | None = None) -> Iterator[MinorModel]:
    """Brute-force every valid model of ``pattern`` in ``host``.

    Pattern vertices are assigned in BFS order; candidate branch sets are
    connected host sets disjoint from earlier ones, bounded so that enough host
    vertices remain for the unassigned pattern vertices.
    """
    if limit is None:
        limit = env_int("TREEMINOR_ORACLE_CAP", 8)
    pat, hst = _plain(pattern), _plain(host)
    if hst.n > limit:
        raise SizeLimitExceeded(f"host has {hst.n} vertices; brute-force model search is capped at {limit}")
    order = list(pat.rooted_at(0).bfs_order)
    all_sets = connected_sets(hst)
    adj_h = hst.adjacency

    def touches(a: frozenset, b: frozenset) -> bool:
        return any(y in b for x in a for y in adj_h[x])

    assign: dict[int, frozenset] = {}

    def rec(i: int, used: frozenset):
        if i == len(order):
            m = MinorModel(pattern, host, dict(assign), relation)
            if check_model(m):
                yield m
            return
        v = order[i]
        budget = hst.n - len(used) - (len(order) - i - 1)
        for s in all_sets:
            if len(s) > budget:
                break
            if s & used:
                continue
            if any(w in assign and not touches(s, assign[w]) for w in pat.adjacency[v]):
                continue
            assign[v] = s
            yield from rec(i + 1, used | s)
            del assign[v]

    yield from rec(0, frozenset())


def enumerate_self_models(t: AnyTree, limit: int | None = None) -> list[MinorModel]:
    """All models of ``t`` in itself (the collection written GM(T)/GE(T))."""
    return list(enumerate_models(t, t, RelationKind(Relation.MINOR, isinstance(t, RootedTree)), limit))


def model_to_json(m: MinorModel) -> str:
    data = {
        "pattern_n": _plain(m.pattern).n,
        "host_n": _plain(m.host).n,
        "relation": m.relation.kind.value,
        "rooted": bool(m.relation.rooted),
        "branch_sets": {str(v): sorted(m.branch_sets[v]) for v in sorted(m.branch_sets)},
    }
    return json.dumps(data)


def model_from_json(text: str | dict, pattern: AnyTree, host: AnyTree) -> MinorModel:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        if data["pattern_n"] != _plain(pattern).n or data["host_n"] != _plain(host).n:
            raise FormatError("witness sizes do not match the supplied trees")
        rel = RelationKind.parse(data["relation"], bool(data["rooted"]))
        sets = {int(k): frozenset(v) for k, v in data["branch_sets"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed witness JSON: {exc}") from None
    return MinorModel(pattern, host, sets, rel)
