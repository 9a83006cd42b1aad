"""AHU canonical codes, isomorphism tests and automorphism groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator

from .errors import FormatError
from .structure import ElementKind, center
from .tree import RootedTree, Tree


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Balanced-parenthesis AHU encoding; compares lexicographically."""

    code: str
    rooted: bool = False

    def __str__(self) -> str:
        return self.code


def subtree_codes(rt: RootedTree) -> list[str]:
    """AHU code of every full subtree ``(T_v, v)``, indexed by vertex."""
    codes = [""] * rt.n
    for x in rt.postorder:
        codes[x] = "(" + "".join(sorted(codes[c] for c in rt.children[x])) + ")"
    return codes


def rooted_code(rt: RootedTree) -> str:
    cache = rt.__dict__.get("_code")
    if cache is None:
        cache = rt.__dict__["_code"] = subtree_codes(rt)[rt.root]
    return cache


def free_code(t: Tree) -> str:
    cache = t.__dict__.get("_free_code")
    if cache is None:
        c = center(t)
        cache = min(rooted_code(t.rooted_at(v)) for v in c.vertices())
        t.__dict__["_free_code"] = cache
    return cache


def canonical_code(t: Tree | RootedTree) -> CanonicalCode:
    if isinstance(t, RootedTree):
        return CanonicalCode(rooted_code(t), rooted=True)
    return CanonicalCode(free_code(t), rooted=False)


def is_isomorphic(t1: Tree | RootedTree, t2: Tree | RootedTree) -> bool:
    """Rooted isomorphism for two rooted trees, free isomorphism for two free trees."""
    if isinstance(t1, RootedTree) != isinstance(t2, RootedTree):
        raise TypeError("cannot compare a rooted tree with an unrooted one")
    return t1.n == t2.n and canonical_code(t1) == canonical_code(t2)


def tree_from_code(code: str | CanonicalCode) -> RootedTree:
    """Decode an AHU string; vertices are numbered in preorder with root 0."""
    s = str(code)
    parents: list[int] = []
    stack: list[int] = []
    for i, ch in enumerate(s):
        if ch == "(":
            parents.append(stack[-1] if stack else -1)
            stack.append(len(parents) - 1)
            if parents[-1] == -1 and len(parents) > 1:
                raise FormatError(f"code {s!r} has more than one root")
        elif ch == ")":
            if not stack:
                raise FormatError(f"unbalanced code {s!r}")
            stack.pop()
        else:
            raise FormatError(f"bad character {ch!r} in code")
    if stack or not parents:
        raise FormatError(f"unbalanced code {s!r}")
    return RootedTree(Tree.from_parents(parents), 0)


def _rooted_isos(ra: RootedTree, ca: list[str], a: int,
                 rb: RootedTree, cb: list[str], b: int) -> Iterator[dict[int, int]]:
    """All rooted isomorphisms of ``(A_a, a)`` onto ``(B_b, b)``, assuming equal codes."""
    groups_a: dict[str, list[int]] = {}
    groups_b: dict[str, list[int]] = {}
    for x in ra.children[a]:
        groups_a.setdefault(ca[x], []).append(x)
    for y in rb.children[b]:
        groups_b.setdefault(cb[y], []).append(y)
    pairings = []
    for code in sorted(groups_a):
        xs = groups_a[code]
        # every bijection xs -> ys, each pair expanded into its sub-isomorphisms
        pairings.append([list(zip(xs, ys)) for ys in permutations(groups_b[code])])
    for choice in product(*pairings):
        pairs = [p for group in choice for p in group]
        subs = [list(_rooted_isos(ra, ca, x, rb, cb, y)) for x, y in pairs]
        for combo in product(*subs):
            out = {a: b}
            for m in combo:
                out.update(m)
            yield out


def isomorphisms(t1: Tree | RootedTree, t2: Tree | RootedTree) -> list[tuple[int, ...]]:
    """Every isomorphism from t1 onto t2 as a tuple ``perm[v] = image of v``."""
    if not is_isomorphic(t1, t2):
        return []
    if isinstance(t1, RootedTree):
        starts = [(t1, t2)]
    else:
        c1, c2 = center(t1), center(t2)
        if c1.kind is ElementKind.VERTEX:
            starts = [(t1.rooted_at(c1.value), t2.rooted_at(c2.value))]
        else:
            a = t1.rooted_at(c1.value[0])
            starts = [(a, t2.rooted_at(v)) for v in c2.vertices() if rooted_code(a) == rooted_code(t2.rooted_at(v))]
    out = set()
    for ra, rb in starts:
        ca, cb = subtree_codes(ra), subtree_codes(rb)
        for m in _rooted_isos(ra, ca, ra.root, rb, cb, rb.root):
            out.add(tuple(m[v] for v in range(ra.n)))
    return sorted(out)


def automorphisms(t: Tree | RootedTree) -> list[tuple[int, ...]]:
    """The full automorphism group as explicit bijections, identity first."""
    return isomorphisms(t, t)
