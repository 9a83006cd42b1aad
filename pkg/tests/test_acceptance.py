"""Acceptance criteria 1-9.

Each test computes its verdict, records a PASS/FAIL line (shown in the
"acceptance criteria" section of the pytest summary) and then asserts it.
Expensive sweeps run once per module and are shared between criteria.
"""

import random
import time
from itertools import combinations

import pytest

import oracles
from treeminor import (Relation, RelationKind, apply_op, attach_copies,
                       automorphisms, canonical_code, check_model, child_type_multiset, compose_models,
                       decide, decide_mutual, enumerate_free_trees, enumerate_rooted_trees,
                       enumerate_self_models, fixed_element, identity_model, is_isomorphic)
from treeminor.constructions import child_subtree, random_prufer
from treeminor.models import MinorModel, branch_vertex_violations
from treeminor.ops import OPERATIONS, legal_steps, reachable_codes

RELS = (Relation.EMBED, Relation.TOPO, Relation.MINOR)
FREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23]
ROOTED_COUNTS = [1, 1, 2, 4, 9, 20, 48]


def trees_upto(n):
    return [t for k in range(1, n + 1) for t in enumerate_free_trees(k)]


@pytest.fixture(scope="module")
def witnesses():
    """Every witness produced by criteria 1-3, appended as the sweeps run."""
    return []


@pytest.fixture(scope="module")
def sweep_upto7(witnesses):
    trees = trees_upto(7)
    answers = {}
    for i, p in enumerate(trees):
        for j, h in enumerate(trees):
            for rel in RELS:
                m = decide(p, h, rel)
                answers[i, j, rel] = m is not None
                if m is not None:
                    witnesses.append(m)
    return trees, answers


def test_criterion_1_mutual_iff_isomorphic(record_criterion, witnesses):
    trees = trees_upto(8)
    rng = random.Random(1)
    # a relabelled copy of each representative makes the isomorphic side non-trivial
    copies = []
    for t in trees:
        perm = list(range(t.n))
        rng.shuffle(perm)
        copies.append(t.relabel(perm))
    start = time.perf_counter()
    bad = []
    for rel in RELS:
        for i, a in enumerate(trees):
            for j, b in enumerate(trees):
                if decide_mutual(a, b, rel) != is_isomorphic(a, b):
                    bad.append((i, j, rel.value))
            if not decide_mutual(a, copies[i], rel):
                bad.append((i, "copy", rel.value))
            if a.n == 8:
                for b in trees:
                    if b.n == 8:
                        m = decide(a, b, rel)
                        if m is not None:
                            witnesses.append(m)
    elapsed = time.perf_counter() - start
    ok = not bad and len(trees) == 48 and elapsed < 120
    record_criterion(1, "mutual containment iff isomorphic, n <= 8, 3 relations", ok,
                     f"{len(trees)} trees, {len(bad)} violations, {elapsed:.1f}s")
    assert ok, bad[:10]


def test_criterion_2_chain(record_criterion, sweep_upto7):
    trees, answers = sweep_upto7
    bad = []
    pairs = 0
    for i in range(len(trees)):
        for j in range(len(trees)):
            pairs += 1
            e, t, m = (answers[i, j, r] for r in RELS)
            if (e and not t) or (t and not m):
                bad.append((i, j))
    ok = not bad
    record_criterion(2, "embed => topo => minor, ordered pairs n <= 7", ok,
                     f"{pairs} pairs, {len(bad)} violations")
    assert ok, bad[:10]


def test_criterion_3_oracle(record_criterion, sweep_upto7):
    trees, answers = sweep_upto7
    bad = []
    checked = 0
    for j, h in enumerate(trees):
        for rel in RELS:
            reach = reachable_codes(h, rel, limit=7)
            for i, p in enumerate(trees):
                want = p.n <= h.n and canonical_code(p).code in reach
                checked += 1
                if answers[i, j, rel] != want:
                    bad.append((i, j, rel.value, want))
    ok = not bad
    record_criterion(3, "decider agrees with edit-sequence oracle, all pairs n <= 7", ok,
                     f"{checked} checks, {len(bad)} disagreements")
    assert ok, bad[:10]


def test_criterion_4_witness_soundness(record_criterion, witnesses, sweep_upto7):
    bad = [m for m in witnesses if not check_model(m)]
    rooted = [t.rooted_at(r) for t in trees_upto(6) for r in range(t.n)]
    rooted_checked = 0
    for p in rooted:
        for h in rooted:
            for rel in RELS:
                kind = RelationKind(rel, rooted=True)
                m = decide(p, h, kind)
                if m is None:
                    continue
                rooted_checked += 1
                loose = MinorModel(m.pattern, m.host, m.branch_sets, RelationKind(rel))
                if not check_model(m) or not check_model(loose):
                    bad.append(m)
    ok = not bad and len(witnesses) > 0 and rooted_checked > 0
    record_criterion(4, "every witness passes check_model, incl. rooted sweep n <= 6", ok,
                     f"{len(witnesses)} unrooted + {rooted_checked} rooted witnesses, {len(bad)} failures")
    assert ok


def test_criterion_5_branch_vertices(record_criterion, witnesses, sweep_upto7):
    minors = [m for m in witnesses if m.relation.kind is Relation.MINOR]
    bad = []
    for m in minors:
        host_f = {v for v in range(m.host.n) if m.host.degree(v) > 2}
        for v in range(m.pattern.n):
            if m.pattern.degree(v) > 2 and not (m.branch_sets[v] & host_f):
                bad.append((m, v))
    # the library's own report must agree with the direct scan
    bad_lib = [m for m in minors if branch_vertex_violations(m)]
    ok = not bad and not bad_lib and len(minors) > 0
    record_criterion(5, "minor branch sets of degree > 2 pattern vertices meet host branch vertices",
                     ok, f"{len(minors)} minor witnesses, {len(bad)} failures")
    assert ok


def test_criterion_6_fixed_element(record_criterion):
    bad = []
    counted = 0
    for t in trees_upto(8):
        fe = fixed_element(t)
        auts = automorphisms(t)
        if t.n <= 7 and auts != oracles.perm_automorphisms(t):
            bad.append(("automorphisms", t))
        models = enumerate_self_models(t)
        maps = [m.vertex_map() for m in models]
        if not all(m.is_singleton() for m in models):
            bad.append(("non-singleton self-model", t))
        if any(not fe.is_stabilized_by(p) for p in list(auts) + maps):
            bad.append(("not fixed", t))
        if t.n <= 7:
            counted += 1
            if len(models) != len(auts) or sorted(maps) != auts:
                bad.append(("count", t))
    ok = not bad
    record_criterion(6, "fixed element stabilized by every self-model, n <= 8; |self-models| = |Aut|, n <= 7",
                     ok, f"{counted} count checks, {len(bad)} failures")
    assert ok, bad[:5]


def _shrink(t, rng, steps):
    """Random minor edits from ``t``, tracking a model of the result in ``t``."""
    sets = {v: {v} for v in range(t.n)}
    cur = t
    for _ in range(steps):
        moves = legal_steps(cur, OPERATIONS[Relation.MINOR])
        if not moves:
            break
        s, mapping = apply_op(cur, rng.choice(moves))
        nxt = {}
        for old, new in mapping.items():
            nxt.setdefault(new, set()).update(sets[old])
        cur, sets = s, nxt
    return cur, MinorModel(cur, t, {v: frozenset(b) for v, b in sets.items()})


def _grow(s, rng, n_max):
    """A larger tree containing ``s`` by grafting at a random root; model found by the decider."""
    rt = s.rooted_at(rng.randrange(s.n))
    kids = rt.children[rt.root]
    if kids and rng.random() < 0.5:
        v = rng.choice(kids)
        beta = canonical_code(child_subtree(rt, v))
        eta = child_type_multiset(rt)[beta]
        big = attach_copies(rt, beta, child_subtree(rt, v), eta + 1)
    else:
        extra = random_prufer(rng.randint(1, 3), rng.randrange(10**6)).rooted_at(0)
        big = attach_copies(rt, canonical_code(extra), extra, child_type_multiset(rt)[canonical_code(extra)] + 1)
    if big.n > n_max:
        return None
    host = big.tree
    m = decide(s, host, "minor")
    return host, m


def test_criterion_7_composition(record_criterion):
    rng = random.Random(2024)
    bad = []
    triples = 0
    grafted = 0
    while triples < 1000:
        if triples % 2 == 0:
            s2 = random_prufer(rng.randint(1, 7), rng.randrange(10**9))
            s1, m2 = _shrink(s2, rng, rng.randint(0, 3))
            t, m1 = _shrink(s1, rng, rng.randint(0, 3))
        else:
            t = random_prufer(rng.randint(1, 4), rng.randrange(10**9))
            g1 = _grow(t, rng, 7)
            if g1 is None:
                continue
            s1, m1 = g1
            g2 = _grow(s1, rng, 7)
            if g2 is None:
                continue
            s2, m2 = g2
            grafted += 1
        triples += 1
        for m in (m1, m2):
            if m is None or not check_model(m):
                bad.append(("input", triples))
                break
        else:
            m = compose_models(m1, m2)
            if not check_model(m) or m.pattern != t or m.host != s2:
                bad.append(("compose", triples))
            for side in (compose_models(identity_model(t), m1), compose_models(m1, identity_model(s1))):
                if side.branch_sets != m1.branch_sets:
                    bad.append(("identity", triples))
    ok = not bad
    record_criterion(7, "1000 random composition triples, n <= 7, plus identity on both sides", ok,
                     f"{triples} triples ({grafted} grafted), {len(bad)} failures")
    assert ok, bad[:10]


def test_criterion_8_construction_fidelity(record_criterion):
    bad = []
    cases = 0
    for n in range(1, 7):
        for rt in enumerate_rooted_trees(n):
            for beta, eta in child_type_multiset(rt).items():
                k = next(child_subtree(rt, c) for c in rt.children[rt.root]
                         if canonical_code(child_subtree(rt, c)) == beta)
                cases += 1
                if not is_isomorphic(attach_copies(rt, beta, k, eta), rt):
                    bad.append(("eta", rt, beta))
                codes = [canonical_code(attach_copies(rt, beta, k, lam)) for lam in range(eta + 3)]
                if len(set(codes)) != len(codes):
                    bad.append(("distinct", rt, beta))
    ok = not bad and cases > 0
    record_criterion(8, "attach_copies reproduces the tree at the original multiplicity and separates lambdas",
                     ok, f"{cases} (tree, beta) cases, {len(bad)} failures")
    assert ok, bad[:5]


def test_criterion_9_counts(record_criterion):
    free_oracle = [oracles.count_free_classes(n) for n in range(1, 8)]
    rooted_oracle = [oracles.count_rooted_classes(n) for n in range(1, 8)]
    free = [len(enumerate_free_trees(n)) for n in range(1, 9)]
    rooted = [len(enumerate_rooted_trees(n)) for n in range(1, 8)]
    distinct = all(
        not oracles.perm_isomorphic(a, b)
        for n in range(1, 7) for a, b in combinations(enumerate_free_trees(n), 2)
    )
    ok = (free_oracle == FREE_COUNTS[:7] and rooted_oracle == ROOTED_COUNTS
          and free == FREE_COUNTS and rooted == ROOTED_COUNTS and distinct)
    record_criterion(9, "free counts 1..8 and rooted counts 1..7 match the brute-force classes", ok,
                     f"free {free}, rooted {rooted}")
    assert ok
