"""Exhaustive certification sweep over all small trees.

For every ordered pair of enumerated trees the sweep runs the deciders for the
requested relations and records:

* ``mutual``: mutual containment holds exactly for isomorphic pairs;
* ``chain``: embed => topo => minor on every ordered pair;
* ``witness``: every witness passes ``check_model`` (shape included) and, for
  minor witnesses, every pattern branch vertex's set meets a host branch vertex;
* ``oracle``: decider answers equal the edit-sequence oracle up to ``oracle_n_max``;
* ``rooted``: on all rootings up to ``rooted_n_max``, rooted witnesses pass the
  rooted check, still pass once the rooted condition is dropped, and the rooted
  chain holds.
"""

from __future__ import annotations

import json
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ._accel import env_int
from .canon import free_code
from .constructions import enumerate_free_trees
from .decide import decide
from .errors import SizeLimitExceeded
from .models import MinorModel, Relation, RelationKind, branch_vertex_violations, check_model
from .ops import reachable_codes

VIOLATION_CAP = 100
CHECKS = ("mutual", "chain", "witness", "oracle", "rooted")
CHAIN = (Relation.EMBED, Relation.TOPO, Relation.MINOR)


@dataclass
class CheckTally:
    checked: int = 0
    pruned: int = 0
    violations: int = 0
    records: list = field(default_factory=list)

    def fail(self, record: dict) -> None:
        self.violations += 1
        self.records.append(record)


@dataclass
class AtlasReport:
    n_range: tuple[int, int]
    relations: list[str]
    tree_count: dict[int, int]
    class_count: dict[str, dict[int, int]]
    checks: dict[str, CheckTally]
    timings: dict[str, float] = field(default_factory=dict)
    oracle_n_max: int = 0
    rooted_n_max: int = 0

    @property
    def violations(self) -> list[dict]:
        return [r for name in CHECKS for r in self.checks[name].records]

    @property
    def ok(self) -> bool:
        return all(c.violations == 0 for c in self.checks.values())

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "n_range": list(self.n_range),
            "relations": self.relations,
            "oracle_n_max": self.oracle_n_max,
            "rooted_n_max": self.rooted_n_max,
            "tree_count": {str(k): v for k, v in sorted(self.tree_count.items())},
            "class_count": {rel: {str(k): v for k, v in sorted(cc.items())} for rel, cc in self.class_count.items()},
            "checks": {name: {"checked": c.checked, "pruned_by_size": c.pruned, "violations": c.violations}
                       for name, c in self.checks.items()},
            "violations": self.violations,
            "ok": self.ok,
        }
        if timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lo, hi = self.n_range
        lines = [f"atlas n={lo}..{hi}  relations={','.join(self.relations)}  "
                 f"oracle_n_max={self.oracle_n_max}  rooted_n_max={self.rooted_n_max}", ""]
        head = f"{'n':>3} {'trees':>6}" + "".join(f" {r:>8}" for r in self.relations)
        lines += [head, "-" * len(head)]
        for n in range(lo, hi + 1):
            lines.append(f"{n:>3} {self.tree_count[n]:>6}"
                         + "".join(f" {self.class_count[r][n]:>8}" for r in self.relations))
        lines += ["", f"{'check':<8} {'checked':>9} {'pruned':>8} {'violations':>10}"]
        for name in CHECKS:
            c = self.checks[name]
            lines.append(f"{name:<8} {c.checked:>9} {c.pruned:>8} {c.violations:>10}")
        for r in self.violations:
            lines.append(f"  VIOLATION {json.dumps(r, sort_keys=True)}")
        lines += ["", "OK" if self.ok else "FAILED"]
        if self.timings:
            lines.append("timings: " + ", ".join(f"{k}={v:.2f}s" for k, v in self.timings.items()))
        return "\n".join(lines) + "\n"


def _audit_witness(m: MinorModel | None, tag: dict, out: list) -> None:
    if m is None:
        return
    chk = check_model(m)
    if not chk:
        out.append({**tag, "clause": chk.clause, "detail": chk.detail})
    elif m.relation.kind is Relation.MINOR:
        bad = branch_vertex_violations(m)
        if bad:
            out.append({**tag, "clause": "branch-vertex", "detail": {"vertices": bad}})


def _host_job(args):
    """Decide every pattern of size <= host size against one host."""
    host_idx, trees, relations, oracle_n_max = args
    host = trees[host_idx]
    reach = {}
    if host.n <= oracle_n_max:
        reach = {rel: reachable_codes(host, rel, limit=oracle_n_max) for rel in relations}
    rows = []
    for p_idx, pat in enumerate(trees):
        if pat.n > host.n:
            continue
        answers, bad = {}, []
        oracle = {}
        for rel in relations:
            m = decide(pat, host, RelationKind(rel))
            answers[rel.value] = m is not None
            _audit_witness(m, {"pattern": p_idx, "host": host_idx, "relation": rel.value}, bad)
            if reach:
                oracle[rel.value] = free_code(pat) in reach[rel]
        rows.append((p_idx, answers, oracle, bad))
    return host_idx, rows


def _rooted_job(args):
    host_idx, rooted, relations = args
    host = rooted[host_idx]
    rows = []
    for p_idx, pat in enumerate(rooted):
        if pat.n > host.n:
            continue
        answers, bad = {}, []
        for rel in relations:
            m = decide(pat, host, RelationKind(rel, rooted=True))
            answers[rel.value] = m is not None
            tag = {"pattern": p_idx, "host": host_idx, "relation": rel.value, "rooted": True}
            _audit_witness(m, tag, bad)
            if m is not None:
                loose = MinorModel(m.pattern, m.host, m.branch_sets, RelationKind(rel, rooted=False))
                if not check_model(loose):
                    bad.append({**tag, "clause": "rooted-implies-unrooted"})
        rows.append((p_idx, answers, bad))
    return host_idx, rows


def _run(jobs, fn, workers: int):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=1))


def _chain_breaks(answers: dict, relations) -> list[tuple[str, str]]:
    order = [r.value for r in CHAIN if r in relations]
    return [(a, b) for a, b in zip(order, order[1:]) if answers[a] and not answers[b]]


def run_atlas(n_max: int, relations=None, oracle_n_max: int = 0, rooted_n_max: int = 0,
              workers: int = 1, cap: int | None = None) -> AtlasReport:
    """Sweep all free trees with ``1 <= n <= n_max``; see the module docstring."""
    if cap is None:
        cap = env_int("TREEMINOR_ATLAS_CAP", 10)
    if not 1 <= n_max <= cap:
        raise SizeLimitExceeded(f"atlas n_max must lie in 1..{cap}, got {n_max}")
    if oracle_n_max > 7 or rooted_n_max > 7:
        raise SizeLimitExceeded("oracle_n_max and rooted_n_max are capped at 7")
    relations = [Relation(r) for r in (relations or CHAIN)]
    relations = [r for r in CHAIN if r in relations]
    timings = {}
    t0 = time.perf_counter()
    trees = [t for n in range(1, n_max + 1) for t in enumerate_free_trees(n, cap=cap)]
    sizes = [t.n for t in trees]
    timings["enumerate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    results = _run([(h, trees, relations, oracle_n_max) for h in range(len(trees))], _host_job, workers)
    timings["decide"] = time.perf_counter() - t0

    checks = {name: CheckTally() for name in CHECKS}
    answers: dict[tuple[int, int], dict] = {}
    for host_idx, rows in sorted(results, key=lambda r: r[0]):
        for p_idx, ans, oracle, bad in rows:
            answers[(p_idx, host_idx)] = ans
            checks["witness"].checked += sum(ans.values())
            for rec in bad:
                checks["witness"].fail(rec)
            if len(relations) > 1:
                checks["chain"].checked += 1
                for a, b in _chain_breaks(ans, relations):
                    checks["chain"].fail({"pattern": p_idx, "host": host_idx, "expected": f"{a} => {b}",
                                          "observed": {a: True, b: False}})
            for rel, want in oracle.items():
                checks["oracle"].checked += 1
                if ans[rel] != want:
                    checks["oracle"].fail({"pattern": p_idx, "host": host_idx, "relation": rel,
                                           "expected": want, "observed": ans[rel]})
    n_trees = len(trees)
    ordered_pruned = sum(1 for i in range(n_trees) for j in range(n_trees) if sizes[i] > sizes[j])
    if len(relations) > 1:
        checks["chain"].pruned = ordered_pruned

    class_count = {}
    for rel in relations:
        parent = list(range(n_trees))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(n_trees):
            for j in range(i, n_trees):
                if sizes[i] != sizes[j]:
                    checks["mutual"].pruned += 1
                    continue
                checks["mutual"].checked += 1
                mutual = answers[(i, j)][rel.value] and answers[(j, i)][rel.value]
                iso = i == j  # representatives are pairwise non-isomorphic
                if mutual != iso:
                    checks["mutual"].fail({"pair": [i, j], "relation": rel.value,
                                           "expected": iso, "observed": mutual})
                if mutual:
                    parent[find(i)] = find(j)
        counts = defaultdict(int)
        for i in range(n_trees):
            if find(i) == i:
                counts[sizes[i]] += 1
        class_count[rel.value] = {n: counts[n] for n in range(1, n_max + 1)}

    if rooted_n_max:
        t0 = time.perf_counter()
        rooted = [t.rooted_at(r) for n in range(1, rooted_n_max + 1)
                  for t in enumerate_free_trees(n, cap=cap) for r in range(t.n)]
        res = _run([(h, rooted, relations) for h in range(len(rooted))], _rooted_job, workers)
        tally = checks["rooted"]
        for host_idx, rows in sorted(res, key=lambda r: r[0]):
            for p_idx, ans, bad in rows:
                tally.checked += 1
                for rec in bad:
                    tally.fail(rec)
                for a, b in _chain_breaks(ans, relations):
                    tally.fail({"pattern": p_idx, "host": host_idx, "rooted": True,
                                "expected": f"{a} => {b}", "observed": {a: True, b: False}})
        tally.pruned = sum(1 for p in rooted for h in rooted if p.n > h.n)
        timings["rooted"] = time.perf_counter() - t0

    for c in checks.values():
        c.records.sort(key=lambda r: json.dumps(r, sort_keys=True))
        del c.records[VIOLATION_CAP:]

    tree_count = {n: sizes.count(n) for n in range(1, n_max + 1)}
    return AtlasReport((1, n_max), [r.value for r in relations], tree_count, class_count, checks,
                       timings, oracle_n_max, rooted_n_max)
