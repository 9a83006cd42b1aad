"""Command-line front end.

Exit codes: 0 success / ``yes``, 1 ``no`` or atlas violations, 2 usage or
input errors, 3 size-guard rejection.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .atlas import run_atlas
from .canon import canonical_code
from .constructions import enumerate_free_trees, enumerate_rooted_trees, gen
from .decide import decide
from .errors import SizeLimitExceeded, TreeError
from .models import RelationKind, enumerate_self_models, model_to_json
from .ops import oracle_reachable
from .structure import center, closure
from .textio import format_tree, format_trees, read_tree
from .tree import RootedTree


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _plain(t):
    return t.tree if isinstance(t, RootedTree) else t


def _pair(args):
    pattern, host = read_tree(args.pattern), read_tree(args.host)
    if args.rooted:
        if not (isinstance(pattern, RootedTree) and isinstance(host, RootedTree)):
            raise UsageError("--rooted needs both inputs to be 'rtree' records")
        return pattern, host, RelationKind.parse(args.rel, rooted=True)
    return _plain(pattern), _plain(host), RelationKind.parse(args.rel)


def cmd_check(args, out):
    pattern, host, rel = _pair(args)
    m = decide(pattern, host, rel)
    print("yes" if m else "no", file=out)
    if m and args.verb == "witness":
        print(model_to_json(m), file=out)
    return 0 if m else 1


def cmd_oracle(args, out):
    pattern, host = _plain(read_tree(args.pattern)), _plain(read_tree(args.host))
    ok = oracle_reachable(pattern, host, args.rel)
    print("yes" if ok else "no", file=out)
    return 0 if ok else 1


def cmd_canon(args, out):
    print(canonical_code(read_tree(args.tree)).code, file=out)
    return 0


def cmd_center(args, out):
    print(center(_plain(read_tree(args.tree))), file=out)
    return 0


def cmd_closure(args, out):
    t = _plain(read_tree(args.tree))
    print(" ".join(map(str, sorted(closure(t, args.vertices)))), file=out)
    return 0


def cmd_selfmodels(args, out):
    models = enumerate_self_models(read_tree(args.tree))
    print(len(models), file=out)
    for m in models:
        print(" ".join(map(str, m.vertex_map())) if m.is_singleton() else model_to_json(m), file=out)
    return 0


def cmd_gen(args, out):
    family = args.family.lower()
    if family in ("free", "rooted"):
        if len(args.params) != 1:
            raise UsageError(f"--family {family} takes exactly one parameter n")
        n = args.params[0]
        trees = enumerate_free_trees(n) if family == "free" else enumerate_rooted_trees(n)
        out.write(format_trees(trees))
    else:
        out.write(format_tree(gen(family, args.params)))
    return 0


def cmd_atlas(args, out):
    rels = [r for chunk in args.rel for r in chunk.split(",") if r] if args.rel else None
    if rels:
        for r in rels:
            RelationKind.parse(r)
    report = run_atlas(args.n_max, rels, args.oracle_n_max, args.rooted_n_max, args.workers)
    out.write(report.to_json() + "\n" if args.json else report.to_text())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treeminor", description="Decide and certify tree embeddings, topological minors and minors.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    for verb in ("check", "witness"):
        s = sub.add_parser(verb, help="decide PATTERN <= HOST" + (" and print a witness" if verb == "witness" else ""))
        s.add_argument("--rel", required=True, choices=["embed", "topo", "minor"])
        s.add_argument("--rooted", action="store_true")
        s.add_argument("pattern")
        s.add_argument("host")
        s.set_defaults(func=cmd_check)

    s = sub.add_parser("oracle", help="decide by brute-force search over edit sequences")
    s.add_argument("--rel", required=True, choices=["embed", "topo", "minor"])
    s.add_argument("pattern")
    s.add_argument("host")
    s.set_defaults(func=cmd_oracle)

    for verb, fn, text in (("canon", cmd_canon, "print the canonical code"),
                           ("center", cmd_center, "print the center vertex or edge"),
                           ("selfmodels", cmd_selfmodels, "list every model of T in itself")):
        s = sub.add_parser(verb, help=text)
        s.add_argument("tree")
        s.set_defaults(func=fn)

    s = sub.add_parser("closure", help="print the closure of a vertex set")
    s.add_argument("tree")
    s.add_argument("vertices", nargs="*", type=int)
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("gen", help="generate a tree, or enumerate all trees with --family free|rooted")
    s.add_argument("--family", required=True,
                   choices=["path", "star", "spider", "caterpillar", "prufer", "free", "rooted"])
    s.add_argument("--params", nargs="*", type=int, default=[])
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("atlas", help="exhaustive certification sweep")
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--oracle-n-max", type=int, default=0)
    s.add_argument("--rooted-n-max", type=int, default=0)
    s.add_argument("--rel", action="append", help="relation(s), comma separated or repeated")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", action="store_true", help="emit JSON instead of the text table")
    s.set_defaults(func=cmd_atlas)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"treeminor: error: {exc}", file=sys.stderr)
        return 2
    except SizeLimitExceeded as exc:
        print(f"treeminor: size limit: {exc}", file=sys.stderr)
        return 3
    except (TreeError, OSError, ValueError) as exc:
        print(f"treeminor: error: {exc}", file=sys.stderr)
        return 2
