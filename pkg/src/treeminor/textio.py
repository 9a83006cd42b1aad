"""Plain-text tree records.

A record is a header line ``tree <n>`` or ``rtree <n> <root>`` followed by
``n-1`` lines ``<u> <v>``. Text after ``#`` is ignored. Several records in one
stream are separated by blank lines (or simply follow each other).
"""

from __future__ import annotations

from typing import Iterator

from .errors import FormatError, InvalidTree
from .tree import RootedTree, Tree


def _tokens(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse_trees(text: str) -> list[Tree | RootedTree]:
    lines = list(_tokens(text))
    out: list[Tree | RootedTree] = []
    i = 0
    while i < len(lines):
        lineno, head = lines[i]
        kind = head[0]
        if kind == "tree" and len(head) == 2:
            n, root = _int(head[1], lineno), None
        elif kind == "rtree" and len(head) == 3:
            n, root = _int(head[1], lineno), _int(head[2], lineno)
        else:
            raise FormatError(f"line {lineno}: expected 'tree <n>' or 'rtree <n> <root>'")
        if n < 1:
            raise FormatError(f"line {lineno}: vertex count must be positive")
        body = lines[i + 1:i + n]
        if len(body) != n - 1:
            raise FormatError(f"line {lineno}: expected {n - 1} edge lines, found {len(body)}")
        edges = []
        for ln, toks in body:
            if len(toks) != 2:
                raise FormatError(f"line {ln}: expected '<u> <v>'")
            u, v = _int(toks[0], ln), _int(toks[1], ln)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"line {ln}: vertex out of range 0..{n - 1}")
            edges.append((u, v))
        try:
            t = Tree(n, frozenset(edges))
            out.append(t if root is None else RootedTree(t, root))
        except InvalidTree as exc:
            raise FormatError(f"record at line {lineno}: {exc}") from None
        i += n
    return out


def parse_tree(text: str) -> Tree | RootedTree:
    trees = parse_trees(text)
    if len(trees) != 1:
        raise FormatError(f"expected exactly one tree record, found {len(trees)}")
    return trees[0]


def format_tree(t: Tree | RootedTree) -> str:
    if isinstance(t, RootedTree):
        lines = [f"rtree {t.n} {t.root}"]
        edges = t.tree.edge_list
    else:
        lines = [f"tree {t.n}"]
        edges = t.edge_list
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def format_trees(trees) -> str:
    return "\n".join(format_tree(t) for t in trees)


def read_tree(path: str) -> Tree | RootedTree:
    if path == "-":
        import sys
        return parse_tree(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())
