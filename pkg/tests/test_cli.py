import io
import json

import pytest

from treeminor import check_model
from treeminor.cli import main
from treeminor.constructions import path, spider, star
from treeminor.models import model_from_json
from treeminor.textio import format_tree, parse_tree


@pytest.fixture
def files(tmp_path):
    def write(name, tree, root=None):
        p = tmp_path / name
        t = tree.rooted_at(root) if root is not None else tree
        p.write_text(format_tree(t))
        return str(p)
    return write


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check(files):
    p3, p5, k13, p9 = files("p3", path(3)), files("p5", path(5)), files("k13", star(3)), files("p9", path(9))
    assert run("check", "--rel", "minor", p3, p5) == (0, "yes\n")
    assert run("check", "--rel", "minor", k13, p9) == (1, "no\n")


def test_witness_round_trip(files):
    pat, host = spider(1, 1, 1), spider(2, 2, 2)
    for rel in ("embed", "topo", "minor"):
        code, text = run("witness", "--rel", rel, files("a", pat), files("b", host))
        assert code == 0
        head, body = text.split("\n", 1)
        assert head == "yes"
        m = model_from_json(body, pat, host)
        assert check_model(m) and json.loads(body)["relation"] == rel


def test_rooted(files, capsys):
    a, b = files("a", path(3), 1), files("b", path(3), 0)
    assert run("check", "--rel", "minor", "--rooted", a, b)[0] == 1
    assert run("check", "--rel", "minor", a, b)[0] == 0
    code, text = run("witness", "--rel", "topo", "--rooted", b, b)
    assert code == 0 and json.loads(text.split("\n", 1)[1])["rooted"] is True
    assert run("check", "--rel", "minor", "--rooted", a, files("c", path(3)))[0] == 2
    assert "rtree" in capsys.readouterr().err


def test_center_canon_closure(files):
    p4 = files("p4", path(4))
    assert run("center", p4) == (0, "edge 1 2\n")
    assert run("center", files("p5", path(5))) == (0, "vertex 2\n")
    assert run("canon", p4) == (0, "((())())\n")
    assert run("closure", files("p5", path(5)), "0", "4") == (0, "0 1 2 3 4\n")


def test_selfmodels_and_oracle(files):
    code, text = run("selfmodels", files("k13", star(3)))
    assert code == 0 and text.splitlines()[0] == "6"
    assert run("oracle", "--rel", "minor", files("p2", path(2)), files("p4", path(4))) == (0, "yes\n")
    assert run("oracle", "--rel", "minor", files("k13", star(3)), files("p5", path(5))) == (1, "no\n")
    assert run("oracle", "--rel", "minor", files("p2", path(2)), files("p9", path(9)))[0] == 3


def test_gen():
    code, text = run("gen", "--family", "path", "--params", "5")
    assert code == 0 and parse_tree(text) == path(5)
    code, text = run("gen", "--family", "free", "--params", "6")
    assert code == 0 and text.count("tree ") == 6
    assert run("gen", "--family", "spider", "--params", "0")[0] == 2
    assert run("gen", "--family", "free", "--params", "11")[0] == 3
    assert run("gen", "--family", "free")[0] == 2


def test_atlas():
    code, text = run("atlas", "--n-max", "5", "--oracle-n-max", "5", "--rel", "minor,topo")
    assert code == 0 and text.rstrip().splitlines()[-2] == "OK"
    code, text = run("atlas", "--n-max", "4", "--json")
    assert code == 0 and json.loads(text)["ok"] is True
    assert run("atlas", "--n-max", "12")[0] == 3
    assert run("atlas", "--n-max", "4", "--rel", "bogus")[0] == 2


def test_usage_errors(files, capsys):
    assert run()[0] == 2
    assert run("check", "--rel", "nope", "a", "b")[0] == 2
    assert run("check", "--rel", "minor", "/no/such/file", "/no/such/file")[0] == 2
    err = capsys.readouterr().err
    assert all(line.startswith("treeminor:") for line in err.strip().splitlines())


def test_stdin(monkeypatch, files):
    monkeypatch.setattr("sys.stdin", io.StringIO(format_tree(path(3))))
    assert run("check", "--rel", "embed", "-", files("p4", path(4))) == (0, "yes\n")
