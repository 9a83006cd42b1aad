import pytest

from oracles import perm_automorphisms, perm_isomorphic
from treeminor import (RootedTree, Tree, automorphisms, branch_vertices, canonical_code, center, closure,
                       fixed_element, inf_vertices, is_isomorphic, subtree_at, successors)
from treeminor.canon import tree_from_code
from treeminor.constructions import enumerate_free_trees, path, random_prufer, spider, star
from treeminor.errors import InvalidTree, MissingTarget
from treeminor.structure import ElementKind, FixedElement


def test_tree_validation():
    with pytest.raises(InvalidTree):
        Tree(3, frozenset([(0, 1)]))
    with pytest.raises(InvalidTree):
        Tree(4, frozenset([(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(InvalidTree):
        Tree(2, frozenset([(0, 0)]))
    with pytest.raises(InvalidTree):
        Tree(2, frozenset([(0, 5)]))
    with pytest.raises(InvalidTree):
        Tree(0)
    assert Tree(1).edges == frozenset()
    assert Tree(3, [(2, 1), (0, 1)]).edge_list == ((0, 1), (1, 2))


def test_rooted_order():
    rt = RootedTree(path(4), 1)
    assert rt.leq(1, 3) and rt.leq(2, 3) and not rt.leq(0, 2)
    assert rt.children[1] == (0, 2)
    with pytest.raises(InvalidTree):
        RootedTree(path(3), 3)


def test_codes_distinguish_p4_and_star():
    p4, k13 = path(4), star(3)
    assert canonical_code(p4) != canonical_code(k13)
    assert not perm_isomorphic(p4, k13)
    assert not is_isomorphic(p4, k13)


@pytest.mark.parametrize("seed", range(5))
def test_code_invariant_under_relabelling(seed):
    import numpy as np
    t = random_prufer(7, seed)
    perm = list(np.random.default_rng(seed + 100).permutation(7))
    u = t.relabel(perm)
    assert canonical_code(t) == canonical_code(u)
    assert is_isomorphic(path(5), path(5).relabel([4, 2, 0, 1, 3]))


def test_six_free_trees_on_six_vertices_are_pairwise_distinct():
    trees = enumerate_free_trees(6)
    assert len(trees) == 6
    assert len({canonical_code(t) for t in trees}) == 6
    for i, a in enumerate(trees):
        for b in trees[i + 1:]:
            assert not perm_isomorphic(a, b)


def test_rooted_isomorphism():
    p3 = path(3)
    assert not is_isomorphic(p3.rooted_at(0), p3.rooted_at(1))
    assert is_isomorphic(p3.rooted_at(0), p3.rooted_at(2))
    with pytest.raises(TypeError):
        is_isomorphic(p3, p3.rooted_at(0))


def test_code_round_trip():
    for t in enumerate_free_trees(7):
        code = canonical_code(t)
        assert canonical_code(tree_from_code(code).tree) == code


@pytest.mark.parametrize("t, expected", [
    (path(5), FixedElement(ElementKind.VERTEX, 2)),
    (path(4), FixedElement(ElementKind.EDGE, (1, 2))),
    (star(3), FixedElement(ElementKind.VERTEX, 0)),
    (Tree(1), FixedElement(ElementKind.VERTEX, 0)),
    (path(2), FixedElement(ElementKind.EDGE, (0, 1))),
])
def test_center(t, expected):
    assert center(t) == expected
    assert fixed_element(t) == expected


def test_center_str():
    assert str(center(path(4))) == "edge 1 2"
    assert str(center(path(5))) == "vertex 2"


def test_closure_examples():
    assert closure(path(5), {0, 4}) == frozenset(range(5))
    assert closure(star(3), {2}) == {2}
    assert closure(star(3), {1, 2, 3}) == frozenset(range(4))
    assert closure(path(5), set()) == frozenset()
    with pytest.raises(MissingTarget):
        closure(path(3), {7})


def test_branch_vertices():
    assert branch_vertices(path(6)) == frozenset()
    assert branch_vertices(star(3)) == {0}
    assert branch_vertices(spider(2, 2, 2)) == {0}
    assert inf_vertices(spider(2, 2, 2)) == frozenset()


def test_automorphism_examples():
    assert len(automorphisms(path(3))) == 2
    assert len(automorphisms(star(3))) == 6 == len(perm_automorphisms(star(3)))
    asym = spider(1, 2, 3)
    assert asym.n == 7
    assert automorphisms(asym) == [tuple(range(7))] == perm_automorphisms(asym)
    assert automorphisms(Tree(1)) == [(0,)]


def test_subtree_and_successors():
    p3 = path(3).rooted_at(0)
    sub, mapping = subtree_at(p3, 1)
    assert sub.n == 2 and sub.root == 0 and mapping == {1: 0, 2: 1}
    same, _ = subtree_at(p3, 0)
    assert same == p3
    hub = star(3).rooted_at(0)
    leaf, _ = subtree_at(hub, 2)
    assert leaf.n == 1
    assert successors(hub, 0) == [1, 2, 3]
    assert successors(hub, 1) == []
    assert successors(p3, 1) == [2]
    with pytest.raises(MissingTarget):
        subtree_at(p3, 5)
    with pytest.raises(MissingTarget):
        successors(p3, -1)
