import random

import pytest
from hypothesis import given, settings

from gbg.classify import (
    ElementaryGrapeType,
    binom,
    braid_free,
    braid_hyperbolic,
    detect_elementary,
    elementary_graph,
    elementary_rank,
    free_abelian_witness,
    free_rank,
    free_rank_report,
)
from gbg.config_space import build_UD
from gbg.cube_complex import homology_summary
from gbg.errors import InvalidInputError
from gbg.graph_core import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    dumbbell,
    has_two_disjoint_cycles,
    path_graph,
    star_graph,
    subdivide_for,
)
from gbg.product_analysis import build_UP2, enumerate_maximal_products
from fixtures import random_tree, small_corpus
from strategies import trees

CORPUS = small_corpus()


def _b1(g, n=2):
    _, betti = homology_summary(build_UD(subdivide_for(g, n), n))
    return betti[1] if len(betti) > 1 else 0


def _far_apart_tree():
    """Two trivalent vertices joined by a long path."""
    edges = [("u", "a"), ("u", "b"), ("v", "c"), ("v", "d")]
    seq = ["u", "p1", "p2", "p3", "v"]
    edges += list(zip(seq, seq[1:]))
    return Graph(edges)


def test_binom_out_of_range():
    assert binom(3, 5) == 0 and binom(-1, 0) == 0 and binom(5, 2) == 10


def test_elementary_type_validation():
    with pytest.raises(InvalidInputError):
        ElementaryGrapeType(1, 0)
    with pytest.raises(InvalidInputError):
        ElementaryGrapeType(-1, 3)


def test_detect_elementary():
    assert detect_elementary(star_graph(4)) == ElementaryGrapeType(4, 0)
    figure_eight = Graph([("c", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")])
    assert detect_elementary(figure_eight) == ElementaryGrapeType(0, 2)
    assert detect_elementary(dumbbell()) is None
    assert detect_elementary(path_graph(3)) == ElementaryGrapeType(2, 0)
    assert detect_elementary(cycle_graph(5)) == ElementaryGrapeType(0, 1)
    assert detect_elementary(subdivide_for(elementary_graph(2, 1), 4)) == ElementaryGrapeType(2, 1)


def test_elementary_rank_values():
    assert elementary_rank(ElementaryGrapeType(0, 2), 2) == 4
    assert elementary_rank(ElementaryGrapeType(2, 1), 2) == 4
    assert elementary_rank(ElementaryGrapeType(1, 1), 2) == 2
    with pytest.raises(InvalidInputError):
        elementary_rank(ElementaryGrapeType(2, 0), 0)


@pytest.mark.parametrize("k,l", [(k, l) for k in range(5) for l in range(4) if k + 2 * l >= 2])
def test_two_point_elementary_closed_form(k, l):
    t = ElementaryGrapeType(k, l)
    assert 2 * elementary_rank(t, 2) == (k + l) * (k + 3 * l - 3) + 2


@pytest.mark.parametrize("k,l,n", [(3, 0, 3), (2, 1, 3), (0, 2, 3), (3, 0, 4), (1, 1, 3)])
def test_elementary_rank_matches_homology(k, l, n):
    assert elementary_rank(ElementaryGrapeType(k, l), n) == _b1(elementary_graph(k, l), n)


def test_freeness():
    assert braid_free(complete_bipartite_graph(2, 3), 3)
    assert not braid_free(complete_bipartite_graph(2, 4), 3)
    assert not braid_free(complete_graph(5), 2)
    assert braid_free(complete_graph(4), 2)
    assert braid_free(dumbbell(), 1)
    assert not braid_free(dumbbell(), 2)
    assert braid_free(star_graph(5), 7)
    assert not braid_free(_far_apart_tree(), 4)


def test_freeness_for_three_points_on_special_shapes():
    theta_with_tails = Graph(list(complete_bipartite_graph(2, 3).edges) + [("a0", "z")])
    assert braid_free(theta_with_tails, 3)
    lollipop_chain = Graph(list(cycle_graph(4).edges) + [("0", "x"), ("2", "y")])
    assert braid_free(lollipop_chain, 3)
    assert not braid_free(complete_graph(4), 3)


def test_hyperbolicity():
    assert braid_hyperbolic(complete_graph(5), 2)
    assert not braid_hyperbolic(dumbbell(), 2)
    assert not braid_hyperbolic(_far_apart_tree(), 4)
    assert braid_hyperbolic(_far_apart_tree(), 3)
    assert not braid_hyperbolic(dumbbell(), 3)
    with pytest.raises(InvalidInputError):
        braid_hyperbolic(dumbbell(), 0)


def test_free_rank_values():
    assert free_rank(star_graph(4), 2) == 3
    assert free_rank(elementary_graph(0, 2), 2) == 4
    assert free_rank(complete_bipartite_graph(2, 3), 3) == 3
    assert free_rank(dumbbell(), 2) is None
    report = free_rank_report(complete_bipartite_graph(2, 3), 3)
    assert report.method == "first Betti number"


def test_free_abelian_witness():
    w = free_abelian_witness(dumbbell(), 2)
    assert (w.p, w.q) == (2, 0) and len(w.cycles) == 2
    w = free_abelian_witness(star_graph(3), 2)
    assert (w.p, w.q) == (0, 1)
    w = free_abelian_witness(_far_apart_tree(), 4)
    assert (w.p, w.q) == (0, 2) and w.vertices == ("u", "v")


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_free_implies_hyperbolic(name):
    g = CORPUS[name]
    for n in (2, 3):
        if braid_free(g, n):
            assert braid_hyperbolic(g, n)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_free_rank_is_first_betti_number(name):
    g = CORPUS[name]
    if braid_free(g, 2):
        assert free_rank(g, 2) == _b1(g)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_empty_up2_agreement(name):
    g = CORPUS[name]
    hyperbolic = braid_hyperbolic(g, 2)
    assert hyperbolic == (build_UP2(g).counts() == [])
    # the vertices of the intersection complex are the maximal products, with or without SIP
    assert hyperbolic == (enumerate_maximal_products(g) == [])
    assert hyperbolic == (not has_two_disjoint_cycles(g))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_abelian_witness_blocks_hyperbolicity(name):
    g = CORPUS[name]
    w = free_abelian_witness(g, 2)
    if w.p + w.q >= 2:
        assert not braid_hyperbolic(g, 2)


@settings(max_examples=40, deadline=None)
@given(trees(max_vertices=10))
def test_tree_rank_law(t):
    expected = sum(binom(t.degree(v) - 1, 2) for v in t.vertices)
    assert free_rank(t, 2) == expected
    if len(t.vertices) >= 2:
        assert _b1(t) == expected


def test_seeded_random_trees_are_free():
    rng = random.Random(11)
    for _ in range(10):
        t = random_tree(rng, rng.randint(2, 9))
        assert braid_free(t, 2) and braid_free(t, 3)
