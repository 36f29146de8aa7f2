import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbg.config_space import build_UD
from gbg.cube_complex import homology_summary
from gbg.errors import InvalidInputError
from gbg.graph_core import Graph, complete_graph, cycle_graph, dumbbell, path_graph, star_graph
from gbg.grapes import (
    dynkin_witness,
    free_factor_rank,
    glued_cliques,
    grape_icomplex,
    grape_status,
    icomplex_filtration,
    leaf_sequence_analysis,
    make_grapes,
    normalize_grapes,
    path_stem_raag,
    qi_raag_verdict,
    recognize_grapes,
    spanning_path,
    stem_path,
    tripod_set,
    twig_maximal_products,
)
from gbg.intersection_complex import build_intersection_complex, ic_analysis
from gbg.product_analysis import enumerate_maximal_products
from fixtures import (
    dynkin5_grapes,
    example_grapes,
    example_grapes_normal,
    path_grapes,
    random_normal_grapes,
    s3_grape,
    star_leaf_grapes,
    tripod_grapes,
)


def _same_data(a, b):
    """Equal stems and loop counts up to renaming, checked through a stem isomorphism."""
    ga, gb = a.stem.to_networkx(), b.stem.to_networkx()
    nx.set_node_attributes(ga, a.loops, "m")
    nx.set_node_attributes(gb, b.loops, "m")
    return nx.is_isomorphic(ga, gb, node_match=lambda x, y: x["m"] == y["m"])


def test_make_grapes_names_are_reproducible():
    g = make_grapes(path_graph(1), {"0": 1, "1": 2})
    assert {"0#g0a", "0#g0b", "1#g0a", "1#g1b"} <= g.ambient.vertices
    assert len(g.ambient.edges) == 1 + 3 * 3
    assert g == make_grapes(path_graph(1), {"0": 1, "1": 2})


def test_make_grapes_validation():
    with pytest.raises(InvalidInputError):
        make_grapes(cycle_graph(3), {})
    with pytest.raises(InvalidInputError):
        make_grapes(path_graph(1), {"7": 1})
    with pytest.raises(InvalidInputError):
        make_grapes(path_graph(1), {"0": -1})


def test_recognition():
    assert recognize_grapes(complete_graph(4)) is None
    assert recognize_grapes(cycle_graph(4)) is None
    g = recognize_grapes(dumbbell())
    assert g.stem.edges == {("x0", "y0")} and g.loops == {"x0": 1, "y0": 1}
    tri = recognize_grapes(cycle_graph(3))
    assert len(tri.stem.vertices) == 1 and tri.total_loops == 1
    assert recognize_grapes(star_graph(3)).total_loops == 0


@pytest.mark.parametrize("seed", range(10))
def test_recognition_round_trip(seed):
    g = random_normal_grapes(random.Random(seed))
    back = recognize_grapes(g.ambient)
    assert _same_data(g, back)


def test_large_example_round_trip():
    g = example_grapes()
    assert _same_data(g, recognize_grapes(g.ambient))


def test_status():
    assert grape_status(recognize_grapes(dumbbell())) == "normal"
    assert grape_status(example_grapes()) == "large"
    assert grape_status(example_grapes_normal()) == "normal"
    assert grape_status(make_grapes(star_graph(3), {"c": 2})) == "small"


def test_twig_products():
    assert len(twig_maximal_products(recognize_grapes(dumbbell()))) == 1
    assert len(twig_maximal_products(s3_grape())) == 3
    assert len(twig_maximal_products(example_grapes_normal())) == 10
    with pytest.raises(InvalidInputError):
        twig_maximal_products(example_grapes())


def test_unsmoothed_bivalent_vertex_is_rejected():
    g = make_grapes(path_graph(2), {"0": 1, "2": 1})
    assert grape_status(g) == "normal" and not g.minimal
    with pytest.raises(InvalidInputError):
        grape_icomplex(g)


def test_stem_paths():
    stem = example_grapes().stem
    assert stem_path(stem, "2", "7") == ["2", "1", "3", "4", "5", "7"]
    assert spanning_path(stem, [("1", "2"), ("4", "5")]) == ["2", "1", "3", "4", "5"]
    assert spanning_path(stem, [("0", "1"), ("1", "2"), ("1", "3")]) is None


def test_three_star_icomplex():
    ic = grape_icomplex(s3_grape())
    assert ic.counts() == [3, 3]
    assert ic.signature() == build_intersection_complex(s3_grape().ambient).signature()


def test_path_stem_gives_full_simplex():
    ic = grape_icomplex(path_grapes(5))
    assert ic.counts() == [5, 10, 10, 5, 1]


def test_filtration_levels():
    g = example_grapes_normal()
    assert g.diameter == 5
    low = icomplex_filtration(g, 2)
    assert low.dim == 1
    assert icomplex_filtration(g, 5).signature() == grape_icomplex(g).signature()
    with pytest.raises(InvalidInputError):
        icomplex_filtration(g, 1)
    with pytest.raises(InvalidInputError):
        icomplex_filtration(g, 6)


def test_glued_cliques_of_example():
    g = example_grapes_normal()
    h = glued_cliques(g)
    sizes = sorted(sum(1 for t in g.twigs() if v in t) for v in g.stem.vertices if g.stem.degree(v) >= 2)
    assert sizes == [2, 3, 4, 4]
    assert h.number_of_nodes() == 10
    assert h.number_of_edges() == 6 + 1 + 6 + 3


def test_free_factor_rank_values():
    assert free_factor_rank(recognize_grapes(dumbbell()))[0] == 2
    n, per = free_factor_rank(s3_grape())
    assert n == 6
    assert per["c"].double == 3 and per["l0"].double == 1
    assert per["c"].single == 4 and per["c"].total == 7


def test_normalization():
    g = normalize_grapes(example_grapes())
    assert grape_status(g) == "normal" and g.minimal
    assert g.stem.vertices == {"0", "1", "3", "4", "6", "8", "9", "10"}
    assert g.stem.has_edge("4", "6")


def test_path_stem_raag():
    r = path_stem_raag(recognize_grapes(dumbbell()))
    assert (len(r.vertices), len(r.edges), r.isolated_rank) == (2, 1, 2)
    r = path_stem_raag(path_grapes(2))
    assert (len(r.vertices), len(r.edges), r.isolated_rank) == (4, 3, 4)
    assert sorted(r.edges) == [("a0,1", "b1,1"), ("a0,1", "b2,1"), ("a1,1", "b2,1")]
    assert path_stem_raag(s3_grape()) is None
    assert path_stem_raag(make_grapes(path_graph(2), {})) is None


def test_single_looped_vertex_raag():
    r = path_stem_raag(make_grapes(star_graph(2), {"c": 2}))
    assert r.vertices == () and r.isolated_rank == 4


@pytest.mark.parametrize("length,m", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_raag_ranks_match_homology(length, m):
    g = path_grapes(length, m)
    r = path_stem_raag(g)
    _, betti = homology_summary(build_UD(g.ambient, 2))
    assert betti[1] == len(r.vertices) + r.isolated_rank
    assert betti[2] == len(r.edges)


def test_dynkin_witness():
    assert dynkin_witness(dynkin5_grapes()) == ("u", "v", 5)
    assert dynkin_witness(path_grapes(3)) is None
    assert dynkin_witness(s3_grape()) is None


def _spider(*legs):
    edges = []
    for k, length in enumerate(legs):
        seq = ["x"] + [f"L{k}_{i}" for i in range(1, length + 1)]
        edges.extend(zip(seq, seq[1:]))
    stem = Graph(edges)
    return make_grapes(stem, {v: 1 for v in stem.vertices if v != "x"})


def test_tripod_set():
    assert tripod_set(tripod_grapes()) == [(1, 2, 3)]
    assert tripod_set(s3_grape()) == []
    found = tripod_set(_spider(1, 2, 3, 5, 6))
    assert found[0] == (1, 2, 3)
    assert found.index((1, 2, 6)) < found.index((1, 3, 5))
    assert len(found) == 10


def test_verdicts():
    v = qi_raag_verdict(recognize_grapes(dumbbell()))
    assert v.value == "yes" and v.raag.isolated_rank == 2
    assert qi_raag_verdict(dynkin5_grapes()).witness == ("dynkin", "u", "v", 5)
    assert qi_raag_verdict(tripod_grapes()).witness == ("tripod", 1, 2, 3)
    assert qi_raag_verdict(star_leaf_grapes()).value == "unknown"


def test_large_example_verdict_uses_normalized_stem():
    v = qi_raag_verdict(example_grapes())
    assert v.value == "no" and v.witness[0] == "dynkin"


def test_leaf_sequences():
    assert leaf_sequence_analysis(tripod_grapes(), ["a1", "b2", "c3", "a1"]) == "nontrivial"
    assert leaf_sequence_analysis(dynkin5_grapes(), ["p", "q", "r", "s", "p"]) == "nontrivial"
    assert leaf_sequence_analysis(dynkin5_grapes(), ["p", "r", "q", "s", "p"]) == "inconclusive"
    assert leaf_sequence_analysis(path_grapes(3), ["0", "3", "0", "3", "0"]) == "inconclusive"
    with pytest.raises(InvalidInputError):
        leaf_sequence_analysis(path_grapes(3), ["0", "3", "0"])
    with pytest.raises(InvalidInputError):
        leaf_sequence_analysis(tripod_grapes(), ["a1", "b2", "c3", "b2"])
    with pytest.raises(InvalidInputError):
        leaf_sequence_analysis(tripod_grapes(), ["a1", "a1", "c3", "a1"])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_grapes_structure(seed):
    g = random_normal_grapes(random.Random(seed), max_edges=7, max_m=2)
    products = enumerate_maximal_products(g.ambient)
    assert len(products) == len(g.twigs())
    ic = grape_icomplex(g)
    assert ic.signature() == build_intersection_complex(g.ambient, products).signature()
    n, _ = free_factor_rank(g)
    assert n >= g.total_loops


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_verdicts_never_conflict(seed):
    g = random_normal_grapes(random.Random(seed), max_edges=8, max_m=2)
    v = qi_raag_verdict(g)
    assert v.value in {"yes", "no", "unknown"}
    assert not (v.raag is not None and v.witness is not None)
    if v.value == "yes":
        assert path_stem_raag(g) is not None
    if path_stem_raag(g) is not None:
        assert dynkin_witness(normalize_grapes(g)) is None and tripod_set(normalize_grapes(g)) == []


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_low_filtration_shape(seed):
    g = random_normal_grapes(random.Random(seed), max_edges=8, max_m=1)
    low = grape_icomplex(g, max_length=2)
    skel = low.one_skeleton()
    relabel = {i: t for i, t in enumerate(sorted(g.twigs(), key=lambda t: twig_maximal_products(g)[t].key()))}
    assert nx.utils.graphs_equal(nx.relabel_nodes(skel, relabel), glued_cliques(g))
    full = ic_analysis(grape_icomplex(g))
    assert ic_analysis(low).connected == full.connected
