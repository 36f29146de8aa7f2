"""Named graphs used across the test suite."""

import random

from gbg.graph_core import Graph, complete_bipartite_graph, complete_graph, cycle_graph, dumbbell, path_graph, star_graph
from gbg.grapes import make_grapes


def s3_grape():
    """Star with three leaves and one triangle at every stem vertex."""
    return make_grapes(star_graph(3), {"c": 1, "l0": 1, "l1": 1, "l2": 1})


def sun():
    """Central triangle, a pendant edge at each corner, a triangle at each pendant end."""
    edges = [("w1", "w2"), ("w2", "w3"), ("w3", "w1")]
    for i in (1, 2, 3):
        v = f"v{i}"
        edges += [(f"w{i}", v), (v, f"{v}a"), (f"{v}a", f"{v}b"), (f"{v}b", v)]
    return Graph(edges)


def nested_squares():
    """Outer square, inner square, and four spokes: the 3-cube graph."""
    outer = [("o0", "o1"), ("o1", "o2"), ("o2", "o3"), ("o3", "o0")]
    inner = [("i0", "i1"), ("i1", "i2"), ("i2", "i3"), ("i3", "i0")]
    spokes = [(f"o{k}", f"i{k}") for k in range(4)]
    return Graph(outer + inner + spokes)


def chain_of_squares():
    """Three squares glued in a row: the ladder with four rungs."""
    edges = [(f"t{k}", f"t{k + 1}") for k in range(3)] + [(f"b{k}", f"b{k + 1}") for k in range(3)]
    edges += [(f"t{k}", f"b{k}") for k in range(4)]
    return Graph(edges)


EXAMPLE_STEM_EDGES = [("0", "1"), ("1", "10"), ("1", "2"), ("1", "3"), ("3", "4"),
                      ("4", "9"), ("4", "8"), ("4", "5"), ("5", "7"), ("5", "6")]
EXAMPLE_LOOPS = {"0": 2, "1": 0, "2": 0, "3": 1, "4": 1, "5": 0, "6": 1, "7": 0, "8": 1, "9": 1, "10": 3}


def example_grapes():
    """Eleven-vertex stem that is large but not normal."""
    return make_grapes(Graph(EXAMPLE_STEM_EDGES), EXAMPLE_LOOPS)


def example_grapes_normal():
    """Same stem with one triangle added at the two loop-free leaves."""
    loops = dict(EXAMPLE_LOOPS)
    loops["2"] = 1
    loops["7"] = 1
    return make_grapes(Graph(EXAMPLE_STEM_EDGES), loops)


def dynkin5_grapes():
    """Two adjacent trivalent stem vertices, four looped leaves."""
    stem = Graph([("u", "v"), ("u", "p"), ("u", "q"), ("v", "r"), ("v", "s")])
    return make_grapes(stem, {"p": 1, "q": 1, "r": 1, "s": 1})


def tripod_grapes(a=1, b=2, c=3):
    """Legs of lengths a, b, c; triangles on leaves and bivalent stem vertices."""
    edges = []
    loops = {}
    for name, length in (("a", a), ("b", b), ("c", c)):
        prev = "x"
        for i in range(1, length + 1):
            v = f"{name}{i}"
            edges.append((prev, v))
            loops[v] = 1
            prev = v
    loops["x"] = 0
    return make_grapes(Graph(edges), loops)


def star_leaf_grapes(k=3):
    """Star stem with triangles only at the leaves."""
    loops = {f"l{i}": 1 for i in range(k)}
    loops["c"] = 0
    return make_grapes(star_graph(k), loops)


def path_grapes(length, m=1):
    return make_grapes(path_graph(length), {str(i): m for i in range(length + 1)})


def random_tree(rng: random.Random, n: int) -> Graph:
    if n == 1:
        return Graph(vertices=["0"])
    return Graph((str(i), str(rng.randrange(i))) for i in range(1, n))


def random_normal_grapes(rng: random.Random, max_edges=9, max_m=3):
    """Random tree stem with at least one edge; leaves and bivalent vertices get m >= 1."""
    while True:
        stem = random_tree(rng, rng.randint(2, max_edges + 1))
        loops = {}
        for v in stem.vertices:
            low = 1 if stem.degree(v) <= 2 else 0
            loops[v] = rng.randint(low, max_m)
        g = make_grapes(stem, loops)
        return g


def theta(k=3, length=2):
    """k internally disjoint paths of the given length between two hubs."""
    edges = []
    for i in range(k):
        seq = ["s"] + [f"p{i}_{j}" for j in range(1, length)] + ["t"]
        edges.extend(zip(seq, seq[1:]))
    return Graph(edges)


def petersen():
    outer = [(f"o{i}", f"o{(i + 1) % 5}") for i in range(5)]
    inner = [(f"i{i}", f"i{(i + 2) % 5}") for i in range(5)]
    spokes = [(f"o{i}", f"i{i}") for i in range(5)]
    return Graph(outer + inner + spokes)


def dodecahedral():
    import networkx as nx

    g = nx.dodecahedral_graph()
    return Graph((str(u), str(v)) for u, v in g.edges())


def small_corpus():
    """Connected graphs used by the property and equivalence checks."""
    import networkx as nx

    out = {
        "P1": path_graph(1),
        "P3": path_graph(3),
        "C3": cycle_graph(3),
        "C4": cycle_graph(4),
        "C6": cycle_graph(6),
        "S3": star_graph(3),
        "S4": star_graph(4),
        "K4": complete_graph(4),
        "K5": complete_graph(5),
        "K23": complete_bipartite_graph(2, 3),
        "K33": complete_bipartite_graph(3, 3),
        "dumbbell": dumbbell(),
        "dumbbell2": dumbbell(2),
        "theta3": theta(3, 2),
        "nested_squares": nested_squares(),
        "chain_of_squares": chain_of_squares(),
        "sun": sun(),
        "s3grape": s3_grape().ambient,
        "petersen": petersen(),
        "prism": Graph([("a0", "a1"), ("a1", "a2"), ("a2", "a0"), ("b0", "b1"), ("b1", "b2"), ("b2", "b0"),
                        ("a0", "b0"), ("a1", "b1"), ("a2", "b2")]),
        "two_triangles_path": dumbbell(3),
        "bowtie": Graph([("c", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "c")]),
        "K4_pendant": Graph(list(complete_graph(4).edges) + [("3", "4")]),
        "wheel5": Graph(list(cycle_graph(5).edges) + [("h", str(i)) for i in range(5)]),
        "C4_chord_square": Graph([("0", "1"), ("1", "2"), ("2", "3"), ("3", "0"), ("0", "2"),
                                  ("4", "5"), ("5", "6"), ("6", "7"), ("7", "4"), ("2", "4")]),
        "triangle_square": Graph([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "g"), ("g", "d")]),
        "K5_minus_edge": Graph([e for e in complete_graph(5).edges if e != ("0", "1")]),
        "ladder3": Graph([("t0", "t1"), ("t1", "t2"), ("b0", "b1"), ("b1", "b2"), ("t0", "b0"), ("t1", "b1"), ("t2", "b2")]),
        "tadpole": Graph([("0", "1"), ("1", "2"), ("2", "0"), ("2", "3"), ("3", "4")]),
        "house_pair": Graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "e"), ("e", "b"),
                             ("c", "f"), ("f", "g"), ("g", "h"), ("h", "f")]),
    }
    return out
