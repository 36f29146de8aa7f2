"""Bunches of grapes: a tree stem with triangles hung at its vertices.

A grape is written ``(T, m)`` where ``T`` is the stem tree and ``m(v)`` is
the number of triangles attached at ``v``.  Stem edges are called twigs.
For a normal bunch every twig splits the ambient graph into two leafless
halves, and these pairs are exactly the maximal products, so the
intersection complex can be read directly off the stem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from .errors import InvalidInputError
from .graph_core import Edge, Graph, Subgraph, core_vertices, edge_key
from .intersection_complex import IntersectionComplex
from .product_analysis import StandardPair


@dataclass(frozen=True)
class Grapes:
    stem: Graph
    loops: Dict[str, int]
    ambient: Graph
    grapes_at: Dict[str, Tuple[Tuple[str, str], ...]]

    @property
    def diameter(self) -> int:
        if len(self.stem.vertices) <= 1:
            return 0
        return nx.diameter(self.stem.to_networkx())

    @property
    def minimal(self) -> bool:
        """Bivalent stem vertices all carry at least one triangle."""
        return all(self.loops.get(v, 0) >= 1 for v in self.stem.vertices if self.stem.degree(v) == 2)

    @property
    def total_loops(self) -> int:
        return sum(self.loops.values())

    def stem_leaves(self) -> List[str]:
        return self.stem.leaves()

    def twigs(self) -> List[Edge]:
        return self.stem.sorted_edges()


def make_grapes(stem: Graph, loops: Dict[str, int]) -> Grapes:
    """Hang ``loops[v]`` fresh triangles at each stem vertex ``v``."""
    if not stem.vertices:
        raise InvalidInputError("the stem must have a vertex")
    if not stem.is_tree():
        raise InvalidInputError("the stem must be a tree")
    for v, k in loops.items():
        if v not in stem.vertices:
            raise InvalidInputError(f"loop count given for unknown stem vertex {v!r}")
        if k < 0:
            raise InvalidInputError(f"negative loop count at {v!r}")
    full = {v: int(loops.get(v, 0)) for v in stem.vertices}
    edges = list(stem.edges)
    taken = set(stem.vertices)
    at: Dict[str, Tuple[Tuple[str, str], ...]] = {}
    for v in stem.sorted_vertices():
        tris = []
        for i in range(full[v]):
            a, b = f"{v}#g{i}a", f"{v}#g{i}b"
            if a in taken or b in taken:
                raise InvalidInputError(f"grape vertex name {a!r} collides with the stem")
            taken.update((a, b))
            edges.extend([(v, a), (a, b), (b, v)])
            tris.append((a, b))
        at[v] = tuple(tris)
    return Grapes(stem, full, Graph(edges, stem.vertices), at)


def recognize_grapes(g: Graph) -> Optional[Grapes]:
    """Read ``g`` as a bunch of grapes, or return None.

    Every block must be a bridge or a triangle hanging at a single vertex.
    """
    if not g.vertices or not g.is_connected():
        return None
    if len(g.vertices) == 1:
        v = next(iter(g.vertices))
        return Grapes(Graph(vertices=[v]), {v: 0}, g, {v: ()})
    if g.cyclomatic_number() > 0 and len(g.vertices) == 3 and len(g.edges) == 3:
        v, a, b = g.sorted_vertices()
        return Grapes(Graph(vertices=[v]), {v: 1}, g, {v: ((a, b),)})
    bridges: List[Edge] = []
    hang: Dict[str, List[Tuple[str, str]]] = {}
    for comp in nx.biconnected_component_edges(g.to_networkx()):
        comp = [edge_key(*e) for e in comp]
        if len(comp) == 1:
            bridges.append(comp[0])
            continue
        vs = sorted({x for e in comp for x in e})
        if len(comp) != 3 or len(vs) != 3:
            return None
        outer = [x for x in vs if g.degree(x) > 2]
        if len(outer) != 1:
            return None
        v = outer[0]
        a, b = [x for x in vs if x != v]
        hang.setdefault(v, []).append((a, b))
    stem_vertices = {x for e in bridges for x in e} | set(hang)
    stem = Graph(bridges, stem_vertices)
    if not stem.is_tree():
        return None
    loops = {v: len(hang.get(v, [])) for v in stem_vertices}
    at = {v: tuple(sorted(hang.get(v, []))) for v in stem_vertices}
    return Grapes(stem, loops, g, at)


def grape_status(grapes: Grapes) -> str:
    """``small``, ``large`` or ``normal``."""
    looped = [v for v, k in grapes.loops.items() if k > 0]
    if len(looped) < 2:
        return "small"
    if all(grapes.loops[v] >= 1 for v in grapes.stem.leaves()):
        return "normal"
    return "large"


def _require_normal(grapes: Grapes) -> None:
    if grape_status(grapes) != "normal":
        raise InvalidInputError("this operation needs a normal bunch of grapes")
    if not grapes.minimal:
        raise InvalidInputError("bivalent stem vertices without triangles must be smoothed first")


# ---------------------------------------------------------------------------
# twigs and the intersection complex


def _side_subgraph(grapes: Grapes, stem_part: Set[str]) -> Subgraph:
    keep = set(stem_part)
    for v in stem_part:
        for a, b in grapes.grapes_at.get(v, ()):
            keep.update((a, b))
    g = grapes.ambient
    return Subgraph.induced(g, core_vertices(g, keep))


def _split_stem(stem: Graph, removed: Sequence[Edge]) -> Dict[str, FrozenSet[str]]:
    drop = set(removed)
    h = Graph((e for e in stem.edges if e not in drop), stem.vertices)
    out = {}
    for comp in h.components():
        for v in comp:
            out[v] = comp
    return out


def twig_maximal_products(grapes: Grapes) -> Dict[Edge, StandardPair]:
    """Each twig's two halves of the ambient graph."""
    _require_normal(grapes)
    out = {}
    for t in grapes.twigs():
        parts = _split_stem(grapes.stem, [t])
        a = _side_subgraph(grapes, set(parts[t[0]]))
        b = _side_subgraph(grapes, set(parts[t[1]]))
        out[t] = StandardPair(a, b).canonical()
    return out


def stem_path(stem: Graph, u: str, v: str) -> List[str]:
    """Vertex sequence of the unique stem path from ``u`` to ``v``."""
    parent = {u: None}
    queue = [u]
    while queue:
        x = queue.pop(0)
        if x == v:
            break
        for y in sorted(stem.neighbors(x)):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def _path_edges(path: Sequence[str]) -> List[Edge]:
    return [edge_key(a, b) for a, b in zip(path, path[1:])]


def spanning_path(stem: Graph, twigs: Sequence[Edge]) -> Optional[List[str]]:
    """Shortest stem path containing all ``twigs``, or None if they are not colinear."""
    ends = {x for t in twigs for x in t}
    best: Optional[List[str]] = None
    for u, v in combinations(sorted(ends), 2):
        path = stem_path(stem, u, v)
        if set(twigs) <= set(_path_edges(path)):
            if best is None or len(path) < len(best):
                best = path
    return best


def path_label(grapes: Grapes, path: Sequence[str]) -> StandardPair:
    """The pair of halves cut off at the two ends of a stem path."""
    parts = _split_stem(grapes.stem, _path_edges(path))
    a = _side_subgraph(grapes, set(parts[path[0]]))
    b = _side_subgraph(grapes, set(parts[path[-1]]))
    return StandardPair(a, b).canonical()


def _leaf_paths(stem: Graph) -> List[List[str]]:
    leaves = stem.leaves()
    return [stem_path(stem, u, v) for u, v in combinations(leaves, 2)]


def grape_icomplex(grapes: Grapes, max_length: Optional[int] = None) -> IntersectionComplex:
    """Simplices are sets of colinear twigs, labelled by their spanning path's halves.

    ``max_length`` keeps only simplices whose spanning path has at most
    that many edges.
    """
    products = twig_maximal_products(grapes)
    order = sorted(products, key=lambda t: products[t].key())
    index = {t: i for i, t in enumerate(order)}
    simplices: Set[Tuple[int, ...]] = set()
    for path in _leaf_paths(grapes.stem):
        ts = sorted(index[t] for t in _path_edges(path))
        for r in range(1, len(ts) + 1):
            simplices.update(combinations(ts, r))
    labels = {}
    for s in simplices:
        twigs = [order[i] for i in s]
        path = spanning_path(grapes.stem, twigs)
        if max_length is not None and len(path) - 1 > max_length:
            continue
        labels[s] = products[twigs[0]] if len(s) == 1 else path_label(grapes, path)
    return IntersectionComplex(tuple(products[t] for t in order), labels)


def icomplex_filtration(grapes: Grapes, k: int) -> IntersectionComplex:
    """Subcomplex of simplices whose spanning stem path has length at most ``k``."""
    d = grapes.diameter
    if not 2 <= k <= d:
        raise InvalidInputError(f"filtration level must lie between 2 and the stem diameter {d}")
    return grape_icomplex(grapes, max_length=k)


def glued_cliques(grapes: Grapes) -> nx.Graph:
    """Twigs, with two twigs adjacent when they share a stem vertex."""
    h = nx.Graph()
    twigs = grapes.twigs()
    h.add_nodes_from(twigs)
    for v in grapes.stem.sorted_vertices():
        star = [t for t in twigs if v in t]
        h.add_edges_from(combinations(star, 2))
    return h


# ---------------------------------------------------------------------------
# ranks


@dataclass(frozen=True)
class VertexRanks:
    total: int
    single: int
    double: int


def free_factor_rank(grapes: Grapes) -> Tuple[int, Dict[str, VertexRanks]]:
    """Rank of the free factor, with the per-vertex bookkeeping."""
    _require_normal(grapes)
    per: Dict[str, VertexRanks] = {}
    total = 0
    for v in grapes.stem.sorted_vertices():
        val = grapes.stem.degree(v)
        m = grapes.loops[v]
        n2 = 3 * m * (m - 1) // 2 + val * m
        n1 = comb(val - 1, 2) + val * m if val >= 1 else 0
        nv = (val + m) * (val + 3 * m - 3) // 2 + 1
        per[v] = VertexRanks(nv, n1, n2)
        total += n2
    assert total >= grapes.total_loops
    return total, per


# ---------------------------------------------------------------------------
# normalisation and verdicts


def normalize_grapes(grapes: Grapes) -> Grapes:
    """Strip loop-free stem leaves, then smooth loop-free bivalent stem vertices."""
    loops = dict(grapes.loops)
    edges = set(grapes.stem.edges)
    verts = set(grapes.stem.vertices)
    changed = True
    while changed and len(verts) > 1:
        changed = False
        deg = {v: 0 for v in verts}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        for v in sorted(verts):
            if deg[v] <= 1 and loops[v] == 0 and len(verts) > 1:
                verts.discard(v)
                edges = {e for e in edges if v not in e}
                changed = True
                break
    changed = True
    while changed:
        changed = False
        adj: Dict[str, Set[str]] = {v: set() for v in verts}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        for v in sorted(verts):
            if len(adj[v]) == 2 and loops[v] == 0:
                x, y = sorted(adj[v])
                edges -= {edge_key(v, x), edge_key(v, y)}
                edges.add(edge_key(x, y))
                verts.discard(v)
                changed = True
                break
    stem = Graph(edges, verts)
    return make_grapes(stem, {v: loops[v] for v in verts})


@dataclass(frozen=True)
class RaagGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    isolated_rank: int
    path: Tuple[str, ...]

    def describe(self) -> str:
        ne = len(self.edges)
        word = "edge" if ne == 1 else "edges"
        return f"{ne} {word} + {self.isolated_rank} isolated ({len(self.vertices)} vertices on edges)"


def path_stem_raag(grapes: Grapes) -> Optional[RaagGraph]:
    """Defining graph of a RAAG for grapes whose looped vertices lie on one stem path."""
    looped = sorted(v for v, k in grapes.loops.items() if k > 0)
    if not looped:
        return None
    span = _minimal_subtree(grapes.stem, looped)
    ends = [v for v in span if sum(1 for w in grapes.stem.neighbors(v) if w in span) <= 1]
    if len(span) == 1:
        v = looped[0]
        m = grapes.loops[v]
        return RaagGraph((), (), m * (3 * m - 3) // 2 + 1, (v,))
    if len(ends) != 2:
        return None
    path = stem_path(grapes.stem, min(ends), max(ends))
    n = len(path) - 1
    a_side = [(p, q) for p in range(0, n) for q in range(1, grapes.loops[path[p]] + 1)]
    b_side = [(p, q) for p in range(1, n + 1) for q in range(1, grapes.loops[path[p]] + 1)]
    names = [f"a{p},{q}" for p, q in a_side] + [f"b{p},{q}" for p, q in b_side]
    edges = [(f"a{p},{q}", f"b{r},{s}") for p, q in a_side for r, s in b_side if p < r]
    normal = normalize_grapes(grapes)
    if grape_status(normal) == "normal":
        iso, _ = free_factor_rank(normal)
    else:
        iso = 0
    return RaagGraph(tuple(names), tuple(edges), iso, tuple(path))


def _minimal_subtree(stem: Graph, marked: Sequence[str]) -> Set[str]:
    out = {marked[0]}
    for v in marked[1:]:
        out.update(stem_path(stem, marked[0], v))
    return out


def dynkin_witness(grapes: Grapes) -> Optional[Tuple[str, str, int]]:
    """Closest pair of stem vertices each carrying two leaves off the path between them."""
    stem = grapes.stem
    leaves = set(stem.leaves())
    best = None
    for u, v in combinations(stem.sorted_vertices(), 2):
        path = stem_path(stem, u, v)
        on = set(path)
        if sum(1 for w in stem.neighbors(u) if w in leaves and w not in on) < 2:
            continue
        if sum(1 for w in stem.neighbors(v) if w in leaves and w not in on) < 2:
            continue
        n = len(path) - 1 + 4
        if best is None or n < best[2]:
            best = (u, v, n)
    return best


def tripod_set(grapes: Grapes) -> List[Tuple[int, int, int]]:
    """Leaf-distance triples from three different branches at one stem vertex, in order."""
    stem = grapes.stem
    leaves = set(stem.leaves())
    found: Set[Tuple[int, int, int]] = set()
    for x in stem.sorted_vertices():
        if stem.degree(x) < 3:
            continue
        branch_dists = []
        for start in sorted(stem.neighbors(x)):
            dists = set()
            seen = {x, start}
            frontier = [(start, 1)]
            while frontier:
                y, d = frontier.pop()
                if y in leaves:
                    dists.add(d)
                for z in stem.neighbors(y):
                    if z not in seen:
                        seen.add(z)
                        frontier.append((z, d + 1))
            branch_dists.append(dists)
        for b1, b2, b3 in combinations(branch_dists, 3):
            for a in b1:
                for b in b2:
                    for c in b3:
                        t = tuple(sorted((a, b, c)))
                        if t[0] < t[1] < t[2]:
                            found.add(t)
    return sorted(found, key=lambda t: (sum(t), t[0] + t[1], t[0]))


@dataclass(frozen=True)
class QIVerdict:
    value: str
    rule: str
    raag: Optional[RaagGraph] = None
    witness: Optional[tuple] = None


def qi_raag_verdict(grapes: Grapes) -> QIVerdict:
    raag = path_stem_raag(grapes)
    if raag is not None:
        return QIVerdict("yes", "looped vertices lie on one stem path", raag=raag)
    normal = normalize_grapes(grapes)
    if grape_status(normal) == "normal":
        dyn = dynkin_witness(normal)
        if dyn is not None:
            return QIVerdict("no", "affine Dynkin substem", witness=("dynkin",) + dyn)
        tri = tripod_set(normal)
        if tri:
            return QIVerdict("no", "tripod substem", witness=("tripod",) + tri[0])
    return QIVerdict("unknown", "no decision procedure applies")


def leaf_sequence_analysis(grapes: Grapes, leaves: Sequence[str]) -> str:
    """``nontrivial`` when no three consecutive stem paths share a twig, else ``inconclusive``."""
    _require_normal(grapes)
    w = list(leaves)
    n = len(w) - 1
    if n < 3:
        raise InvalidInputError("a leaf sequence needs at least four entries")
    if w[0] != w[-1]:
        raise InvalidInputError("a leaf sequence must be closed")
    stem_leaves = set(grapes.stem.leaves())
    for i, x in enumerate(w):
        if x not in stem_leaves:
            raise InvalidInputError(f"{x!r} is not a stem leaf")
        if i < n and w[i + 1] == x:
            raise InvalidInputError("consecutive entries of a leaf sequence must differ")
    twig_sets = [set(_path_edges(stem_path(grapes.stem, w[i], w[i + 1]))) for i in range(n)]
    for i in range(n - 2):
        if twig_sets[i] & twig_sets[i + 1] & twig_sets[i + 2]:
            return "inconclusive"
    return "nontrivial"
