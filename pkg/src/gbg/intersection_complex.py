"""Labelled simplicial complex recording how maximal products intersect.

The intersection of product subcomplexes is tracked symbolically as a list
of pieces ``(X, Y)``, each standing for the product cells of two disjoint
subgraphs.  Intersecting ``(X, Y)`` with a product ``(A, B)`` gives the two
pieces ``(X & A, Y & B)`` and ``(X & B, Y & A)``.  Pieces are always cell
disjoint closed subcomplexes, so once their factors are split into connected
components each piece is one connected component of the intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .config_space import Config
from .cube_complex import CubeComplex
from .errors import UnsupportedError
from .graph_core import Graph, Subgraph
from .linalg import exact_rank
from .product_analysis import StandardPair, enumerate_maximal_products

Piece = Tuple[Subgraph, Subgraph]


def _meet(x: Subgraph, y: Subgraph) -> Subgraph:
    return Subgraph(x.parent, x.edge_set & y.edge_set, x.vertex_set & y.vertex_set)


def _split(x: Subgraph, y: Subgraph) -> List[Piece]:
    if not x.vertex_set or not y.vertex_set:
        return []
    return [(cx, cy) for cx in x.components() for cy in y.components()]


def intersect_pieces(pieces: Sequence[Piece], pair: StandardPair) -> List[Piece]:
    a, b = pair.first, pair.second
    out: List[Piece] = []
    for x, y in pieces:
        out.extend(_split(_meet(x, a), _meet(y, b)))
        out.extend(_split(_meet(x, b), _meet(y, a)))
    return out


def intersection_pieces(pairs: Sequence[StandardPair]) -> List[Piece]:
    """Connected components of the intersection of the given products."""
    pieces: List[Piece] = _split(pairs[0].first, pairs[0].second)
    for pair in pairs[1:]:
        if not pieces:
            break
        pieces = intersect_pieces(pieces, pair)
    return pieces


def _is_standard_factor(s: Subgraph) -> bool:
    return not s.trivial and s.is_leafless() and s.is_connected()


def piece_is_standard(piece: Piece) -> bool:
    return _is_standard_factor(piece[0]) and _is_standard_factor(piece[1])


def _has_cycle(s: Subgraph) -> bool:
    return len(s.edge_set) >= len(s.vertex_set) - len(s.components()) + 1


@dataclass(frozen=True)
class IntersectionComplex:
    """Vertices are maximal products; each simplex carries a StandardPair label."""

    vertices: Tuple[StandardPair, ...]
    labels: Dict[Tuple[int, ...], StandardPair]

    def simplices(self, d: Optional[int] = None) -> List[Tuple[int, ...]]:
        out = sorted(self.labels, key=lambda s: (len(s), s))
        if d is None:
            return out
        return [s for s in out if len(s) == d + 1]

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.labels), default=-1)

    def counts(self) -> List[int]:
        return [len(self.simplices(d)) for d in range(self.dim + 1)]

    def one_skeleton(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(len(self.vertices)))
        h.add_edges_from(self.simplices(1))
        return h

    def restrict(self, keep: Iterable[Tuple[int, ...]]) -> "IntersectionComplex":
        keep = set(keep)
        return IntersectionComplex(self.vertices, {s: l for s, l in self.labels.items() if s in keep})

    def signature(self):
        """Comparable description using vertex and label keys instead of indices."""
        vkeys = [v.key() for v in self.vertices]
        return sorted((tuple(sorted(vkeys[i] for i in s)), label.key()) for s, label in self.labels.items())


@dataclass(frozen=True)
class ICAnalysis:
    connected: bool
    skeleton_betti1: int
    flag: bool


def _subset_walk(products: Sequence[StandardPair], subset_cap: Optional[int]):
    """Yield (indices, pieces) for every subset of size >= 2 with a nonempty intersection."""
    n = len(products)
    limit = n if subset_cap is None else subset_cap

    def rec(indices: List[int], pieces: List[Piece]):
        for j in range(indices[-1] + 1, n):
            nxt = intersect_pieces(pieces, products[j])
            if not nxt:
                continue
            chosen = indices + [j]
            yield tuple(chosen), nxt
            if len(chosen) < limit:
                yield from rec(chosen, nxt)

    for i in range(n):
        yield from rec([i], _split(products[i].first, products[i].second))


def sip_violation(g: Graph, subset_cap: Optional[int] = None, products: Optional[Sequence[StandardPair]] = None):
    """First subset of maximal products whose intersection has a non-standard component."""
    products = enumerate_maximal_products(g) if products is None else products
    for indices, pieces in _subset_walk(products, subset_cap):
        if not all(piece_is_standard(p) for p in pieces):
            return indices
    return None


def standard_intersection_property(g: Graph, subset_cap: Optional[int] = None, products=None) -> bool:
    return sip_violation(g, subset_cap, products) is None


def build_intersection_complex(g: Graph, products: Optional[Sequence[StandardPair]] = None) -> IntersectionComplex:
    """The complex of intersection patterns; requires every component to be a standard product."""
    products = enumerate_maximal_products(g) if products is None else list(products)
    labels: Dict[Tuple[int, ...], StandardPair] = {(i,): p.canonical() for i, p in enumerate(products)}
    for indices, pieces in _subset_walk(products, None):
        bad = [p for p in pieces if not piece_is_standard(p)]
        if bad:
            raise UnsupportedError(f"products {list(indices)} meet in a non-standard component")
        if len(pieces) > 1:
            raise UnsupportedError(f"products {list(indices)} meet in {len(pieces)} components")
        x, y = pieces[0]
        labels[indices] = StandardPair(x, y).canonical()
    return IntersectionComplex(tuple(p.canonical() for p in products), labels)


def intersection_one_skeleton(g: Graph, products: Optional[Sequence[StandardPair]] = None) -> nx.Graph:
    """Adjacency of maximal products whose intersection contains a standard product.

    Meaningful without any intersection hypothesis.
    """
    products = enumerate_maximal_products(g) if products is None else list(products)
    h = nx.Graph()
    h.add_nodes_from(range(len(products)))
    for i, j in combinations(range(len(products)), 2):
        pieces = intersection_pieces([products[i], products[j]])
        if any(_has_cycle(x) and _has_cycle(y) for x, y in pieces):
            h.add_edge(i, j)
    return h


# ---------------------------------------------------------------------------
# independent route through explicit cells


def _cell_components(cells: Set[Config]) -> List[Set[Config]]:
    parent: Dict[Config, Config] = {c: c for c in cells}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for c in cells:
        for idx, cell in enumerate(c):
            if len(cell) == 2:
                rest = c[:idx] + c[idx + 1:]
                for end in cell:
                    face = tuple(sorted(rest + ((end,),)))
                    if face in parent:
                        ra, rb = find(c), find(face)
                        if ra != rb:
                            parent[ra] = rb
    groups: Dict[Config, Set[Config]] = {}
    for c in cells:
        groups.setdefault(find(c), set()).add(c)
    return sorted(groups.values(), key=lambda s: min(s))


def _component_as_pair(g: Graph, comp: Set[Config]) -> Optional[StandardPair]:
    """Read off the two factors of a component of two-point cells, if it is a product."""
    side: Dict[str, int] = {}
    verts = sorted(c for c in comp if all(len(cell) == 1 for cell in c))
    edges = [c for c in comp if sum(len(cell) == 2 for cell in c) == 1]
    (x0,), (y0,) = verts[0]
    side[x0], side[y0] = 0, 1
    moving: List[Tuple[str, Tuple[str, str]]] = []
    for c in edges:
        stay = next(cell[0] for cell in c if len(cell) == 1)
        e = next(cell for cell in c if len(cell) == 2)
        moving.append((stay, e))
    changed = True
    while changed:
        changed = False
        for stay, (a, b) in moving:
            known = [side.get(a), side.get(b)]
            if stay in side:
                other = 1 - side[stay]
                for z in (a, b):
                    if z not in side:
                        side[z] = other
                        changed = True
                    elif side[z] != other:
                        return None
            elif known[0] is not None or known[1] is not None:
                s = known[0] if known[0] is not None else known[1]
                side[stay] = 1 - s
                changed = True
    for c in verts:
        (p,), (q,) = c
        if side.get(p) is None or side.get(q) is None or side[p] == side[q]:
            return None
    factors = []
    for s in (0, 1):
        vs = [v for v, t in side.items() if t == s]
        es = {e for stay, e in moving if side.get(e[0]) == s}
        factors.append(Subgraph(g, es, vs))
    pair = StandardPair(factors[0], factors[1])
    if not (_is_standard_factor(pair.first) and _is_standard_factor(pair.second)):
        return None
    if pair.cells() != comp:
        return None
    return pair.canonical()


def build_intersection_complex_from_cells(g: Graph, ambient: CubeComplex,
                                          products: Optional[Sequence[StandardPair]] = None) -> IntersectionComplex:
    """Same complex, computed by intersecting explicit cell sets inside ``ambient``."""
    products = enumerate_maximal_products(g) if products is None else list(products)
    present = set(ambient.all_keys())
    cell_sets = [p.cells() & present for p in products]
    labels: Dict[Tuple[int, ...], StandardPair] = {(i,): p.canonical() for i, p in enumerate(products)}
    n = len(products)

    def rec(indices: List[int], cells: Set[Config]):
        for j in range(indices[-1] + 1, n):
            nxt = cells & cell_sets[j]
            if not nxt:
                continue
            chosen = tuple(indices + [j])
            comps = _component_cells(g, nxt)
            if len(comps) != 1 or comps[0] is None:
                raise UnsupportedError(f"products {list(chosen)} do not meet in one standard product")
            labels[chosen] = comps[0]
            rec(list(chosen), nxt)

    for i in range(n):
        rec([i], cell_sets[i])
    return IntersectionComplex(tuple(p.canonical() for p in products), labels)


def _component_cells(g: Graph, cells: Set[Config]) -> List[Optional[StandardPair]]:
    return [_component_as_pair(g, comp) for comp in _cell_components(cells)]


# ---------------------------------------------------------------------------
# analysis


def ic_analysis(ic: IntersectionComplex) -> ICAnalysis:
    """Connectivity, first Betti number of the 2-skeleton, and flagness."""
    skel = ic.one_skeleton()
    connected = skel.number_of_nodes() == 0 or nx.is_connected(skel)
    v, e, t = ic.simplices(0), ic.simplices(1), ic.simplices(2)
    e_index = {s: i for i, s in enumerate(e)}
    d1 = [{s[0]: -1, s[1]: 1} for s in e]
    d2 = []
    for tri in t:
        a, b, c = tri
        d2.append({e_index[(b, c)]: 1, e_index[(a, c)]: -1, e_index[(a, b)]: 1})
    b1 = len(e) - exact_rank(d1) - exact_rank(d2)
    present = set(ic.labels)
    flag = True
    for clique in nx.enumerate_all_cliques(skel):
        if len(clique) >= 3 and tuple(sorted(clique)) not in present:
            flag = False
            break
    return ICAnalysis(connected, b1, flag)
