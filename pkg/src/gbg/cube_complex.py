"""Finite cube complexes given by their facet structure.

A d-cube is recorded by d ordered pairs of facets ``(lower_i, upper_i)``,
one pair per coordinate direction.  Nothing is assumed about how the
facets' own coordinates line up with the cube's; corners and orientation
signs are recovered from vertex sets, so twisted gluings (a Moebius strip,
say) are representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import InvalidInputError, UnsupportedError
from .linalg import exact_rank, sparse_product_is_zero

Key = Hashable
FacetPairs = Tuple[Tuple[Key, Key], ...]

DIMENSION_CAP = 6


@dataclass(frozen=True)
class Hyperplane:
    """A parallelism class of edges."""

    edge_class: FrozenSet[Key]

    def sorted_edges(self) -> List[Key]:
        return sorted(self.edge_class)


@dataclass
class SpecialnessReport:
    """Offending hyperplanes for each pathology; empty lists mean none."""

    self_intersecting: List[Hyperplane] = field(default_factory=list)
    self_osculating: List[Hyperplane] = field(default_factory=list)
    one_sided: List[Hyperplane] = field(default_factory=list)
    inter_osculating: List[Tuple[Hyperplane, Hyperplane]] = field(default_factory=list)

    @property
    def special(self) -> bool:
        return not (self.self_intersecting or self.self_osculating or self.one_sided or self.inter_osculating)


@dataclass(frozen=True)
class LinkComplex:
    """Vertex link; vertices are half-edges ``(edge_key, end)`` and simplices keep multiplicity."""

    vertices: Tuple[Tuple[Key, int], ...]
    simplices: Tuple[Tuple[Tuple[Key, int], ...], ...]

    def edges(self) -> List[Tuple[Tuple[Key, int], ...]]:
        return [s for s in self.simplices if len(s) == 2]

    def one_skeleton(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for s in self.edges():
            g.add_edge(*s)
        return g


class CubeComplex:
    """Cubes keyed by hashable, mutually sortable keys."""

    def __init__(self, cubes: Mapping[Key, Sequence[Tuple[Key, Key]]], metadata: Optional[Dict[str, Any]] = None):
        self._facets: Dict[Key, FacetPairs] = {}
        self._dim_of: Dict[Key, int] = {}
        for key, pairs in cubes.items():
            pairs = tuple((lo, hi) for lo, hi in pairs)
            self._facets[key] = pairs
            self._dim_of[key] = len(pairs)
        by_dim: Dict[int, List[Key]] = {}
        for key, d in self._dim_of.items():
            by_dim.setdefault(d, []).append(key)
        self._by_dim = {d: sorted(keys) for d, keys in by_dim.items()}
        self.metadata: Dict[str, Any] = dict(metadata or {})
        self._vertex_sets: Dict[Key, FrozenSet[Key]] = {}
        self._edge_sets: Dict[Key, FrozenSet[Key]] = {}
        self._validate()

    # -- structure ---------------------------------------------------------

    def _validate(self) -> None:
        seen: Dict[FacetPairs, Key] = {}
        for key, pairs in self._facets.items():
            d = len(pairs)
            if d == 0:
                continue
            flat = [f for pair in pairs for f in pair]
            for f in flat:
                if f not in self._facets:
                    raise InvalidInputError(f"cube {key!r} has unknown facet {f!r}")
                if self._dim_of[f] != d - 1:
                    raise InvalidInputError(f"facet {f!r} of {key!r} has the wrong dimension")
            if len(set(flat)) != 2 * d:
                raise InvalidInputError(f"cube {key!r} does not have {2 * d} distinct facets")
            if pairs in seen:
                raise InvalidInputError(f"cubes {seen[pairs]!r} and {key!r} share all facets")
            seen[pairs] = key

    @property
    def dim(self) -> int:
        return max((d for d, keys in self._by_dim.items() if keys), default=-1)

    def cubes(self, d: int) -> List[Key]:
        return list(self._by_dim.get(d, []))

    def __contains__(self, key: Key) -> bool:
        return key in self._facets

    def dimension_of(self, key: Key) -> int:
        return self._dim_of[key]

    def facets(self, key: Key) -> FacetPairs:
        return self._facets[key]

    def counts(self) -> List[int]:
        return [len(self._by_dim.get(d, [])) for d in range(self.dim + 1)]

    def all_keys(self) -> List[Key]:
        out: List[Key] = []
        for d in range(self.dim + 1):
            out.extend(self.cubes(d))
        return out

    def subcomplex(self, keys) -> "CubeComplex":
        """Restriction to ``keys``, which must be closed under taking facets."""
        keys = set(keys)
        for k in keys:
            for lo, hi in self._facets[k]:
                if lo not in keys or hi not in keys:
                    raise InvalidInputError(f"subset not closed under facets at {k!r}")
        return CubeComplex({k: self._facets[k] for k in keys}, dict(self.metadata))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeComplex):
            return NotImplemented
        return self._facets == other._facets

    def __repr__(self) -> str:
        return f"CubeComplex(counts={self.counts()})"

    def vertex_set(self, key: Key) -> FrozenSet[Key]:
        cached = self._vertex_sets.get(key)
        if cached is not None:
            return cached
        if self._dim_of[key] == 0:
            out = frozenset([key])
        else:
            lo, hi = self._facets[key][0]
            out = self.vertex_set(lo) | self.vertex_set(hi)
        self._vertex_sets[key] = out
        return out

    def edge_set(self, key: Key) -> FrozenSet[Key]:
        """1-dimensional faces of a cube (empty for vertices)."""
        cached = self._edge_sets.get(key)
        if cached is not None:
            return cached
        d = self._dim_of[key]
        if d == 0:
            out: FrozenSet[Key] = frozenset()
        elif d == 1:
            out = frozenset([key])
        else:
            acc = set()
            for lo, hi in self._facets[key]:
                acc |= self.edge_set(lo)
                acc |= self.edge_set(hi)
            out = frozenset(acc)
        self._edge_sets[key] = out
        return out

    def corner(self, key: Key, eps: Sequence[int]) -> Key:
        """Vertex of ``key`` at coordinate vector ``eps``."""
        pairs = self._facets[key]
        if not pairs:
            return key
        common = None
        for (lo, hi), e in zip(pairs, eps):
            vs = self.vertex_set(hi if e else lo)
            common = vs if common is None else common & vs
        if len(common) != 1:
            raise UnsupportedError(f"degenerate cube {key!r}: corner {tuple(eps)} is not a single vertex")
        return next(iter(common))

    def edge_at(self, key: Key, eps: Sequence[int], i: int) -> Key:
        """Edge of ``key`` in direction ``i`` through the corner ``eps``."""
        pairs = self._facets[key]
        if len(pairs) == 1:
            return key
        common = None
        for j, ((lo, hi), e) in enumerate(zip(pairs, eps)):
            if j == i:
                continue
            es = self.edge_set(hi if e else lo)
            common = es if common is None else common & es
        if len(common) != 1:
            raise UnsupportedError(f"degenerate cube {key!r}: direction {i} at {tuple(eps)} is ambiguous")
        return next(iter(common))

    def endpoints(self, edge: Key) -> Tuple[Key, Key]:
        (lo, hi), = self._facets[edge]
        return lo, hi

    # -- orientation -------------------------------------------------------

    def _facet_sign(self, key: Key, i: int, side: int) -> int:
        """+1 if the facet's own coordinates induce the cube's boundary orientation."""
        d = self._dim_of[key]
        facet = self._facets[key][i][side]
        if d == 1:
            return 1
        corners = {}
        for eps in product((0, 1), repeat=d):
            if eps[i] == side:
                corners[self.corner(key, eps)] = eps
        if len(corners) != 2 ** (d - 1):
            raise UnsupportedError(f"degenerate cube {key!r}: repeated corners")
        base_eps = corners.get(self.corner(facet, (0,) * (d - 1)))
        if base_eps is None:
            raise UnsupportedError(f"facet {facet!r} does not sit in {key!r}")
        perm = []
        flips = 0
        for k in range(d - 1):
            unit = tuple(1 if t == k else 0 for t in range(d - 1))
            eps = corners.get(self.corner(facet, unit))
            if eps is None:
                raise UnsupportedError(f"facet {facet!r} does not sit in {key!r}")
            moved = [j for j in range(d) if eps[j] != base_eps[j]]
            if len(moved) != 1:
                raise UnsupportedError(f"facet {facet!r} is not an affine face of {key!r}")
            j = moved[0]
            perm.append(j if j < i else j - 1)
            if base_eps[j] == 1:
                flips += 1
        return _perm_sign(perm) * (-1) ** flips

    def boundary_columns(self, d: int) -> List[Dict[int, int]]:
        """Columns of the d-th cubical boundary map, rows indexed by ``cubes(d-1)``."""
        rows = {k: r for r, k in enumerate(self.cubes(d - 1))}
        cols = []
        for key in self.cubes(d):
            col: Dict[int, int] = {}
            for i, pair in enumerate(self._facets[key]):
                for side, facet in enumerate(pair):
                    sign = (-1) ** i * (1 if side else -1) * self._facet_sign(key, i, side)
                    r = rows[facet]
                    col[r] = col.get(r, 0) + sign
            cols.append({r: v for r, v in col.items() if v})
        return cols

    def boundary_squares_vanish(self) -> bool:
        """Check that every composite of consecutive boundary maps is zero."""
        for d in range(2, self.dim + 1):
            if not sparse_product_is_zero(self.boundary_columns(d - 1), self.boundary_columns(d)):
                return False
        return True


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# homology


def euler_characteristic(x: CubeComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(x.counts()))


def homology_summary(x: CubeComplex, cap: int = DIMENSION_CAP) -> Tuple[int, List[int]]:
    """Euler characteristic and rational Betti numbers."""
    if x.dim > cap:
        raise UnsupportedError(f"dimension {x.dim} exceeds the cap of {cap}")
    counts = x.counts()
    ranks = [0] * (len(counts) + 1)
    for d in range(1, len(counts)):
        ranks[d] = exact_rank(x.boundary_columns(d))
    betti = [counts[d] - ranks[d] - ranks[d + 1] for d in range(len(counts))]
    return euler_characteristic(x), betti


# ---------------------------------------------------------------------------
# links and local conditions


def _half_edge(x: CubeComplex, edge: Key, v: Key, eps_i: int) -> Tuple[Key, int]:
    lo, hi = x.endpoints(edge)
    if lo == hi:
        return (edge, eps_i)
    return (edge, 0 if lo == v else 1)


def vertex_link(x: CubeComplex, v: Key) -> LinkComplex:
    """Simplices are the corners of cubes at ``v``."""
    if v not in x or x.dimension_of(v) != 0:
        raise InvalidInputError(f"{v!r} is not a vertex of the complex")
    simplices = []
    for d in range(1, x.dim + 1):
        for key in x.cubes(d):
            if v not in x.vertex_set(key):
                continue
            for eps in product((0, 1), repeat=d):
                if x.corner(key, eps) != v:
                    continue
                simplex = tuple(sorted(_half_edge(x, x.edge_at(key, eps, i), v, eps[i]) for i in range(d)))
                simplices.append(simplex)
    simplices.sort()
    vertices = sorted({h for s in simplices for h in s})
    return LinkComplex(tuple(vertices), tuple(simplices))


def link_is_flag_simplicial(link: LinkComplex) -> bool:
    seen = set()
    for s in link.simplices:
        if len(set(s)) != len(s) or s in seen:
            return False
        seen.add(s)
    g = nx.Graph()
    g.add_nodes_from(link.vertices)
    for s in link.simplices:
        g.add_edges_from(combinations(s, 2))
    tops = [frozenset(s) for s in link.simplices]
    for clique in nx.find_cliques(g):
        if len(clique) < 3:
            continue
        c = frozenset(clique)
        if not any(c <= t for t in tops):
            return False
    return True


def is_npc(x: CubeComplex, cap: int = DIMENSION_CAP) -> bool:
    """Gromov's link condition at every vertex."""
    if x.dim > cap:
        raise UnsupportedError(f"dimension {x.dim} exceeds the cap of {cap}")
    return all(link_is_flag_simplicial(vertex_link(x, v)) for v in x.cubes(0))


# ---------------------------------------------------------------------------
# hyperplanes and specialness (square complexes)


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _require_square_complex(x: CubeComplex) -> None:
    if x.dim > 2:
        raise UnsupportedError("hyperplane analysis is limited to complexes of dimension at most 2")


def _edge_classes(x: CubeComplex) -> _UnionFind:
    uf = _UnionFind(x.cubes(1))
    for sq in x.cubes(2):
        for lo, hi in x.facets(sq):
            uf.union(lo, hi)
    return uf


def hyperplanes(x: CubeComplex) -> List[Hyperplane]:
    """Edges grouped by the transitive closure of being opposite in a square."""
    _require_square_complex(x)
    uf = _edge_classes(x)
    groups: Dict[Key, set] = {}
    for e in x.cubes(1):
        groups.setdefault(uf.find(e), set()).add(e)
    out = [Hyperplane(frozenset(g)) for g in groups.values()]
    out.sort(key=lambda h: h.sorted_edges())
    return out


def specialness_report(x: CubeComplex) -> SpecialnessReport:
    _require_square_complex(x)
    hps = hyperplanes(x)
    class_of: Dict[Key, int] = {}
    for idx, h in enumerate(hps):
        for e in h.edge_class:
            class_of[e] = idx

    # parity union-find: an edge's own orientation against its neighbours'
    parent = {e: e for e in x.cubes(1)}
    parity = {e: 0 for e in x.cubes(1)}

    def find(e):
        p = 0
        root = e
        while parent[root] != root:
            p ^= parity[root]
            root = parent[root]
        return root, p

    twisted = set()
    crossing = set()
    corner_pairs = set()
    self_cross = set()
    for sq in x.cubes(2):
        pairs = x.facets(sq)
        for a in (0, 1):
            b = 1 - a
            bits = []
            for side in (0, 1):
                edge = pairs[a][side]
                start = x.corner(sq, (side, 0) if a == 0 else (0, side))
                bits.append(0 if x.endpoints(edge)[0] == start else 1)
            e0, e1 = pairs[a]
            (r0, p0), (r1, p1) = find(e0), find(e1)
            rel = bits[0] ^ bits[1]
            if r0 == r1:
                if p0 ^ p1 != rel:
                    twisted.add(class_of[e0])
            else:
                parent[r1] = r0
                parity[r1] = p0 ^ p1 ^ rel
        c0, c1 = class_of[pairs[0][0]], class_of[pairs[1][0]]
        if c0 == c1:
            self_cross.add(c0)
        else:
            crossing.add((min(c0, c1), max(c0, c1)))
        for eps in product((0, 1), repeat=2):
            w = x.corner(sq, eps)
            e_a, e_b = x.edge_at(sq, eps, 0), x.edge_at(sq, eps, 1)
            corner_pairs.add((w, frozenset((e_a, e_b))))

    incident: Dict[Key, List[Key]] = {}
    for e in x.cubes(1):
        for w in set(x.endpoints(e)):
            incident.setdefault(w, []).append(e)
    self_osc = set()
    inter_osc = set()
    for w, edges in incident.items():
        for e, f in combinations(sorted(edges), 2):
            if (w, frozenset((e, f))) in corner_pairs:
                continue
            ce, cf = class_of[e], class_of[f]
            if ce == cf:
                self_osc.add(ce)
            else:
                inter_osc.add((min(ce, cf), max(ce, cf)))

    return SpecialnessReport(
        self_intersecting=[hps[i] for i in sorted(self_cross)],
        self_osculating=[hps[i] for i in sorted(self_osc)],
        one_sided=[hps[i] for i in sorted(twisted)],
        inter_osculating=[(hps[i], hps[j]) for i, j in sorted(inter_osc & crossing)],
    )


def is_closed_surface(x: CubeComplex) -> bool:
    """Every edge in exactly two squares and every vertex link a single circle."""
    squares = x.cubes(2)
    if not squares or x.dim != 2:
        return False
    count: Dict[Key, int] = {e: 0 for e in x.cubes(1)}
    for sq in squares:
        for lo, hi in x.facets(sq):
            count[lo] += 1
            count[hi] += 1
    if any(c != 2 for c in count.values()):
        return False
    for v in x.cubes(0):
        link = vertex_link(x, v)
        g = link.one_skeleton()
        if g.number_of_nodes() == 0:
            return False
        if any(deg != 2 for _, deg in g.degree()):
            return False
        if not nx.is_connected(g):
            return False
    return True
