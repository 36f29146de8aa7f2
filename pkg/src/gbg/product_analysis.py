"""Product structure inside the two-point configuration complex.

Everything here is phrased in terms of leafless subgraphs: the orthogonal
complement of a subgraph, maximal pairs of mutually complementary
subgraphs, separability of small pieces, and the combinatorial conditions
that compare the union of maximal products with the whole complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .config_space import Config, build_UD, complex_from_configs, product_subcomplex_cells
from .cube_complex import CubeComplex
from .errors import EnumerationCapExceeded, InvalidInputError, enumeration_cap
from .graph_core import (
    Edge,
    Graph,
    Subgraph,
    _components,
    core_vertices,
    enumerate_cycles,
    has_two_disjoint_cycles,
    leafless_core,
)


@dataclass(frozen=True)
class StandardPair:
    """Two vertex-disjoint connected leafless subgraphs."""

    first: Subgraph
    second: Subgraph

    def canonical(self) -> "StandardPair":
        if self.second.key() < self.first.key():
            return StandardPair(self.second, self.first)
        return self

    def key(self):
        c = self.canonical()
        return (c.first.key(), c.second.key())

    def cells(self) -> Set[Config]:
        return product_subcomplex_cells(self.first.parent, self.first, self.second)

    def contains(self, other: "StandardPair") -> bool:
        """Factor-wise containment, allowing the factors to swap."""
        return (self.first.contains(other.first) and self.second.contains(other.second)) or (
            self.first.contains(other.second) and self.second.contains(other.first)
        )

    def __repr__(self) -> str:
        c = self.canonical()
        return f"StandardPair({sorted(c.first.vertex_set)} x {sorted(c.second.vertex_set)})"


# ---------------------------------------------------------------------------
# complements and standardness


def orthogonal_complement(g: Graph, s: Subgraph) -> Subgraph:
    """Leafless core of the subgraph induced on the vertices outside ``s``."""
    if not s.is_leafless():
        raise InvalidInputError("orthogonal complement needs a leafless subgraph")
    keep = core_vertices(g, g.vertices - s.vertex_set)
    return Subgraph.induced(g, keep)


def _is_connected_nontrivial_leafless(s: Subgraph) -> bool:
    return not s.trivial and s.is_leafless() and s.is_connected()


def is_standard(g: Graph, s: Subgraph) -> bool:
    return _is_connected_nontrivial_leafless(s) and not orthogonal_complement(g, s).trivial


def is_maximally_standard(g: Graph, s: Subgraph) -> bool:
    if not is_standard(g, s):
        return False
    perp = orthogonal_complement(g, s)
    return is_standard(g, perp) and orthogonal_complement(g, perp) == s


def leafless_connected_subgraphs(g: Graph, cap: Optional[int] = None, allowed: Optional[Iterable[str]] = None) -> List[Subgraph]:
    """Every connected, nontrivial, leafless edge subset (optionally inside ``allowed``)."""
    cap = enumeration_cap() if cap is None else cap
    verts = g.vertices if allowed is None else frozenset(allowed)
    edges = [e for e in g.sorted_edges() if e[0] in verts and e[1] in verts]
    last: Dict[str, int] = {}
    for i, (u, v) in enumerate(edges):
        last[u] = i
        last[v] = i
    deg: Dict[str, int] = {v: 0 for v in verts}
    chosen: List[Edge] = []
    out: List[Subgraph] = []

    def rec(i: int) -> None:
        if i == len(edges):
            if chosen:
                s = Subgraph(g, chosen)
                if s.is_connected():
                    out.append(s)
                    if len(out) > cap:
                        raise EnumerationCapExceeded(f"more than {cap} leafless subgraphs")
            return
        u, v = edges[i]
        for take in (False, True):
            if take:
                deg[u] += 1
                deg[v] += 1
                chosen.append(edges[i])
            if not ((last[u] == i and deg[u] == 1) or (last[v] == i and deg[v] == 1)):
                rec(i + 1)
            if take:
                deg[u] -= 1
                deg[v] -= 1
                chosen.pop()

    rec(0)
    out.sort(key=lambda s: s.key())
    return out


def enumerate_standard(g: Graph, cap: Optional[int] = None) -> List[Subgraph]:
    return [s for s in leafless_connected_subgraphs(g, cap) if not orthogonal_complement(g, s).trivial]


# ---------------------------------------------------------------------------
# maximal products


def _bfs_order(g: Graph) -> List[str]:
    order: List[str] = []
    seen: Set[str] = set()
    for s in g.sorted_vertices():
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(g.neighbors(x)):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def enumerate_maximal_products(g: Graph, cap: Optional[int] = None) -> List[StandardPair]:
    """All maximal product subcomplexes, as canonical pairs.

    A pair (A, B) is maximal exactly when the vertices split as
    V(A) + V(B) + R with A and B induced, connected and leafless, R
    inducing a forest, and each tree of R joined to A by at most one edge
    and to B by at most one edge.  The search colours vertices A, B or R
    and prunes with those constraints.
    """
    cap = enumeration_cap() if cap is None else cap
    adj = g.adjacency
    order = _bfs_order(g)
    color: Dict[str, str] = {}
    found: Dict[tuple, StandardPair] = {}
    budget = [0]

    def r_component(v: str) -> Set[str]:
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp and color.get(y) == "R":
                    comp.add(y)
                    stack.append(y)
        return comp

    def r_component_ok(comp: Set[str]) -> bool:
        inner = 0
        to_a = to_b = 0
        for x in comp:
            for y in adj[x]:
                c = color.get(y)
                if c == "R":
                    inner += 1
                elif c == "A":
                    to_a += 1
                elif c == "B":
                    to_b += 1
        return inner // 2 == len(comp) - 1 and to_a <= 1 and to_b <= 1

    def side_connected(c: str) -> bool:
        members = [x for x, col in color.items() if col == c]
        if not members:
            return True
        reach = {members[0]}
        stack = [members[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in reach and color.get(y, c) == c:
                    reach.add(y)
                    stack.append(y)
        return all(m in reach for m in members)

    def feasible(v: str) -> bool:
        for x in (v, *adj[v]):
            c = color.get(x)
            if c in ("A", "B") and sum(1 for y in adj[x] if color.get(y, c) == c) < 2:
                return False
        seen: Set[str] = set()
        for x in (v, *adj[v]):
            if color.get(x) == "R" and x not in seen:
                comp = r_component(x)
                seen |= comp
                if not r_component_ok(comp):
                    return False
        c = color[v]
        if c in ("A", "B") and not side_connected(c):
            return False
        if c == "R":
            return side_connected("A") and side_connected("B")
        return True

    def finish() -> None:
        va = frozenset(x for x, c in color.items() if c == "A")
        vb = frozenset(x for x, c in color.items() if c == "B")
        if not va or not vb:
            return
        if core_vertices(g, g.vertices - vb) != va or core_vertices(g, g.vertices - va) != vb:
            return
        a, b = Subgraph.induced(g, va), Subgraph.induced(g, vb)
        if not (a.is_connected() and b.is_connected()):
            return
        pair = StandardPair(a, b).canonical()
        found[pair.key()] = pair

    def rec(i: int) -> None:
        budget[0] += 1
        if budget[0] > cap:
            raise EnumerationCapExceeded(f"maximal-product search exceeded {cap} nodes")
        if i == len(order):
            finish()
            return
        v = order[i]
        has_a = any(c == "A" for c in color.values())
        choices = ("R", "A", "B") if has_a else ("R", "A")
        for c in choices:
            color[v] = c
            if feasible(v):
                rec(i + 1)
            del color[v]

    rec(0)
    return [found[k] for k in sorted(found)]


def enumerate_maximally_standard(g: Graph, cap: Optional[int] = None) -> List[Subgraph]:
    """Both factors of every maximal product, deduplicated and sorted."""
    out = {}
    for pair in enumerate_maximal_products(g, cap):
        out[pair.first.key()] = pair.first
        out[pair.second.key()] = pair.second
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# separability


def _cycles_through(g: Graph, x: str, allowed: FrozenSet[str]) -> Iterator[Tuple[str, ...]]:
    """Induced cycles of the subgraph on ``allowed`` that pass through ``x``."""
    adj = g.adjacency
    if x not in allowed:
        return
    path = [x]
    on_path = {x}
    blocked: Dict[str, int] = {}

    def rec() -> Iterator[Tuple[str, ...]]:
        last = path[-1]
        for w in sorted(adj[last]):
            if w not in allowed or w in on_path or blocked.get(w, 0):
                continue
            if len(path) >= 2 and x in adj[w]:
                if path[1] < w:
                    yield tuple(path) + (w,)
                continue
            if len(path) >= 2:
                for z in adj[last]:
                    blocked[z] = blocked.get(z, 0) + 1
            path.append(w)
            on_path.add(w)
            yield from rec()
            path.pop()
            on_path.discard(w)
            if len(path) >= 2:
                for z in adj[last]:
                    blocked[z] -= 1

    for p1 in sorted(adj[x]):
        if p1 not in allowed:
            continue
        path.append(p1)
        on_path.add(p1)
        yield from rec()
        path.pop()
        on_path.discard(p1)


def _lollipops(g: Graph, start: str, allowed: FrozenSet[str], fits) -> Iterator[FrozenSet[str]]:
    """Vertex sets of an induced path from ``start`` ending on an induced cycle."""
    adj = g.adjacency
    if start not in allowed:
        return
    path = [start]

    def rec() -> Iterator[FrozenSet[str]]:
        here = frozenset(path)
        if not fits(here):
            return
        end = path[-1]
        avail = allowed - here | {end}
        for cyc in _cycles_through(g, end, avail):
            yield here | frozenset(cyc)
        for w in sorted(adj[end]):
            if w not in allowed or w in here:
                continue
            if any(w in adj[p] for p in path[:-1]):
                continue
            path.append(w)
            yield from rec()
            path.pop()

    yield from rec()


def _as_subgraph(g: Graph, x) -> Subgraph:
    if isinstance(x, Subgraph):
        return x
    x = tuple(x) if not isinstance(x, str) else (x,)
    if len(x) == 1:
        return Subgraph.vertex(g, x[0])
    if len(x) == 2:
        return Subgraph.edge(g, x[0], x[1])
    raise InvalidInputError(f"cannot read {x!r} as a vertex or an edge")


def _fits_factory(g: Graph, a: Subgraph):
    def fits(container: FrozenSet[str]) -> bool:
        keep = core_vertices(g, g.vertices - container)
        if not a.vertex_set <= keep:
            return False
        if len(a.vertex_set) == 1:
            return True
        for comp in _components(keep, g.adjacency):
            if a.vertex_set <= set(comp):
                return True
        return False

    return fits


def separable(g: Graph, a, b) -> bool:
    """Whether disjoint connected leafless subgraphs contain ``a`` and ``b`` respectively.

    ``a`` and ``b`` may be Subgraphs, vertex names, or edge tuples.
    """
    a, b = _as_subgraph(g, a), _as_subgraph(g, b)
    if a.vertex_set & b.vertex_set:
        raise InvalidInputError("separability is only defined for disjoint pieces")
    if not (a.is_connected() and b.is_connected()):
        raise InvalidInputError("separability pieces must be connected")
    fits = _fits_factory(g, a)
    allowed = frozenset(g.vertices - a.vertex_set)
    for container in _containers(g, b, allowed, fits):
        if fits(container):
            return True
    return False


def _containers(g: Graph, b: Subgraph, allowed: FrozenSet[str], fits) -> Iterator[FrozenSet[str]]:
    """Vertex sets of connected leafless subgraphs containing ``b``; includes every minimal one."""
    adj = g.adjacency
    if not b.trivial and b.is_leafless():
        yield b.vertex_set
        return
    if len(b.vertex_set) == 1:
        (x,) = tuple(b.vertex_set)
        for cyc in _cycles_through(g, x, allowed):
            yield frozenset(cyc)
        rest = allowed - {x}
        nbrs = sorted(y for y in adj[x] if y in rest)
        for y, z in combinations(nbrs, 2):
            for left in _lollipops(g, y, rest - {z}, lambda s: fits(s | {x})):
                for right in _lollipops(g, z, rest - left, lambda s: fits(s | left | {x})):
                    yield left | right | {x}
        return
    if len(b.edge_set) == 1 and len(b.vertex_set) == 2:
        (u, v), = tuple(b.edge_set)
        seen: Set[Tuple[str, ...]] = set()
        for cyc in _cycles_through(g, u, allowed):
            i = cyc.index(u)
            if cyc[i - 1] == v or cyc[(i + 1) % len(cyc)] == v:
                yield frozenset(cyc)
        for left in _lollipops(g, u, allowed - {v}, lambda s: fits(s | {v})):
            for right in _lollipops(g, v, allowed - left, lambda s: fits(s | left)):
                yield left | right
        return
    # anything else: exhaustive search inside the allowed region
    for s in leafless_connected_subgraphs(g, allowed=allowed):
        if s.contains(b):
            yield s.vertex_set


# ---------------------------------------------------------------------------
# UP2


def build_UP2(g: Graph, check: bool = True) -> CubeComplex:
    """Union of the maximal product subcomplexes of UD_2.

    With ``check`` the same cell set is also obtained by testing every
    cell's two pieces for separability, and the two answers must agree.
    """
    ud = build_UD(g, 2)
    cells: Set[Config] = set()
    for pair in enumerate_maximal_products(g):
        cells |= pair.cells()
    if check:
        by_separation = set()
        for config in ud.all_keys():
            x, y = config
            if separable(g, x, y):
                by_separation.add(config)
        if by_separation != cells:
            raise AssertionError("UP2 cell sets disagree between the two constructions")
    meta = dict(ud.metadata)
    meta["ambient_counts"] = ud.counts()
    return complex_from_configs(cells, meta)


def missing_squares(g: Graph) -> List[Config]:
    """Squares of UD_2 that lie in no maximal product."""
    covered: Set[Config] = set()
    for pair in enumerate_maximal_products(g):
        covered |= pair.cells()
    ud = build_UD(g, 2)
    return [c for c in ud.cubes(2) if c not in covered]


# ---------------------------------------------------------------------------
# derived graphs


def standardness_graphs(g: Graph, cap: Optional[int] = None) -> Tuple[nx.Graph, nx.Graph, nx.Graph]:
    """The graphs on standard subgraphs, maximally standard subgraphs, and cycles."""
    standard = enumerate_standard(g, cap)
    perps = {s: orthogonal_complement(g, s) for s in standard}

    s_graph = nx.Graph()
    s_graph.add_nodes_from(standard)
    for s, t in combinations(standard, 2):
        if _within(s, t, perps[t]) or _within(t, s, perps[s]):
            s_graph.add_edge(s, t)
    maximal = [s for s in standard if is_maximally_standard(g, s)]
    m_graph = s_graph.subgraph(maximal).copy()

    c_graph = nx.Graph()
    cycles = [c for c in enumerate_cycles(g) if not orthogonal_complement(g, c).trivial]
    c_graph.add_nodes_from(cycles)
    for c, d in combinations(cycles, 2):
        if c.disjoint_from(d):
            c_graph.add_edge(c, d)
    return s_graph, m_graph, c_graph


def _within(s: Subgraph, t: Subgraph, t_perp: Subgraph) -> bool:
    return s.edge_set <= (t.edge_set | t_perp.edge_set) and s.vertex_set <= (t.vertex_set | t_perp.vertex_set)


def graph_is_connected(h: nx.Graph) -> bool:
    """Connectivity with the empty graph counted as connected."""
    return h.number_of_nodes() == 0 or nx.is_connected(h)


# ---------------------------------------------------------------------------
# conditions and the hierarchy


def condition_A(g: Graph) -> bool:
    """No triangle contains a bivalent vertex."""
    for v in g.vertices:
        if g.degree(v) == 2:
            x, y = sorted(g.neighbors(v))
            if g.has_edge(x, y):
                return False
    return True


def _disjoint_edge_pairs(g: Graph) -> Iterator[Tuple[Edge, Edge]]:
    for e, f in combinations(g.sorted_edges(), 2):
        if not set(e) & set(f):
            yield e, f


def condition_B(g: Graph) -> bool:
    """Every pair of disjoint edges is separable."""
    return all(separable(g, e, f) for e, f in _disjoint_edge_pairs(g))


def condition_C(g: Graph) -> bool:
    """Vertex-edge separability on both sides forces edge-edge separability."""
    memo: Dict[tuple, bool] = {}

    def sep(x, y) -> bool:
        key = (x, y)
        if key not in memo:
            memo[key] = separable(g, x, y)
        return memo[key]

    for e1, e2 in _disjoint_edge_pairs(g):
        premise = any(sep((v1,), e2) and sep(e1, (v2,)) for v1 in e1 for v2 in e2)
        if premise and not sep(e1, e2):
            return False
    return True


@dataclass(frozen=True)
class Verdict3:
    """A yes/no/unknown answer with the reason that settled it."""

    value: str
    reason: str


@dataclass(frozen=True)
class HierarchyReport:
    in_G0: bool
    cond_A: bool
    cond_B: bool
    cond_C: bool
    in_G3: bool
    in_G45: bool
    in_G1: Verdict3
    in_G2: Verdict3
    sip: Optional[bool]


def is_leafless_graph(g: Graph) -> bool:
    return all(g.degree(v) != 1 for v in g.vertices)


def hierarchy_report(g: Graph, with_sip: bool = True) -> HierarchyReport:
    from .grapes import grape_status, recognize_grapes
    from .intersection_complex import standard_intersection_property

    in_g0 = is_leafless_graph(g) and has_two_disjoint_cycles(g)
    a, b, c = condition_A(g), condition_B(g), condition_C(g)
    in_g45 = in_g0 and b
    in_g3 = in_g0 and c
    grape = recognize_grapes(g)
    normal = grape is not None and grape_status(grape) == "normal"
    if not in_g0:
        g2 = Verdict3("no", "not leafless with two disjoint cycles")
    elif normal:
        g2 = Verdict3("yes", "normal bunch of grapes")
    elif in_g45:
        g2 = Verdict3("yes", "condition B")
    else:
        g2 = Verdict3("unknown", "no decision procedure applies")
    if not in_g0:
        g1 = Verdict3("no", "not leafless with two disjoint cycles")
    elif g2.value == "yes":
        g1 = Verdict3("yes", f"via G2 ({g2.reason})")
    elif in_g3:
        g1 = Verdict3("yes", "condition C")
    else:
        g1 = Verdict3("unknown", "no decision procedure applies")
    sip = standard_intersection_property(g) if (with_sip and in_g0) else None
    return HierarchyReport(in_g0, a, b, c, in_g3, in_g45, g1, g2, sip)
