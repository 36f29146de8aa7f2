"""Finite simple graphs and the combinatorics the rest of the package leans on.

Vertices are opaque strings and every listing comes out in lexicographic
order, so two runs over the same input agree byte for byte.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import EnumerationCapExceeded, InvalidInputError, enumeration_cap

Edge = Tuple[str, str]


def edge_key(u: str, v: str) -> Edge:
    """Canonical (sorted) form of an undirected edge."""
    if u == v:
        raise InvalidInputError(f"loop at vertex {u!r}; graphs must be simple")
    return (u, v) if u < v else (v, u)


class Graph:
    """An immutable finite simple graph."""

    __slots__ = ("_vertices", "_edges", "_adj")

    def __init__(self, edges: Iterable[Sequence[str]] = (), vertices: Iterable[str] = ()):
        vs: Set[str] = {str(v) for v in vertices}
        es: Set[Edge] = set()
        for e in edges:
            u, v = e
            key = edge_key(str(u), str(v))
            es.add(key)
            vs.update(key)
        self._vertices: FrozenSet[str] = frozenset(vs)
        self._edges: FrozenSet[Edge] = frozenset(es)
        adj: Dict[str, Set[str]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj: Dict[str, FrozenSet[str]] = {v: frozenset(n) for v, n in adj.items()}

    @property
    def vertices(self) -> FrozenSet[str]:
        return self._vertices

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    @property
    def adjacency(self) -> Dict[str, FrozenSet[str]]:
        return self._adj

    def neighbors(self, v: str) -> FrozenSet[str]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._adj and v in self._adj[u]

    def sorted_vertices(self) -> List[str]:
        return sorted(self._vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges)

    def essential_vertices(self) -> List[str]:
        """Vertices of valency at least three."""
        return sorted(v for v in self._vertices if len(self._adj[v]) >= 3)

    def leaves(self) -> List[str]:
        return sorted(v for v in self._vertices if len(self._adj[v]) == 1)

    def induced(self, keep: Iterable[str]) -> "Graph":
        keep = set(keep)
        return Graph((e for e in self._edges if e[0] in keep and e[1] in keep), keep & self._vertices)

    def without(self, drop: Iterable[str]) -> "Graph":
        drop = set(drop)
        return self.induced(self._vertices - drop)

    def components(self) -> List[FrozenSet[str]]:
        return [frozenset(c) for c in _components(self._vertices, self._adj)]

    def is_connected(self) -> bool:
        return len(self._vertices) > 0 and len(self.components()) == 1

    def cyclomatic_number(self) -> int:
        return len(self._edges) - len(self._vertices) + len(self.components())

    def is_forest(self) -> bool:
        return self.cyclomatic_number() == 0

    def is_tree(self) -> bool:
        return self.is_connected() and self.is_forest()

    def relabel(self, mapping: Dict[str, str]) -> "Graph":
        return Graph(((mapping.get(u, u), mapping.get(v, v)) for u, v in self._edges),
                     (mapping.get(v, v) for v in self._vertices))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self._vertices))
        g.add_edges_from(sorted(self._edges))
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


class Subgraph:
    """An edge subset of a parent graph, together with its vertex set.

    The vertex set always holds the endpoints of the edges and may carry
    extra isolated vertices, which is how a single vertex is represented.
    """

    __slots__ = ("parent", "edge_set", "vertex_set")

    def __init__(self, parent: Graph, edges: Iterable[Sequence[str]] = (), vertices: Iterable[str] = ()):
        es = frozenset(edge_key(str(u), str(v)) for u, v in edges)
        bad = es - parent.edges
        if bad:
            raise InvalidInputError(f"edges not in parent graph: {sorted(bad)[:3]}")
        vs = set(str(v) for v in vertices)
        for u, v in es:
            vs.add(u)
            vs.add(v)
        missing = vs - parent.vertices
        if missing:
            raise InvalidInputError(f"vertices not in parent graph: {sorted(missing)[:3]}")
        self.parent = parent
        self.edge_set: FrozenSet[Edge] = es
        self.vertex_set: FrozenSet[str] = frozenset(vs)

    @classmethod
    def induced(cls, parent: Graph, vertices: Iterable[str]) -> "Subgraph":
        vs = frozenset(vertices)
        es = [e for e in parent.edges if e[0] in vs and e[1] in vs]
        return cls(parent, es, vs)

    @classmethod
    def vertex(cls, parent: Graph, v: str) -> "Subgraph":
        return cls(parent, (), (v,))

    @classmethod
    def edge(cls, parent: Graph, u: str, v: str) -> "Subgraph":
        return cls(parent, ((u, v),))

    @property
    def trivial(self) -> bool:
        return not self.edge_set

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edge_set if v in e)

    def degrees(self) -> Dict[str, int]:
        deg = {v: 0 for v in self.vertex_set}
        for u, v in self.edge_set:
            deg[u] += 1
            deg[v] += 1
        return deg

    def as_graph(self) -> Graph:
        return Graph(self.edge_set, self.vertex_set)

    def is_connected(self) -> bool:
        return self.as_graph().is_connected()

    def is_leafless(self) -> bool:
        """No vertex of degree exactly one (isolated vertices are allowed)."""
        return all(d != 1 for d in self.degrees().values())

    def contains(self, other: "Subgraph") -> bool:
        return other.edge_set <= self.edge_set and other.vertex_set <= self.vertex_set

    def disjoint_from(self, other: "Subgraph") -> bool:
        return not (self.vertex_set & other.vertex_set)

    def union(self, other: "Subgraph") -> "Subgraph":
        return Subgraph(self.parent, self.edge_set | other.edge_set, self.vertex_set | other.vertex_set)

    def components(self) -> List["Subgraph"]:
        g = self.as_graph()
        out = []
        for comp in g.components():
            out.append(Subgraph(self.parent, (e for e in self.edge_set if e[0] in comp), comp))
        out.sort(key=lambda s: s.key())
        return out

    def key(self) -> Tuple[Tuple[Edge, ...], Tuple[str, ...]]:
        return (tuple(sorted(self.edge_set)), tuple(sorted(self.vertex_set)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgraph):
            return NotImplemented
        return self.edge_set == other.edge_set and self.vertex_set == other.vertex_set

    def __hash__(self) -> int:
        return hash((self.edge_set, self.vertex_set))

    def __repr__(self) -> str:
        if self.trivial:
            return f"Subgraph(vertices={sorted(self.vertex_set)})"
        return f"Subgraph(edges={sorted(self.edge_set)})"


# ---------------------------------------------------------------------------
# small helpers over adjacency maps


def _components(vertices: Iterable[str], adj: Dict[str, Iterable[str]]) -> List[List[str]]:
    vs = set(vertices)
    seen: Set[str] = set()
    out = []
    for s in sorted(vs):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def core_vertices(g: Graph, keep: Iterable[str]) -> FrozenSet[str]:
    """Vertices surviving leaf pruning of the subgraph induced on ``keep``."""
    alive = set(keep)
    adj = g.adjacency
    deg = {v: sum(1 for w in adj[v] if w in alive) for v in alive}
    stack = [v for v, d in deg.items() if d <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return frozenset(alive)


def induced_is_forest(g: Graph, keep: Iterable[str]) -> bool:
    """True when the subgraph induced on ``keep`` has no cycle."""
    return not core_vertices(g, keep)


def leafless_core(s: Subgraph) -> Subgraph:
    """Largest subgraph of ``s`` whose vertices all have degree at least two in it.

    Leaves and isolated vertices are deleted until nothing changes; the
    result may be empty.
    """
    alive = set(s.vertex_set)
    incident: Dict[str, List[Edge]] = {v: [] for v in alive}
    for e in s.edge_set:
        incident[e[0]].append(e)
        incident[e[1]].append(e)
    deg = {v: len(incident[v]) for v in alive}
    stack = [v for v, d in deg.items() if d <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for a, b in incident[v]:
            w = b if a == v else a
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    edges = [e for e in s.edge_set if e[0] in alive and e[1] in alive]
    return Subgraph(s.parent, edges, alive)


# ---------------------------------------------------------------------------
# chains, subdivision, smoothing


def chains(g: Graph) -> List[List[str]]:
    """Maximal paths whose interior vertices are bivalent.

    Each chain is a vertex sequence; a chain that closes up (a cycle hanging
    at one branch vertex, or a component that is a bare cycle) starts and
    ends at the same vertex.
    """
    adj = g.adjacency
    branch = {v for v in g.vertices if len(adj[v]) != 2}
    seen: Set[Edge] = set()
    out: List[List[str]] = []

    def walk(start: str, first: str) -> List[str]:
        path = [start, first]
        prev, cur = start, first
        while cur not in branch and cur != start:
            nxt = min(w for w in adj[cur] if w != prev)
            path.append(nxt)
            prev, cur = cur, nxt
        return path

    for b in sorted(branch):
        for nb in sorted(adj[b]):
            if edge_key(b, nb) in seen:
                continue
            path = walk(b, nb)
            for x, y in zip(path, path[1:]):
                seen.add(edge_key(x, y))
            out.append(path)
    for e in sorted(g.edges):
        if e in seen:
            continue
        # a component with no branch vertex: a bare cycle
        start = e[0]
        path = [start]
        prev, cur = None, start
        while True:
            nxt = min(w for w in adj[cur] if w != prev) if prev is not None else e[1]
            path.append(nxt)
            prev, cur = cur, nxt
            if cur == start:
                break
        for x, y in zip(path, path[1:]):
            seen.add(edge_key(x, y))
        out.append(path)
    return out


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest."""
    best: Optional[int] = None
    adj = g.adjacency
    for s in sorted(g.vertices):
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


def is_sufficiently_subdivided(g: Graph, n: int) -> bool:
    """Paths between non-bivalent vertices have at least n-1 edges and cycles at least n+1."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    for path in chains(g):
        if path[0] != path[-1] and len(path) - 1 < n - 1:
            return False
    gi = girth(g)
    return gi is None or gi >= n + 1


def subdivide_for(g: Graph, n: int) -> Graph:
    """Insert as few bivalent vertices as needed for sufficiency at ``n``."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    paths = chains(g)
    want = []
    for path in paths:
        length = len(path) - 1
        need = n + 1 if path[0] == path[-1] else n - 1
        want.append(max(length, need))
    # two chains sharing both (distinct) ends close a cycle of their total length
    groups: Dict[Tuple[str, str], List[int]] = {}
    for i, path in enumerate(paths):
        if path[0] != path[-1]:
            groups.setdefault(edge_key(path[0], path[-1]), []).append(i)
    for members in groups.values():
        if len(members) < 2:
            continue
        members.sort(key=lambda i: (want[i], i))
        a, b = members[0], members[1]
        short = n + 1 - (want[a] + want[b])
        if short > 0:
            want[b] += short

    taken = set(g.vertices)
    new_edges: List[Edge] = []
    kept = set(g.edges)
    for path, target in zip(paths, want):
        extra = target - (len(path) - 1)
        if extra <= 0:
            continue
        steps = list(zip(path, path[1:]))
        base, rem = divmod(extra, len(steps))
        for idx, (x, y) in enumerate(steps):
            count = base + (1 if idx < rem else 0)
            if count == 0:
                continue
            kept.discard(edge_key(x, y))
            lo, hi = edge_key(x, y)
            names = []
            for t in range(1, count + 1):
                name = f"{lo}~{hi}.{t}"
                while name in taken:
                    name += "'"
                taken.add(name)
                names.append(name)
            if x != lo:
                names.reverse()
            seq = [x] + names + [y]
            new_edges.extend(edge_key(p, q) for p, q in zip(seq, seq[1:]))
    return Graph(list(kept) + new_edges, g.vertices)


def smooth_to_minimal_model(g: Graph) -> Graph:
    """Merge the two edges at bivalent vertices whenever the result stays simple."""
    edges = set(g.edges)
    vertices = set(g.vertices)
    adj: Dict[str, Set[str]] = {v: set(g.neighbors(v)) for v in vertices}
    changed = True
    while changed:
        changed = False
        for w in sorted(vertices):
            if len(adj[w]) != 2:
                continue
            u, v = sorted(adj[w])
            if v in adj[u]:
                continue
            edges.discard(edge_key(u, w))
            edges.discard(edge_key(w, v))
            edges.add(edge_key(u, v))
            adj[u].discard(w)
            adj[v].discard(w)
            adj[u].add(v)
            adj[v].add(u)
            del adj[w]
            vertices.discard(w)
            changed = True
    return Graph(edges, vertices)


# ---------------------------------------------------------------------------
# cycles


def _cycle_sequences(g: Graph, cap: int) -> Iterator[List[str]]:
    order = {v: i for i, v in enumerate(sorted(g.vertices))}
    adj = {v: sorted(g.neighbors(v), key=order.get) for v in g.vertices}
    count = 0
    for s in sorted(g.vertices):
        rank = order[s]
        path = [s]
        on_path = {s}
        stack = [iter(adj[s])]
        while stack:
            advanced = False
            for w in stack[-1]:
                if w == s:
                    if len(path) >= 3 and order[path[1]] < order[path[-1]]:
                        count += 1
                        if count > cap:
                            raise EnumerationCapExceeded(f"more than {cap} cycles")
                        yield list(path)
                    continue
                if order[w] <= rank or w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                stack.append(iter(adj[w]))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.discard(path.pop())


def enumerate_cycles(g: Graph, cap: Optional[int] = None) -> List[Subgraph]:
    """Every simple cycle of ``g``, sorted by its edge list."""
    cap = enumeration_cap() if cap is None else cap
    out = []
    for seq in _cycle_sequences(g, cap):
        es = [edge_key(a, b) for a, b in zip(seq, seq[1:] + seq[:1])]
        out.append(Subgraph(g, es))
    out.sort(key=lambda c: tuple(sorted(c.edge_set)))
    return out


def chordless_cycles(g: Graph, cap: Optional[int] = None) -> List[Tuple[str, ...]]:
    """Induced cycles as vertex sequences starting at their smallest vertex."""
    cap = enumeration_cap() if cap is None else cap
    order = {v: i for i, v in enumerate(sorted(g.vertices))}
    adj = g.adjacency
    found: List[Tuple[str, ...]] = []

    def extend(path: List[str], blocked: Dict[str, int]) -> None:
        s, last = path[0], path[-1]
        for w in sorted(adj[last], key=order.get):
            if order[w] <= order[s] or w in path or blocked.get(w, 0):
                continue
            if s in adj[w]:
                if len(path) >= 2 and order[path[1]] < order[w]:
                    found.append(tuple(path + [w]))
                    if len(found) > cap:
                        raise EnumerationCapExceeded(f"more than {cap} induced cycles")
                continue
            # w must avoid every interior vertex except the current end
            for x in adj[last]:
                blocked[x] = blocked.get(x, 0) + 1
            path.append(w)
            extend(path, blocked)
            path.pop()
            for x in adj[last]:
                blocked[x] -= 1

    for s in sorted(g.vertices):
        for p1 in sorted(adj[s], key=order.get):
            if order[p1] < order[s]:
                continue
            extend([s, p1], {})
    found.sort()
    return found


def has_two_disjoint_cycles(g: Graph) -> bool:
    """Whether two vertex-disjoint cycles exist.

    A cycle with a chord splits into two shorter ones on fewer vertices,
    so it is enough to delete each induced cycle and look for a cycle in
    what remains.
    """
    for cyc in chordless_cycles(g):
        rest = g.vertices - set(cyc)
        if not induced_is_forest(g, rest):
            return True
    return False


def cycle_transversal(g: Graph, max_size: int = 3) -> Optional[Tuple[str, ...]]:
    """Smallest vertex set (up to ``max_size``) meeting every cycle, or None."""
    vs = sorted(g.vertices)
    for size in range(0, max_size + 1):
        for combo in combinations(vs, size):
            if induced_is_forest(g, set(vs) - set(combo)):
                return combo
    return None


def is_planar(g: Graph) -> bool:
    """Planarity via the networkx left-right test."""
    planar, _ = nx.check_planarity(g.to_networkx())
    return bool(planar)


def blocks(g: Graph) -> List[Subgraph]:
    """Biconnected components, each as an edge subgraph."""
    out = [Subgraph(g, comp) for comp in nx.biconnected_component_edges(g.to_networkx())]
    out.sort(key=lambda s: s.key())
    return out


# ---------------------------------------------------------------------------
# standard families


def path_graph(length: int) -> Graph:
    """Path with ``length`` edges on vertices "0".."length"."""
    if length == 0:
        return Graph(vertices=["0"])
    return Graph((str(i), str(i + 1)) for i in range(length))


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise InvalidInputError("a simple cycle needs at least three vertices")
    return Graph((str(i), str((i + 1) % k)) for i in range(k))


def complete_graph(k: int) -> Graph:
    return Graph(((str(i), str(j)) for i, j in combinations(range(k), 2)), (str(i) for i in range(k)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph((f"a{i}", f"b{j}") for i in range(a) for j in range(b))


def star_graph(k: int) -> Graph:
    """Star with centre "c" and leaves "l0".. ; k leaves."""
    if k == 0:
        return Graph(vertices=["c"])
    return Graph(("c", f"l{i}") for i in range(k))


def dumbbell(bridge_length: int = 1) -> Graph:
    """Two triangles joined by a path with ``bridge_length`` edges."""
    edges = [("x0", "x1"), ("x1", "x2"), ("x2", "x0"), ("y0", "y1"), ("y1", "y2"), ("y2", "y0")]
    seq = ["x0"] + [f"p{i}" for i in range(1, bridge_length)] + ["y0"]
    edges.extend(zip(seq, seq[1:]))
    return Graph(edges)
