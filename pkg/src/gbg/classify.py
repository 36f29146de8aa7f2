"""Decision procedures for freeness, hyperbolicity and free ranks of braid groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

from .config_space import build_UD
from .cube_complex import homology_summary
from .errors import InvalidInputError
from .graph_core import (
    Graph,
    chains,
    chordless_cycles,
    enumerate_cycles,
    has_two_disjoint_cycles,
    induced_is_forest,
    is_planar,
    smooth_to_minimal_model,
    subdivide_for,
)


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is zero whenever an argument is out of range."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class ElementaryGrapeType:
    """One central vertex with ``k`` hanging arcs and ``l`` hanging cycles."""

    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0 or self.k + 2 * self.l < 2:
            raise InvalidInputError("an elementary type needs k + 2l >= 2")


def elementary_graph(k: int, l: int) -> Graph:
    """The minimal simple graph of type (k, l), centred at "c"."""
    ElementaryGrapeType(k, l)
    edges = [("c", f"k{i}") for i in range(k)]
    for j in range(l):
        a, b = f"t{j}a", f"t{j}b"
        edges += [("c", a), (a, b), (b, "c")]
    return Graph(edges, ["c"])


def detect_elementary(g: Graph) -> Optional[ElementaryGrapeType]:
    if not g.is_connected():
        return None
    h = smooth_to_minimal_model(g)
    if len(h.vertices) == 2 and len(h.edges) == 1:
        return ElementaryGrapeType(2, 0)
    if len(h.vertices) == 3 and len(h.edges) == 3:
        return ElementaryGrapeType(0, 1)
    centres = h.essential_vertices()
    if len(centres) != 1:
        return None
    c = centres[0]
    k = 0
    bivalent = 0
    for v in h.vertices - {c}:
        nbrs = h.neighbors(v)
        if nbrs == {c}:
            k += 1
        elif len(nbrs) == 2 and c in nbrs:
            (w,) = nbrs - {c}
            if h.degree(w) != 2 or c not in h.neighbors(w):
                return None
            bivalent += 1
        else:
            return None
    return ElementaryGrapeType(k, bivalent // 2)


def elementary_rank(t: ElementaryGrapeType, n: int) -> int:
    if n < 1:
        raise InvalidInputError("n must be positive")
    k, l = t.k, t.l
    s = k + l
    return binom(n + s - 2, s - 1) * (k + 2 * l - 2) - binom(n + s - 2, s - 2) + 1


def _single_cycle_through_essentials(g: Graph) -> bool:
    if g.cyclomatic_number() != 1:
        return False
    (cyc,) = enumerate_cycles(g)
    return set(g.essential_vertices()) <= cyc.vertex_set


def _is_k23_with_pendants(g: Graph) -> bool:
    h = smooth_to_minimal_model(g)
    leaves = h.leaves()
    core = h.without(leaves)
    hubs = core.essential_vertices()
    if len(hubs) != 2 or any(core.degree(v) != 3 for v in hubs):
        return False
    if any(core.degree(v) not in (2, 3) for v in core.vertices):
        return False
    paths = chains(core)
    if len(paths) != 3 or any({p[0], p[-1]} != set(hubs) for p in paths):
        return False
    return all(next(iter(h.neighbors(x))) in hubs for x in leaves)


def braid_free(g: Graph, n: int) -> bool:
    """Whether the n-strand braid group of ``g`` is free."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    if n == 1 or len(g.vertices) <= 1:
        return True
    if n == 2:
        return is_planar(g) and not has_two_disjoint_cycles(g)
    if n == 3:
        return (
            g.is_tree()
            or detect_elementary(g) is not None
            or _single_cycle_through_essentials(g)
            or _is_k23_with_pendants(g)
        )
    return detect_elementary(g) is not None


def braid_hyperbolic(g: Graph, n: int) -> bool:
    """Whether the n-strand braid group of ``g`` is word-hyperbolic."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    if n == 1:
        return True
    if n == 2:
        return not has_two_disjoint_cycles(g)
    if n == 3:
        return all(induced_is_forest(g, g.vertices - {v}) for v in g.essential_vertices())
    return len(g.essential_vertices()) <= 1


@dataclass(frozen=True)
class FreeRank:
    rank: int
    method: str
    graph: Graph


def free_rank_report(g: Graph, n: int) -> Optional[FreeRank]:
    """Rank of a free braid group and how it was obtained; None if the group is not free."""
    if not braid_free(g, n):
        return None
    if len(g.vertices) <= 1:
        return FreeRank(0, "trivial", g)
    if n == 2 and g.is_tree():
        return FreeRank(sum(binom(g.degree(v) - 1, 2) for v in g.vertices), "tree formula", g)
    t = detect_elementary(g)
    if t is not None:
        return FreeRank(elementary_rank(t, n), f"elementary ({t.k},{t.l})", g)
    h = subdivide_for(g, n)
    _, betti = homology_summary(build_UD(h, n))
    return FreeRank(betti[1] if len(betti) > 1 else 0, "first Betti number", h)


def free_rank(g: Graph, n: int) -> Optional[int]:
    report = free_rank_report(g, n)
    return None if report is None else report.rank


@dataclass(frozen=True)
class FreeAbelianWitness:
    p: int
    q: int
    cycles: Tuple[Tuple[str, ...], ...]
    vertices: Tuple[str, ...]


def free_abelian_witness(g: Graph, n: int) -> FreeAbelianWitness:
    """Disjoint cycles and essential vertices maximizing p + q under p + 2q <= n."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    items: List[Tuple[int, frozenset, tuple]] = []
    for cyc in chordless_cycles(g):
        items.append((1, frozenset(cyc), ("cycle", cyc)))
    for v in g.essential_vertices():
        items.append((2, frozenset([v]), ("vertex", v)))
    items.sort(key=lambda it: (len(it[1]), it[0], it[2]))
    best: List = [(0, 0), []]

    def rec(i: int, used: frozenset, budget: int, chosen: List) -> None:
        p = sum(1 for c in chosen if c[0] == 1)
        q = len(chosen) - p
        score = (p + q, p)
        if score > best[0]:
            best[0] = score
            best[1] = list(chosen)
        if (p + q + budget, p + budget) <= best[0]:
            return
        for j in range(i, len(items)):
            cost, verts, _ = items[j]
            if cost <= budget and not (verts & used):
                chosen.append(items[j])
                rec(j + 1, used | verts, budget - cost, chosen)
                chosen.pop()

    rec(0, frozenset(), n, [])
    picked = best[1]
    cycles = tuple(sorted(it[2][1] for it in picked if it[0] == 1))
    verts = tuple(sorted(it[2][1] for it in picked if it[0] == 2))
    return FreeAbelianWitness(len(cycles), len(verts), cycles, verts)
