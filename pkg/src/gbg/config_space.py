"""Unordered discrete configuration spaces of a graph as cube complexes.

A configuration is a sorted tuple of pairwise disjoint cells of the graph.
A vertex cell is the 1-tuple ``(v,)`` and an edge cell is ``(u, v)`` with
``u < v``.  A configuration with d edge cells is a d-cube; its i-th pair of
facets slides the i-th edge cell (in sorted order) to its smaller or larger
endpoint.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Set, Tuple

from .cube_complex import CubeComplex
from .errors import InvalidInputError
from .graph_core import Graph, Subgraph, edge_key, is_sufficiently_subdivided

Cell = Tuple[str, ...]
Config = Tuple[Cell, ...]


def _facet_pairs(config: Config) -> Tuple[Tuple[Config, Config], ...]:
    pairs = []
    for idx, cell in enumerate(config):
        if len(cell) != 2:
            continue
        rest = config[:idx] + config[idx + 1:]
        lower = tuple(sorted(rest + ((cell[0],),)))
        upper = tuple(sorted(rest + ((cell[1],),)))
        pairs.append((lower, upper))
    return tuple(pairs)


def config_dimension(config: Config) -> int:
    return sum(1 for c in config if len(c) == 2)


def _matchings(edges: List[Tuple[str, str]], size: int, start: int, used: Set[str]) -> Iterator[List[Tuple[str, str]]]:
    if size == 0:
        yield []
        return
    for i in range(start, len(edges)):
        u, v = edges[i]
        if u in used or v in used:
            continue
        used.add(u)
        used.add(v)
        for rest in _matchings(edges, size - 1, i + 1, used):
            yield [(u, v)] + rest
        used.discard(u)
        used.discard(v)


def configurations(g: Graph, n: int) -> List[Config]:
    """All n-point configurations of cells, sorted."""
    if n < 1:
        raise InvalidInputError("the number of points must be positive")
    edges = g.sorted_edges()
    out: List[Config] = []
    for d in range(0, n + 1):
        for matching in _matchings(edges, d, 0, set()):
            covered = {x for e in matching for x in e}
            free = sorted(g.vertices - covered)
            for vs in combinations(free, n - d):
                cells = [tuple(e) for e in matching] + [(v,) for v in vs]
                out.append(tuple(sorted(cells)))
    out.sort(key=lambda c: (config_dimension(c), c))
    return out


def complex_from_configs(configs: Iterable[Config], metadata: Dict = None) -> CubeComplex:
    """Cube complex on a facet-closed set of configurations."""
    cubes = {}
    for config in configs:
        config = tuple(sorted(tuple(c) for c in config))
        cubes[config] = _facet_pairs(config)
    return CubeComplex(cubes, metadata)


def build_UD(g: Graph, n: int) -> CubeComplex:
    """The complex UD_n of ``g``; empty when ``g`` has fewer than n vertices."""
    if n < 1:
        raise InvalidInputError("the number of points must be positive")
    meta = {"n": n, "sufficiently_subdivided": is_sufficiently_subdivided(g, n) if g.vertices else False}
    return complex_from_configs(configurations(g, n), meta)


def subgraph_cells(s: Subgraph) -> List[Cell]:
    cells: List[Cell] = [(v,) for v in sorted(s.vertex_set)]
    cells.extend(tuple(e) for e in sorted(s.edge_set))
    return cells


def product_subcomplex_cells(g: Graph, a: Subgraph, b: Subgraph) -> Set[Config]:
    """Two-point configurations with one point in ``a`` and one in ``b``."""
    if a.vertex_set & b.vertex_set:
        raise InvalidInputError("product factors must be vertex-disjoint")
    for s in (a, b):
        if s.parent != g:
            raise InvalidInputError("subgraph does not belong to the given graph")
    out: Set[Config] = set()
    for x in subgraph_cells(a):
        for y in subgraph_cells(b):
            out.add(tuple(sorted((x, y))))
    return out


def ud_subcomplex(x: CubeComplex, configs: Iterable[Config]) -> CubeComplex:
    return x.subcomplex(configs)


def configuration_of(cells: Iterable[Iterable[str]]) -> Config:
    """Validate and canonicalize a user-supplied configuration."""
    out = []
    seen: Set[str] = set()
    for cell in cells:
        cell = tuple(str(c) for c in cell)
        if len(cell) == 2:
            cell = edge_key(*cell)
        elif len(cell) != 1:
            raise InvalidInputError(f"cell {cell!r} is neither a vertex nor an edge")
        if seen & set(cell):
            raise InvalidInputError(f"cell {cell!r} overlaps another cell")
        seen.update(cell)
        out.append(tuple(cell))
    return tuple(sorted(out))
