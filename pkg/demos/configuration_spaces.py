"""Builds a few discrete configuration spaces and prints their homology."""

from gbg.classify import braid_free, braid_hyperbolic, free_rank
from gbg.config_space import build_UD
from gbg.cube_complex import homology_summary, is_closed_surface, is_npc, specialness_report
from gbg.graph_core import complete_bipartite_graph, complete_graph, dumbbell, star_graph, subdivide_for

CASES = [
    ("tripod", star_graph(3), 2),
    ("K2,3", complete_bipartite_graph(2, 3), 3),
    ("K2,4", complete_bipartite_graph(2, 4), 3),
    ("K5", complete_graph(5), 2),
    ("K3,3", complete_bipartite_graph(3, 3), 2),
    ("dumbbell", dumbbell(), 2),
]


def main():
    for name, g, n in CASES:
        x = build_UD(subdivide_for(g, n), n)
        chi, betti = homology_summary(x)
        report = specialness_report(x)
        print(f"{name}, {n} points: cells {x.counts()}  chi {chi}  betti {betti}")
        print(f"  npc {is_npc(x)}  special {report.special}  closed surface {is_closed_surface(x)}")
        print(f"  free {braid_free(g, n)}  hyperbolic {braid_hyperbolic(g, n)}  free rank {free_rank(g, n)}")


if __name__ == "__main__":
    main()
