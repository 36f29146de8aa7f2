"""Walks through grape recognition, intersection complexes and RAAG verdicts."""

from gbg.graph_core import Graph, dumbbell, path_graph
from gbg.grapes import (
    free_factor_rank,
    glued_cliques,
    grape_icomplex,
    grape_status,
    make_grapes,
    qi_raag_verdict,
    recognize_grapes,
)
from gbg.intersection_complex import ic_analysis


def spider(*legs):
    edges = []
    for k, length in enumerate(legs):
        seq = ["x"] + [f"leg{k}.{i}" for i in range(1, length + 1)]
        edges.extend(zip(seq, seq[1:]))
    return Graph(edges)


def show(name, grapes):
    ic = grape_icomplex(grapes)
    report = ic_analysis(ic)
    rank, _ = free_factor_rank(grapes)
    verdict = qi_raag_verdict(grapes)
    print(f"{name}: status {grape_status(grapes)}  twigs {len(grapes.twigs())}  free factor rank {rank}")
    print(f"  intersection complex {ic.counts()}  connected {report.connected}  b1 {report.skeleton_betti1}")
    print(f"  glued cliques: {glued_cliques(grapes).number_of_edges()} edges")
    detail = verdict.raag.describe() if verdict.raag is not None else verdict.witness
    print(f"  verdict {verdict.value} ({verdict.rule}): {detail}")


def main():
    show("dumbbell", recognize_grapes(dumbbell()))
    show("path of length 3", make_grapes(path_graph(3), {str(i): 1 for i in range(4)}))
    tripod = spider(1, 2, 3)
    show("tripod with legs 1, 2, 3", make_grapes(tripod, {v: 1 for v in tripod.vertices if v != "x"}))
    star = spider(1, 1, 1)
    show("three-star", make_grapes(star, {v: 1 for v in star.vertices}))


if __name__ == "__main__":
    main()
