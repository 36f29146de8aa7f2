"""Homology self-consistency checks applied to every complex the suite builds."""

from gbg.cube_complex import euler_characteristic, homology_summary


def components_of(x):
    parent = {v: v for v in x.cubes(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in x.cubes(1) if x.dim >= 1 else []:
        a, b = x.endpoints(e)
        parent[find(a)] = find(b)
    return len({find(v) for v in parent})


def homology_consistent(x) -> bool:
    """Boundary of boundary vanishes, alternating Betti sum is chi, b0 counts components."""
    if not x.boundary_squares_vanish():
        return False
    chi, betti = homology_summary(x)
    if chi != euler_characteristic(x):
        return False
    if sum((-1) ** k * b for k, b in enumerate(betti)) != chi:
        return False
    b0 = betti[0] if betti else 0
    return b0 == components_of(x)
