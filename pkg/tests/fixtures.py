"""Shared fixture builders: the worked examples, fans, and random generators."""
from __future__ import annotations

import random

from multifilt import exactlin as el
from multifilt.filtration import Grading, Multifiltration, from_grading, quotient_multifiltration, sub_multifiltration
from multifilt.ordered_group import LatticeMap, cone_close, quadrant, zero_cone
from multifilt.solvable import WeightData, graded_rep
from multifilt.toric import SigmaFamily, fan_build, quotient_index

QUAD = quadrant(2)
OCTANT = quadrant(3)
# cone generated by (0,1), (1,1), (2,1); coordinates are (m, n)
WEDGE = cone_close(2, generators=[(0, 1), (1, 1), (2, 1)])

CONE_POOL = [
    QUAD,
    OCTANT,
    WEDGE,
    cone_close(2, generators=[(1, 0), (1, 1)]),
    cone_close(2, generators=[(1, 2), (2, 1)]),
    cone_close(3, generators=[(1, 0, 0), (0, 1, 0), (1, 1, 1)]),
    cone_close(3, generators=[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)]),
]

E2 = el.full(2)
U_PLUS_V = el.subspace_from_vectors(2, [[1, 1]])
S3 = el.subspace_from_vectors(3, [[1, -1, 0], [0, 1, -1]])


def quadrant_pair() -> Multifiltration:
    """u at (1,0), v at (0,1) over the quadrant, plus E at the origin."""
    return Multifiltration.build(QUAD, 2, [((1, 0), [[1, 0]]), ((0, 1), [[0, 1]]), ((0, 0), [[1, 0], [0, 1]])])


def quadrant_pair_quotient() -> Multifiltration:
    return quotient_multifiltration(quadrant_pair(), U_PLUS_V)


def wedge_pair() -> Multifiltration:
    """u at (0,0), v at (-1,0) over the wedge."""
    return Multifiltration.build(WEDGE, 2, [((0, 0), [[1, 0]]), ((-1, 0), [[0, 1]])])


def wedge_pair_sub() -> Multifiltration:
    return sub_multifiltration(wedge_pair(), U_PLUS_V)


def octant_triple() -> Multifiltration:
    return Multifiltration.build(
        OCTANT, 3, [((-1, 0, 0), [[1, 0, 0]]), ((0, -1, 0), [[0, 1, 0]]), ((0, 0, -1), [[0, 0, 1]])]
    )


def octant_triple_sub() -> Multifiltration:
    return sub_multifiltration(octant_triple(), S3)


def point_filtration() -> Multifiltration:
    """E at -1, 0, 1 over the zero cone in Z."""
    return Multifiltration.build(zero_cone(1), 1, [((m,), [[1]]) for m in (-1, 0, 1)])


# -- fans ---------------------------------------------------------------------

FAN_WEDGE = fan_build(2, [[(1, 0), (-1, 2)]])
FAN_A1 = fan_build(1, [[(1,)]])
FAN_A2 = fan_build(2, [[(1, 0), (0, 1)]])
FAN_A3 = fan_build(3, [[(1, 0, 0), (0, 1, 0), (0, 0, 1)]])
FAN_P2 = fan_build(2, [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]])


def _family(fan, dim, filts) -> SigmaFamily:
    return SigmaFamily(fan, dim, tuple(filts))


def family_wedge() -> SigmaFamily:
    return _family(FAN_WEDGE, 2, [wedge_pair()])


def family_wedge_sub() -> SigmaFamily:
    return _family(FAN_WEDGE, 1, [wedge_pair_sub()])


def family_octant() -> SigmaFamily:
    return _family(FAN_A3, 3, [octant_triple()])


def family_octant_sub() -> SigmaFamily:
    return _family(FAN_A3, 2, [octant_triple_sub()])


def family_ideal_origin() -> SigmaFamily:
    """Ideal of the origin in A^2: torsion free, not reflexive."""
    C = quotient_index(FAN_A2.max_cones[0]).image
    return _family(FAN_A2, 1, [Multifiltration.build(C, 1, [((1, 0), [[1]]), ((0, 1), [[1]])])])


def family_p2_mismatch() -> SigmaFamily:
    fs = []
    for i, s in enumerate(FAN_P2.max_cones):
        C = quotient_index(s).image
        p = (0, 1) if i == 0 else (0, 0)
        fs.append(Multifiltration.build(C, 1, [(p, [[1]])]))
    return _family(FAN_P2, 1, fs)


PHI_A2_A2 = LatticeMap.from_rows(2, 2, [[1, 1], [0, 1]])
PSI_A2_A1 = LatticeMap.from_rows(2, 1, [[1, 1]])


# -- solvable -----------------------------------------------------------------

WEIGHTS_TRIVIAL = WeightData(1, ())
WEIGHTS_PM = WeightData(1, ((-1,), (1,)))


def rep_example():
    return graded_rep(3, [((0,), [[1, 0, 0]]), ((2,), [[0, 1, 1]]), ((-1,), [[0, 0, 1]])])


# -- random generators -----------------------------------------------------------


def random_subspace(rng: random.Random, d: int, k: int):
    while True:
        S = el.subspace_from_vectors(d, [[rng.randint(-2, 2) for _ in range(d)] for _ in range(k)])
        if S.dim == k:
            return S


def random_grading(rng: random.Random, C, d: int, span: int = 3) -> Grading:
    """Random direct sum decomposition of Q^d placed at random points."""
    while True:
        basis = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        if el.rank(basis, d) == d:
            break
    npieces = rng.randint(1, d) if d else 0
    cuts = sorted(rng.sample(range(1, d), npieces - 1)) if npieces > 1 else []
    bounds = [0] + cuts + [d]
    pts = set()
    while len(pts) < npieces:
        pts.add(tuple(rng.randint(-span, span) for _ in range(C.rank)))
    pieces = [(p, basis[a:b]) for p, a, b in zip(sorted(pts), bounds, bounds[1:])]
    return Grading.build(C, d, pieces)


def random_regular(rng: random.Random, C, d: int, span: int = 3) -> Multifiltration:
    return from_grading(random_grading(rng, C, d, span))


def random_multifilt(rng: random.Random, C, d: int, ngens: int, span: int = 3) -> Multifiltration:
    gens = []
    for _ in range(ngens):
        p = tuple(rng.randint(-span, span) for _ in range(C.rank))
        gens.append((p, random_subspace(rng, d, rng.randint(1, d))))
    return Multifiltration.build(C, d, gens)
