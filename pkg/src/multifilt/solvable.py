"""Representations of a connected solvable group as multifiltrations.

The torus weights R occurring in the unipotent radical generate a cone in the
character lattice M; a graded representation V = sum of V_m becomes the
multifiltration F^m V = sum of V_m' over m' >= m in that cone.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import exactlin as el
from .exactlin import Subspace
from .filtration import Grading, Multifiltration, from_grading
from .ordered_group import Cone, IntVec, cone_close


@dataclass(frozen=True)
class WeightData:
    M_rank: int
    weights: tuple[IntVec, ...]


@dataclass(frozen=True)
class GradedRep:
    V_dim: int
    pieces: tuple[tuple[IntVec, Subspace], ...]


def weight_cone(W: WeightData) -> Cone:
    return cone_close(W.M_rank, generators=list(W.weights))


def rep_multifilt(W: WeightData, V: GradedRep) -> Multifiltration:
    G = Grading.build(weight_cone(W), V.V_dim, V.pieces)
    return from_grading(G)


def borel_weights(n: int) -> tuple[WeightData, list[IntVec]]:
    """Weights of the upper unipotent radical of SL_n on the character lattice
    {sum m_i = 0}, in the basis of simple roots e_i - e_(i+1).

    Returns the weight data and the embedding of the basis into Z^n.
    """
    r = n - 1
    weights = []
    for i in range(r):
        for j in range(i + 1, n):
            weights.append(tuple(int(i <= k < j) for k in range(r)))
    basis = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(r)]
    return WeightData(r, tuple(weights)), basis


def embed(basis: Sequence[IntVec], m: Sequence[int]) -> IntVec:
    n = len(basis[0]) if basis else 0
    return tuple(sum(c * b[k] for c, b in zip(m, basis)) for k in range(n))


def graded_rep(V_dim: int, pieces) -> GradedRep:
    ps = tuple(
        (tuple(int(x) for x in w), S if isinstance(S, Subspace) else el.subspace_from_vectors(V_dim, S))
        for w, S in pieces
    )
    return GradedRep(V_dim, ps)
