"""Equivariant torsion free sheaves on toric varieties as families of multifiltrations.

For a strict cone sigma in N, the index lattice is M(sigma) = M / (sigma-perp cap M),
ordered by the image of the dual cone. A family stores one multifiltration of
E per maximal cone; faces are reached by inducing along the projections
M(sigma) -> M(tau).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from . import exactlin as el
from .exactlin import Subspace
from .filtration import (
    Multifiltration,
    compare,
    ind,
    is_exhaustive,
    is_regular,
    is_separated,
    jump_points,
    res_surjective,
)
from .ordered_group import (
    Cone,
    IntVec,
    LatticeMap,
    cone_close,
    dot,
    maximal_lattice_points,
    primitive,
    quadrant,
    quasi_zero_quotient,
)


@dataclass(frozen=True)
class QuotientIndex:
    cone: Cone
    q: LatticeMap
    image: Cone
    section: LatticeMap

    def pairing(self, m: Sequence[int], v: Sequence[int]) -> int:
        """<m, v> for m in M(sigma) and v in the span of sigma."""
        return dot(self.section(m), v)


def dual_cone(sigma: Cone) -> Cone:
    return cone_close(sigma.rank, facets=list(sigma.generators))


def quotient_index(sigma: Cone) -> QuotientIndex:
    q, image = quasi_zero_quotient(dual_cone(sigma))
    return QuotientIndex(sigma, q, image, q.section())


def face_projection(tau: Cone, sigma: Cone) -> LatticeMap:
    """M(sigma) -> M(tau) for a face tau of sigma."""
    return quotient_index(tau).q.compose(quotient_index(sigma).section)


def faces(sigma: Cone) -> list[Cone]:
    """All faces of a strict cone, including {0} and sigma."""
    rays = list(sigma.generators)
    fs = list(sigma.proper_facets)
    seen = {}
    for k in range(len(fs) + 1):
        for sub in combinations(fs, k):
            on = tuple(r for r in rays if all(dot(f, r) == 0 for f in sub))
            if on not in seen:
                seen[on] = cone_close(sigma.rank, generators=list(on))
    return sorted(seen.values(), key=lambda c: (len(c.generators), c.generators))


def is_face(tau: Cone, sigma: Cone) -> bool:
    return tau in faces(sigma)


@dataclass(frozen=True)
class Fan:
    rank: int
    max_cones: tuple[Cone, ...]

    @property
    def cones(self) -> list[Cone]:
        out = {}
        for s in self.max_cones:
            for f in faces(s):
                out[f.generators] = f
        return sorted(out.values(), key=lambda c: (len(c.generators), c.generators))

    @property
    def rays(self) -> list[IntVec]:
        return sorted({g for s in self.max_cones for g in s.generators})

    def cones_containing(self, tau: Cone) -> list[int]:
        return [i for i, s in enumerate(self.max_cones) if is_face(tau, s)]


def fan_build(rank: int, max_cones: Sequence[Sequence[Sequence[int]]]) -> Fan:
    cones = [cone_close(rank, generators=g) for g in max_cones]
    for i, c in enumerate(cones):
        if not c.is_strict:
            raise ValueError(f"cone {i} is not strict")
    for i, j in combinations(range(len(cones)), 2):
        inter = intersection(cones[i], cones[j])
        if not (is_face(inter, cones[i]) and is_face(inter, cones[j])):
            raise ValueError(f"cones {i} and {j} do not meet in a common face")
    return Fan(rank, tuple(cones))


def intersection(a: Cone, b: Cone) -> Cone:
    return cone_close(a.rank, facets=list(a.facets) + list(b.facets))


def structure_sheaf(fan: Fan, dim: int = 1) -> "SigmaFamily":
    fs = []
    for s in fan.max_cones:
        qi = quotient_index(s)
        fs.append(Multifiltration.build(qi.image, dim, [((0,) * qi.image.rank, el.full(dim))] if dim else []))
    return SigmaFamily(fan, dim, tuple(fs))


# -- families and systems -----------------------------------------------------------


@dataclass(frozen=True)
class SigmaFamily:
    fan: Fan
    E_dim: int
    filtrations: tuple[Multifiltration, ...]

    def __post_init__(self):
        if len(self.filtrations) != len(self.fan.max_cones):
            raise ValueError("need one multifiltration per maximal cone")
        for s, F in zip(self.fan.max_cones, self.filtrations):
            if F.index != quotient_index(s).image or F.ambient_dim != self.E_dim:
                raise ValueError("multifiltration is not indexed by M(sigma) with the dual cone")


def face_filtration(fam: SigmaFamily, tau: Cone, via: int | None = None) -> Multifiltration:
    i = fam.fan.cones_containing(tau)[0] if via is None else via
    sigma = fam.fan.max_cones[i]
    return ind(face_projection(tau, sigma), fam.filtrations[i], quotient_index(tau).image)


def family_check(fam: SigmaFamily) -> dict:
    fan = fam.fan
    offending = []
    for i, j in combinations(range(len(fan.max_cones)), 2):
        tau = intersection(fan.max_cones[i], fan.max_cones[j])
        if not compare(face_filtration(fam, tau, i), face_filtration(fam, tau, j)):
            offending.append({"cones": [i, j], "face": [list(r) for r in tau.generators]})
    exhaustive = all(is_exhaustive(F).verdict for F in fam.filtrations)
    separated = all(is_separated(F).verdict for F in fam.filtrations)
    return {"compatible": not offending, "exhaustive": exhaustive, "separated": separated, "offending": offending}


@dataclass(frozen=True)
class SigmaSystem:
    """Multifiltrations indexed by (M, sigma-dual), one per maximal cone."""

    fan: Fan
    E_dim: int
    filtrations: tuple[Multifiltration, ...]


def system_from_family(fam: SigmaFamily) -> SigmaSystem:
    out = []
    for s, F in zip(fam.fan.max_cones, fam.filtrations):
        qi = quotient_index(s)
        out.append(res_surjective(qi.q, dual_cone(s), F))
    return SigmaSystem(fam.fan, fam.E_dim, tuple(out))


def family_from_system(sys_: SigmaSystem) -> SigmaFamily:
    out = []
    for s, F in zip(sys_.fan.max_cones, sys_.filtrations):
        qi = quotient_index(s)
        out.append(ind(qi.q, F, qi.image))
    return SigmaFamily(sys_.fan, sys_.E_dim, tuple(out))


def families_equal(a: SigmaFamily, b: SigmaFamily) -> bool:
    return a.fan == b.fan and a.E_dim == b.E_dim and all(compare(x, y) for x, y in zip(a.filtrations, b.filtrations))


def face_direction(sigma: Cone, tau: Cone) -> IntVec:
    """An element of sigma-dual whose orthogonal cuts tau out of sigma."""
    d = dual_cone(sigma)
    total = [0] * sigma.rank
    for u in list(d.generators) + list(d.lineality):
        if all(dot(u, v) == 0 for v in tau.generators):
            total = [a + b for a, b in zip(total, u)]
    return tuple(total)


def stabilization_index(sys_: SigmaSystem, i: int, tau: Cone, m: Sequence[int], limit: int = 1000) -> tuple[int, Subspace]:
    """Least k with F_sigma^(m - k m_tau) equal to its limit, and that limit.

    The limit is the sum of the generators p with p - m in tau-dual.
    """
    sigma = sys_.fan.max_cones[i]
    F = sys_.filtrations[i]
    mt = face_direction(sigma, tau)
    tdual = dual_cone(tau)
    target = el.span_sum(F.ambient_dim, (S for p, S in F.generators if tdual.contains([a - b for a, b in zip(p, m)])))
    for k in range(limit):
        v = F.value([a - k * b for a, b in zip(m, mt)])
        if v == target:
            return k, v
    raise RuntimeError("no stabilization within limit")


# -- ray data -----------------------------------------------------------------------


@dataclass(frozen=True)
class KlyachkoData:
    """Per ray, the jump levels of E_rho(i) with the value at each level."""

    E_dim: int
    rays: tuple[tuple[IntVec, tuple[tuple[int, Subspace], ...]], ...]

    def value(self, ray: Sequence[int], i: int) -> Subspace:
        for r, jumps in self.rays:
            if r == tuple(ray):
                for level, V in jumps:
                    if level >= i:
                        return V
                return el.zero(self.E_dim)
        raise KeyError(ray)


def ray_map(sigma: Cone, ray: Sequence[int]) -> LatticeMap:
    """M(sigma) -> Z, m -> <m, v_rho>."""
    qi = quotient_index(sigma)
    return LatticeMap.from_rows(qi.image.rank, 1, [qi.section.transpose()(ray)])


def klyachko_from_family(fam: SigmaFamily) -> KlyachkoData:
    out = []
    Zpos = quadrant(1)
    for r in fam.fan.rays:
        i = fam.fan.cones_containing(cone_close(fam.fan.rank, generators=[r]))[0]
        G = ind(ray_map(fam.fan.max_cones[i], r), fam.filtrations[i], Zpos)
        jumps = tuple((p[0], G.value(p)) for p in sorted(jump_points(G)))
        out.append((r, jumps))
    return KlyachkoData(fam.E_dim, tuple(out))


def _pairing_rows(sigma: Cone) -> list[IntVec]:
    qi = quotient_index(sigma)
    return [qi.section.transpose()(r) for r in sigma.generators]


def hull_value(K: KlyachkoData, sigma: Cone, m: Sequence[int]) -> Subspace:
    rows = _pairing_rows(sigma)
    V = el.full(K.E_dim)
    for r, row in zip(sigma.generators, rows):
        V = el.intersect(V, K.value(r, dot(row, m)))
    return V


def reflexive_hull(fan: Fan, K: KlyachkoData) -> SigmaFamily:
    """Family mu -> intersection over rays of E_rho(<mu, v_rho>), described by
    generators at the maximal lattice points of each level region."""
    levels = {r: [lv for lv, _ in jumps] for r, jumps in K.rays}
    fs = []
    for sigma in fan.max_cones:
        qi = quotient_index(sigma)
        C = qi.image
        rows = _pairing_rows(sigma)
        rays = list(sigma.generators)
        gens = []
        if C.rank == 0:
            gens.append(((), hull_value(K, sigma, ())))
        elif all(levels[r] for r in rays):
            facet_of = [C.facets.index(primitive(row)) for row in rows]
            for b in product(*[levels[r] for r in rays]):
                bounds = [None] * len(C.facets)
                for fi, bv in zip(facet_of, b):
                    bounds[fi] = bv
                for m in maximal_lattice_points(C, bounds):
                    gens.append((m, hull_value(K, sigma, m)))
        fs.append(Multifiltration.build(C, K.E_dim, gens))
    return SigmaFamily(fan, K.E_dim, tuple(fs))


def is_reflexive(fam: SigmaFamily) -> bool:
    return families_equal(fam, reflexive_hull(fam.fan, klyachko_from_family(fam)))


def is_locally_free(fam: SigmaFamily) -> bool:
    return all(is_exhaustive(F).verdict and is_regular(F).verdict for F in fam.filtrations)


def classify(fam: SigmaFamily) -> dict:
    chk = family_check(fam)
    torsion_free = chk["compatible"] and chk["exhaustive"] and chk["separated"]
    reflexive = torsion_free and is_reflexive(fam)
    locally_free = torsion_free and is_locally_free(fam)
    if locally_free and not reflexive:
        raise AssertionError("locally free family failed the reflexivity test")
    return {"torsion_free": torsion_free, "reflexive": reflexive, "locally_free": locally_free}


def pullback(phi: LatticeMap, fan: Fan, target_fan: Fan, fam: SigmaFamily) -> SigmaFamily:
    """Pull a family on target_fan back along a lattice map phi: N -> N'
    sending each maximal cone of fan into a maximal cone of target_fan."""
    if fam.fan != target_fan:
        raise ValueError("family does not live on the target fan")
    dual = phi.transpose()
    out = []
    for sigma in fan.max_cones:
        j = next(
            (j for j, t in enumerate(target_fan.max_cones) if all(t.contains(phi(r)) for r in sigma.generators)),
            None,
        )
        if j is None:
            raise ValueError("a cone is not mapped into any cone of the target fan")
        qs, qt = quotient_index(sigma), quotient_index(target_fan.max_cones[j])
        mp = qs.q.compose(dual).compose(qt.section)
        out.append(ind(mp, fam.filtrations[j], qs.image))
    return SigmaFamily(fan, fam.E_dim, tuple(out))
