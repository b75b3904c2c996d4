"""Lattices, lattice maps and rational polyhedral cones.

A cone C in Z^r defines the preorder a <= b iff b - a lies in C. Cones are
kept in a canonical form so that dataclass equality is equality of sets:

* ``lineality``: the lineality space C cap -C, primitive rows of its RREF basis;
* ``generators``: extreme rays of C intersected with the orthogonal
  complement of the lineality space;
* ``facets``: integer covectors f with C = {x : f.x >= 0 for all f}. Normals
  are chosen inside the linear span of C and made primitive; when C is not
  full dimensional, each equation appears with both signs.

The integer Smith normal form comes from sympy; everything else is plain
rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from itertools import combinations, product
from typing import Iterable, Sequence

from sympy import ZZ, Matrix, eye, zeros
from sympy.matrices.normalforms import smith_normal_decomp

from .exactlin import nullspace, primitive, rank, rref, solve

IntVec = tuple[int, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _primitive_rows(rows: Iterable[Sequence]) -> list[IntVec]:
    return [primitive(r) for r in rows]


# -- integer linear algebra -------------------------------------------------


def snf(matrix: Sequence[Sequence[int]], nrows: int, ncols: int):
    """Return (D, S, T) with D = S * M * T, S and T unimodular (sympy matrices)."""
    if nrows == 0 or ncols == 0:
        return zeros(nrows, ncols), eye(nrows), eye(ncols)
    M = Matrix(nrows, ncols, [int(x) for row in matrix for x in row])
    return smith_normal_decomp(M, domain=ZZ)


def saturated_basis(rows: Sequence[Sequence[int]], n: int) -> list[IntVec]:
    """Integer basis of span_Q(rows) cap Z^n, in row Hermite normal form."""
    rows = [tuple(int(x) for x in r) for r in rows if any(r)]
    if not rows:
        return []
    D, S, T = snf(rows, len(rows), n)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    Tinv = T.inv()
    basis = [tuple(int(Tinv[i, j]) for j in range(n)) for i in range(r)]
    return hermite_rows(basis)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[IntVec]:
    """Row Hermite normal form of a full row rank integer matrix."""
    m = [list(int(x) for x in r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        # Euclid down column c among rows r..
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[p] = m[p], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            m[i] = [a - q * b for a, b in zip(m[i], m[r])]
        r += 1
    return [tuple(row) for row in m[:r]]


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int], ncols: int) -> IntVec | None:
    """One integer solution of M x = b, or None."""
    nrows = len(matrix)
    if ncols == 0:
        return () if all(b == 0 for b in rhs) else None
    if nrows == 0:
        return (0,) * ncols
    D, S, T = snf(matrix, nrows, ncols)
    c = S * Matrix(nrows, 1, [int(b) for b in rhs])
    y = [0] * ncols
    for i in range(nrows):
        d = D[i, i] if i < ncols else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = int(c[i] // d)
    x = T * Matrix(ncols, 1, y)
    return tuple(int(v) for v in x)


# -- lattice maps -------------------------------------------------------------


@dataclass(frozen=True)
class LatticeMap:
    """Z-linear map Z^source_rank -> Z^target_rank; matrix rows index the target."""

    source_rank: int
    target_rank: int
    matrix: tuple[IntVec, ...]

    def __post_init__(self):
        if len(self.matrix) != self.target_rank or any(len(r) != self.source_rank for r in self.matrix):
            raise ValueError("matrix shape does not match ranks")

    @classmethod
    def from_rows(cls, source_rank: int, target_rank: int, rows) -> "LatticeMap":
        return cls(source_rank, target_rank, tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "LatticeMap":
        return cls.from_rows(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def __call__(self, x: Sequence[int]) -> IntVec:
        return tuple(dot(row, x) for row in self.matrix)

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self after other."""
        if other.target_rank != self.source_rank:
            raise ValueError("ranks do not compose")
        rows = [
            [sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.source_rank)) for j in range(other.source_rank)]
            for i in range(self.target_rank)
        ]
        return LatticeMap.from_rows(other.source_rank, self.target_rank, rows)

    def transpose(self) -> "LatticeMap":
        rows = [[self.matrix[i][j] for i in range(self.target_rank)] for j in range(self.source_rank)]
        return LatticeMap.from_rows(self.target_rank, self.source_rank, rows)

    def is_surjective(self) -> bool:
        if self.target_rank == 0:
            return True
        if self.source_rank == 0:
            return False
        D, _, _ = snf(self.matrix, self.target_rank, self.source_rank)
        return all(i < self.source_rank and abs(D[i, i]) == 1 for i in range(self.target_rank))

    def preimage(self, y: Sequence[int]) -> IntVec | None:
        return solve_integer(self.matrix, y, self.source_rank)

    def section(self) -> "LatticeMap":
        """A right inverse s with self o s = id; needs a surjective map."""
        cols = []
        for i in range(self.target_rank):
            e = [int(i == j) for j in range(self.target_rank)]
            x = self.preimage(e)
            if x is None:
                raise ValueError("map is not surjective")
            cols.append(x)
        rows = [[cols[j][i] for j in range(self.target_rank)] for i in range(self.source_rank)]
        return LatticeMap.from_rows(self.target_rank, self.source_rank, rows)


# -- cones --------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Saturated rational polyhedral cone in Z^rank, in canonical form."""

    rank: int
    generators: tuple[IntVec, ...]
    lineality: tuple[IntVec, ...]
    facets: tuple[IntVec, ...]

    def contains(self, x: Sequence[int]) -> bool:
        return all(dot(f, x) >= 0 for f in self.facets)

    def leq(self, a: Sequence[int], b: Sequence[int]) -> bool:
        """a <= b in the preorder defined by the cone."""
        return all(dot(f, b) >= dot(f, a) for f in self.facets)

    def lt(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    @property
    def span_dim(self) -> int:
        return rank(list(self.generators) + list(self.lineality), self.rank)

    @property
    def is_strict(self) -> bool:
        return not self.lineality

    @property
    def is_generating(self) -> bool:
        return self.span_dim == self.rank

    @property
    def proper_facets(self) -> tuple[IntVec, ...]:
        """Facets whose negatives are not also facets."""
        fs = set(self.facets)
        return tuple(f for f in self.facets if tuple(-x for x in f) not in fs)

    def __repr__(self) -> str:
        return f"Cone(rank={self.rank}, generators={list(self.generators)}, lineality={list(self.lineality)})"


def _equations(gens: Sequence[Sequence[int]], n: int) -> list[IntVec]:
    """Primitive echelon basis of the orthogonal complement of span(gens)."""
    perp = nullspace(gens, n) if gens else [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, _ = rref(perp, n)
    return _primitive_rows(red)


def _from_generators(n: int, gens: Sequence[Sequence[int]]) -> Cone:
    gens = sorted({primitive(g) for g in gens if any(g)})
    eqs = _equations(gens, n)
    d = n - len(eqs)
    proper: set[IntVec] = set()
    if d > 0:
        for sub in combinations(gens, d - 1):
            if sub and rank(sub, n) < d - 1:
                continue
            ns = nullspace(list(sub) + eqs, n)
            if len(ns) != 1:
                continue
            f = primitive(ns[0])
            vals = [dot(f, g) for g in gens]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                proper.add(f)
            elif all(v <= 0 for v in vals) and any(v < 0 for v in vals):
                proper.add(tuple(-x for x in f))
    proper_l = sorted(proper)
    lin_ns = nullspace(proper_l + eqs, n) if (proper_l or eqs) else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    lin = _primitive_rows(rref(lin_ns, n)[0]) if lin_ns else []
    rays = _extreme_rays(n, proper_l, eqs, lin)
    facets = proper_l + eqs + [tuple(-x for x in e) for e in eqs]
    return Cone(n, tuple(sorted(rays)), tuple(lin), tuple(sorted(set(facets))))


def _extreme_rays(n: int, ineqs: list[IntVec], eqs: list[IntVec], lin: list[IntVec]) -> list[IntVec]:
    """Extreme rays of {x : ineqs >= 0, eqs = 0, x orthogonal to lin}."""
    base = list(eqs) + list(lin)
    k = n - rank(base, n) if base else n
    if k == 0:
        return []
    rays: set[IntVec] = set()
    for sub in combinations(ineqs, k - 1):
        ns = nullspace(list(sub) + base, n)
        if len(ns) != 1:
            continue
        r = primitive(ns[0])
        for cand in (r, tuple(-x for x in r)):
            if all(dot(f, cand) >= 0 for f in ineqs):
                rays.add(cand)
    # a ray and its negative both feasible means a line, which lin excludes
    return sorted(rays)


def _from_facets(n: int, facets: Sequence[Sequence[int]]) -> Cone:
    facets = [tuple(int(x) for x in f) for f in facets if any(f)]
    if not facets:
        return _from_generators(n, [tuple(int(i == j) for j in range(n)) for i in range(n)] + [
            tuple(-int(i == j) for j in range(n)) for i in range(n)
        ])
    lin_ns = nullspace(facets, n)
    lin = _primitive_rows(rref(lin_ns, n)[0]) if lin_ns else []
    rays = _extreme_rays(n, facets, [], lin)
    gens = list(rays) + list(lin) + [tuple(-x for x in v) for v in lin]
    return _from_generators(n, gens)


def cone_close(rank_: int, generators=None, facets=None) -> Cone:
    """Saturated cone from generators or from facet covectors (exactly one)."""
    if (generators is None) == (facets is None):
        raise ValueError("give exactly one of generators, facets")
    if generators is not None:
        gens = [tuple(int(x) for x in g) for g in generators]
        if any(len(g) != rank_ for g in gens):
            raise ValueError("generator length does not match lattice rank")
        return _from_generators(rank_, gens)
    fs = [tuple(int(x) for x in f) for f in facets]
    if any(len(f) != rank_ for f in fs):
        raise ValueError("facet length does not match lattice rank")
    return _from_facets(rank_, fs)


def quadrant(n: int) -> Cone:
    return cone_close(n, generators=[[int(i == j) for j in range(n)] for i in range(n)])


def whole_lattice(n: int) -> Cone:
    return cone_close(n, facets=[])


def zero_cone(n: int) -> Cone:
    return cone_close(n, generators=[])


def cone_flags(C: Cone) -> dict:
    strict = C.is_strict
    return {"strict": strict, "generating": C.is_generating, "strongly_strict": strict}


def quasi_zero_quotient(C: Cone) -> tuple[LatticeMap, Cone]:
    """Surjection q: Z^r -> Z^s with kernel the lattice points of C cap -C,
    together with the strict image cone q(C)."""
    n = C.rank
    if not C.lineality:
        q = LatticeMap.identity(n)
        return q, C
    perp = nullspace(C.lineality, n)
    rows = saturated_basis([primitive(v) for v in perp], n)
    q = LatticeMap.from_rows(n, len(rows), rows)
    image = cone_close(q.target_rank, generators=[q(g) for g in C.generators])
    return q, image


def ample_element(C: Cone) -> IntVec:
    """Sum of a spanning set of C; lies in the relative interior of C."""
    total = [0] * C.rank
    for g in list(C.generators) + list(C.lineality):
        total = [a + b for a, b in zip(total, g)]
    return tuple(total)


def separating_functional(C: Cone) -> IntVec:
    """Integer covector positive on C minus 0; zero covector for the zero cone."""
    if not C.is_strict:
        raise ValueError("cone is not strict")
    total = [0] * C.rank
    for f in C.facets:
        total = [a + b for a, b in zip(total, f)]
    if not any(total):
        return tuple(total)
    return primitive(total)


def preimage_cone(phi: LatticeMap, target: Cone) -> Cone:
    return cone_close(phi.source_rank, facets=[phi.transpose()(f) for f in target.facets])


def image_cone(phi: LatticeMap, source: Cone) -> Cone:
    gens = [phi(g) for g in source.generators]
    gens += [phi(v) for v in source.lineality] + [tuple(-x for x in phi(v)) for v in source.lineality]
    return cone_close(phi.target_rank, generators=gens)


def is_order_preserving(phi: LatticeMap, source: Cone, target: Cone) -> bool:
    vecs = list(source.generators) + list(source.lineality) + [tuple(-x for x in v) for v in source.lineality]
    return all(target.contains(phi(v)) for v in vecs)


def map_check(phi: LatticeMap, source: Cone, target: Cone) -> dict:
    return {
        "order_preserving": is_order_preserving(phi, source, target),
        "surjective": phi.is_surjective(),
        "preimage_equals": preimage_cone(phi, target) == source,
    }


def box_points(lo: Sequence[int], hi: Sequence[int]) -> list[IntVec]:
    return [tuple(p) for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)])]


def maximal_lattice_points(C: Cone, bounds: Sequence) -> list[IntVec]:
    """Maximal lattice points of {x : f.x <= b_f for each facet f of C}.

    C must be strict and full dimensional, so the region has recession cone
    -C and finitely many maximal lattice points. Every maximal point lies in
    (convex hull of vertices) - (half-open parallelepiped on extreme rays),
    and the bounding box of that set is enumerated.
    """
    n = C.rank
    if n == 0:
        return [()]
    if not (C.is_strict and C.is_generating):
        raise ValueError("cone must be strict and full dimensional")
    F = list(C.facets)
    b = [Fraction(x) for x in bounds]
    verts = []
    for T in combinations(range(len(F)), n):
        rows = [F[i] for i in T]
        if rank(rows, n) < n:
            continue
        x = solve(rows, [b[i] for i in T], n)
        if x is not None and all(dot(f, x) <= bf for f, bf in zip(F, b)):
            verts.append(x)
    if not verts:
        return []
    lo, hi = [], []
    for j in range(n):
        neg = sum(max(u[j], 0) for u in C.generators)
        pos = sum(min(u[j], 0) for u in C.generators)
        lo.append(math.floor(min(v[j] for v in verts) - neg))
        hi.append(math.ceil(max(v[j] for v in verts) - pos))
    pts = [p for p in box_points(lo, hi) if all(dot(f, p) <= bf for f, bf in zip(F, b))]
    vals = [tuple(dot(f, p) for f in F) for p in pts]
    out = []
    for i, vi in enumerate(vals):
        dominated = any(
            j != i and all(a >= c for a, c in zip(vals[j], vi)) and vals[j] != vi for j in range(len(pts))
        )
        if not dominated:
            out.append(pts[i])
    return sorted(out)
