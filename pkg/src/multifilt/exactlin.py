"""Exact linear algebra over the rationals.

Subspaces of Q^d are stored by their reduced row-echelon basis, which makes
the representation canonical: two subspaces are equal exactly when their
bases are equal as tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def to_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : A x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Vector | None:
    """One rational solution of A x = b, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(b) if x != 0) for b in self.basis]

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace({self.ambient_dim}, [{rows}])"


def subspace_from_vectors(ambient_dim: int, vectors: Iterable[Iterable]) -> Subspace:
    vecs = [to_vector(v) for v in vectors]
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError(f"vector of length {len(v)} in Q^{ambient_dim}")
    red, _ = rref(vecs, ambient_dim)
    return Subspace(ambient_dim, tuple(tuple(r) for r in red))


def zero(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, ())


def full(ambient_dim: int) -> Subspace:
    return subspace_from_vectors(
        ambient_dim, [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)]
    )


def _check_same(S: Subspace, T: Subspace) -> None:
    if S.ambient_dim != T.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {S.ambient_dim} vs {T.ambient_dim}")


def add(S: Subspace, T: Subspace) -> Subspace:
    _check_same(S, T)
    return subspace_from_vectors(S.ambient_dim, S.basis + T.basis)


def span_sum(ambient_dim: int, spaces: Iterable[Subspace]) -> Subspace:
    vecs: list[Vector] = []
    for s in spaces:
        if s.ambient_dim != ambient_dim:
            raise ValueError("ambient dimension mismatch")
        vecs.extend(s.basis)
    return subspace_from_vectors(ambient_dim, vecs)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """Zassenhaus: echelonize [s | s] and [t | 0]; zero left halves give S cap T."""
    _check_same(S, T)
    d = S.ambient_dim
    if S.is_zero() or T.is_zero():
        return zero(d)
    zeros = (Fraction(0),) * d
    rows = [s + s for s in S.basis] + [t + zeros for t in T.basis]
    red, _ = rref(rows, 2 * d)
    inter = [r[d:] for r in red if all(x == 0 for x in r[:d])]
    return subspace_from_vectors(d, inter)


def combine(mode: str, S: Subspace, T: Subspace) -> Subspace:
    if mode == "sum":
        return add(S, T)
    if mode == "intersect":
        return intersect(S, T)
    raise ValueError(f"unknown mode {mode!r}")


def contains(S: Subspace, T: Subspace) -> bool:
    """True when T is a subspace of S."""
    _check_same(S, T)
    return all(in_span(S, t) for t in T.basis)


def in_span(S: Subspace, v: Sequence) -> bool:
    return reduce_vector(S, v) == (Fraction(0),) * S.ambient_dim


def reduce_vector(S: Subspace, v: Sequence) -> Vector:
    """Clear the pivot columns of S from v."""
    w = list(to_vector(v))
    for row, p in zip(S.basis, S.pivots):
        if w[p] != 0:
            f = w[p]
            w = [a - f * b for a, b in zip(w, row)]
    return tuple(w)


def coordinates(S: Subspace, v: Sequence) -> Vector:
    """Coordinates of v in the echelon basis of S (v must lie in S)."""
    v = to_vector(v)
    if not in_span(S, v):
        raise ValueError("vector not in subspace")
    return tuple(v[p] for p in S.pivots)


def complement_basis(W: Subspace, U: Subspace) -> list[Vector]:
    """Basis vectors of U spanning a complement of W inside U.

    W is written in the coordinates of U's echelon basis and echelonized;
    the returned vectors are the basis vectors of U sitting at the free
    columns. The choice is deterministic.
    """
    _check_same(W, U)
    if not contains(U, W):
        raise ValueError("W is not contained in U")
    coords = [coordinates(U, w) for w in W.basis]
    _, pivots = rref(coords, U.dim)
    return [U.basis[j] for j in range(U.dim) if j not in pivots]


def independent(vectors: Sequence[Sequence], ambient_dim: int) -> bool:
    return rank(vectors, ambient_dim) == len(vectors)


def image(matrix: Sequence[Sequence], S: Subspace, target_dim: int) -> Subspace:
    """Image of S under the linear map v -> matrix . v."""
    return subspace_from_vectors(
        target_dim, [tuple(sum(Fraction(a) * b for a, b in zip(row, v)) for row in matrix) for v in S.basis]
    )


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector, same direction."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
