"""Exact rational linear algebra over gmpy2 ``mpq`` scalars.

Matrices are numpy object arrays holding ``mpq`` entries.  Every subspace is
kept in reduced row-echelon form (first nonzero column pivots, pivots scaled
to 1), so two subspaces of the same ambient space are equal exactly when
their bases agree entry by entry.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def rational(x) -> mpq:
    """Coerce ints, Fractions, mpq or ``"p/q"`` strings to an exact rational."""
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if m is None:
            raise ValueError(f"not a rational literal: {x!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator: {x!r}")
        return mpq(int(m.group(1)), den)
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, np.integer)):
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if type(x).__name__ == "mpq":
        return x
    if type(x).__name__ == "mpz":
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(q) -> str:
    """Lossless ``"p/q"`` encoding (``"p"`` when the denominator is 1)."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def zeros(*shape) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = ONE
    return m


def as_matrix(rows, cols: int | None = None) -> np.ndarray:
    """Build a 2-d object array of mpq from nested sequences."""
    rows = [list(r) for r in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    m = zeros(len(rows), cols)
    for i, r in enumerate(rows):
        if len(r) != cols:
            raise ValueError("ragged matrix rows")
        for j, x in enumerate(r):
            m[i, j] = rational(x)
    return m


def as_vector(values) -> np.ndarray:
    values = list(values)
    v = zeros(len(values))
    for i, x in enumerate(values):
        v[i] = rational(x)
    return v


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a != 0)


def rref(m: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form and pivot columns; zero rows are dropped."""
    a = np.array(m, dtype=object, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, c]
        if piv != 1:
            a[r, c:] = a[r, c:] / piv
        col = a[:, c].copy()
        col[r] = ZERO
        hit = np.flatnonzero(col != 0)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] -= np.outer(col[hit], a[r, c:])
        pivots.append(c)
        r += 1
    return a[:r].copy(), tuple(pivots)


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red, piv = rref(np.hstack([m, identity(n)]))
    if piv[:n] != tuple(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:].copy()


class Subspace:
    """A linear subspace of Q^n stored by its canonical echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_key")

    def __init__(self, ambient_dim: int, basis: np.ndarray, pivots: tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self._key = None

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        vecs = np.asarray(vectors, dtype=object)
        if vecs.size == 0:
            return cls.zero(ambient_dim)
        vecs = vecs.reshape(-1, ambient_dim)
        basis, piv = rref(vecs)
        return cls(ambient_dim, basis, piv)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.ambient_dim, tuple(tuple(r) for r in self.basis))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def residual(self, v) -> np.ndarray:
        """Reduce ``v`` (or each row of a 2-d array) modulo the subspace."""
        v = np.asarray(v, dtype=object)
        if not self.pivots:
            return v.copy()
        coeff = v[..., list(self.pivots)]
        return v - coeff @ self.basis

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object)
        if v.shape[-1] != self.ambient_dim:
            raise ValueError("vector length does not match the ambient dimension")
        return is_zero(self.residual(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or is_zero(self.residual(other.basis))

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.ambient_dim)

    def orthogonal_complement(self) -> "Subspace":
        """Annihilator under the dual-basis pairing <e_i*, e_j> = delta_ij."""
        n = self.ambient_dim
        free = [c for c in range(n) if c not in set(self.pivots)]
        k = zeros(len(free), n)
        for row, f in enumerate(free):
            k[row, f] = ONE
        if self.pivots and free:
            k[:, list(self.pivots)] = -self.basis[:, free].T
        return Subspace.span(k, n)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return self.orthogonal_complement().sum(other.orthogonal_complement()).orthogonal_complement()

    def quotient_map(self) -> np.ndarray:
        """Matrix of an isomorphism Q^n / S -> Q^(n - dim S).

        The image coordinates are the non-pivot coordinates of the residual,
        so the kernel is exactly S.
        """
        n = self.ambient_dim
        free = [c for c in range(n) if c not in set(self.pivots)]
        q = zeros(len(free), n)
        for row, f in enumerate(free):
            q[row, f] = ONE
        if self.pivots and free:
            q[:, list(self.pivots)] = -self.basis[:, free].T
        return q


def row_reduce(m) -> Subspace:
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError("row_reduce expects a matrix")
    return Subspace.span(m, m.shape[1])


def kernel(m) -> Subspace:
    """Right null space {v : m v = 0}."""
    m = np.asarray(m, dtype=object)
    return row_reduce(m).orthogonal_complement()


def orthogonal_complement(s: Subspace) -> Subspace:
    return s.orthogonal_complement()


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    a._check(b)
    return a == b


def contains(s: Subspace, v) -> bool:
    return s.contains(v)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    return a.intersection(b)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = [as_vector(v) for v in vectors]
    if not rows:
        return Subspace.zero(ambient_dim)
    return Subspace.span(np.vstack(rows), ambient_dim)
