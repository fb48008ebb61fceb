"""Finite-dimensional coalgebras and their dual algebras as structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .linalg import ONE, ZERO, as_vector, format_rational, is_zero, rational, zeros


class CoalgebraAxiomError(ValueError):
    """Raised when structure constants violate a coalgebra (or algebra) axiom."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(report.message)
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str | None = None
    index: int | None = None
    lhs: object = None
    rhs: object = None
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """Coproduct ``delta[i] = ((j, k, c), ...)`` meaning Delta(b_i) = sum c b_j (x) b_k."""

    dim: int
    delta: tuple
    counit: tuple
    name: str = field(default="", compare=False)

    @classmethod
    def from_terms(cls, dim, delta, counit, name="") -> "Coalgebra":
        terms = tuple(
            tuple((int(j), int(k), rational(c)) for (j, k, c) in row) for row in delta
        )
        return cls(dim, terms, tuple(rational(e) for e in counit), name)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray, counit, name="") -> "Coalgebra":
        d = tensor.shape[0]
        delta = []
        for i in range(d):
            nz = np.argwhere(tensor[i] != 0)
            delta.append(tuple((int(j), int(k), tensor[i, j, k]) for j, k in nz))
        return cls(d, tuple(delta), tuple(rational(e) for e in counit), name)

    @cached_property
    def tensor(self) -> np.ndarray:
        """Dense structure constants D[i, j, k]."""
        t = zeros(self.dim, self.dim, self.dim)
        for i, row in enumerate(self.delta):
            for j, k, c in row:
                t[i, j, k] += c
        return t

    @cached_property
    def counit_vector(self) -> np.ndarray:
        return as_vector(self.counit)

    def coproduct(self, v) -> np.ndarray:
        """Delta(v) as a d x d array."""
        return np.tensordot(np.asarray(v, dtype=object), self.tensor, axes=([0], [0]))

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = ONE
        return v

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "coproduct": [
                {"on": i, "terms": [{"j": j, "k": k, "c": format_rational(c)} for j, k, c in row]}
                for i, row in enumerate(self.delta)
            ],
            "counit": [format_rational(e) for e in self.counit],
        }


@dataclass(frozen=True, eq=False)
class Algebra:
    """Associative algebra with dense structure constants M[i, j, k]: b_i b_j = sum M[i,j,k] b_k."""

    dim: int
    tensor: np.ndarray
    unit: np.ndarray

    @property
    def mult(self) -> dict:
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                out[(i, j)] = [(int(k), self.tensor[i, j, k]) for k in np.flatnonzero(self.tensor[i, j] != 0)]
        return out

    def multiply(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=object)
        b = np.asarray(b, dtype=object)
        return np.tensordot(np.tensordot(a, self.tensor, axes=([0], [0])), b, axes=([0], [0]))

    def opposite(self) -> "Algebra":
        return Algebra(self.dim, self.tensor.transpose(1, 0, 2).copy(), self.unit)


def _structure_ok(c: Coalgebra) -> ValidationReport:
    if len(c.delta) != c.dim:
        return ValidationReport(False, "shape", None, message=f"coproduct lists {len(c.delta)} entries for dim {c.dim}")
    if len(c.counit) != c.dim:
        return ValidationReport(False, "shape", None, message=f"counit has {len(c.counit)} entries for dim {c.dim}")
    for i, row in enumerate(c.delta):
        for j, k, _ in row:
            if not (0 <= j < c.dim and 0 <= k < c.dim):
                return ValidationReport(False, "shape", i, message=f"coproduct of b{i} references index out of range")
    return ValidationReport(True)


def validate_coalgebra(c: Coalgebra) -> ValidationReport:
    """Check coassociativity and both counit laws basis element by basis element.

    Returns the first violation found, scanning indices in order and, per index,
    coassociativity before the left and right counit laws.
    """
    shape = _structure_ok(c)
    if not shape:
        return shape
    d = c.dim
    D = c.tensor
    eps = c.counit_vector
    for i in range(d):
        # (Delta (x) id) Delta b_i  vs  (id (x) Delta) Delta b_i
        left = np.einsum("jk,jab->abk", D[i], D)
        right = np.einsum("jk,kab->jab", D[i], D)
        if not np.array_equal(left, right):
            return ValidationReport(
                False, "coassociativity", i, left, right,
                f"coassociativity fails on basis element {i}",
            )
        e_i = c.basis_vector(i)
        lc = eps @ D[i]
        if not np.array_equal(lc, e_i):
            return ValidationReport(
                False, "left counit", i, lc, e_i,
                f"(eps (x) id) Delta fails on basis element {i}",
            )
        rc = D[i] @ eps
        if not np.array_equal(rc, e_i):
            return ValidationReport(
                False, "right counit", i, rc, e_i,
                f"(id (x) eps) Delta fails on basis element {i}",
            )
    return ValidationReport(True)


def validate_algebra(a: Algebra) -> ValidationReport:
    M = a.tensor
    # (b_i b_j) b_k vs b_i (b_j b_k)
    left = np.einsum("ijs,skt->ijkt", M, M)
    right = np.einsum("jks,ist->ijkt", M, M)
    if not np.array_equal(left, right):
        bad = tuple(int(x) for x in np.argwhere(left != right)[0][:3])
        return ValidationReport(False, "associativity", bad[0], message=f"associativity fails on {bad}")
    for i in range(a.dim):
        e = zeros(a.dim)
        e[i] = ONE
        if not np.array_equal(a.multiply(a.unit, e), e) or not np.array_equal(a.multiply(e, a.unit), e):
            return ValidationReport(False, "unit", i, message=f"unit law fails on basis element {i}")
    return ValidationReport(True)


def require_valid(c: Coalgebra) -> Coalgebra:
    report = validate_coalgebra(c)
    if not report:
        raise CoalgebraAxiomError(report)
    return c


def dual_algebra(c: Coalgebra) -> Algebra:
    """K = C*: (b_i* b_j*)(b_k) = (b_i* (x) b_j*)(Delta b_k), unit = counit."""
    return Algebra(c.dim, c.tensor.transpose(1, 2, 0).copy(), c.counit_vector.copy())


def opposite_coproduct(c: Coalgebra) -> Coalgebra:
    delta = tuple(tuple((k, j, x) for (j, k, x) in row) for row in c.delta)
    name = c.name[:-3] if c.name.endswith("^op") else (c.name + "^op" if c.name else "")
    return Coalgebra(c.dim, delta, c.counit, name)


def iterated_coproduct(c: Coalgebra, v, n: int) -> np.ndarray:
    """Delta^n(v) as an array of shape (d,)*(n+1); Delta^0 is the identity."""
    if n < 0:
        raise ValueError("iterated coproduct order must be >= 0")
    out = np.asarray(v, dtype=object)
    for _ in range(n):
        # expand the last slot
        out = np.tensordot(out, c.tensor, axes=([out.ndim - 1], [0]))
    return out


def is_cocommutative(c: Coalgebra) -> bool:
    return np.array_equal(c.tensor, c.tensor.transpose(0, 2, 1))


__all__ = [
    "Algebra",
    "Coalgebra",
    "CoalgebraAxiomError",
    "ValidationReport",
    "dual_algebra",
    "is_cocommutative",
    "is_zero",
    "iterated_coproduct",
    "opposite_coproduct",
    "require_valid",
    "validate_algebra",
    "validate_coalgebra",
    "ZERO",
]
