"""Named fixtures, coalgebra templates and the seeded random instance generator.

Random structure constants almost never satisfy coassociativity, so random
coalgebras are assembled from templates that are valid by construction:
grouplike sums, primitive extensions of a grouplike, divided powers, matrix
and upper-triangular matrix coalgebras, their direct sums, and exact changes
of basis of any of these.
"""

from __future__ import annotations

import random

import numpy as np

from .coalgebra import Coalgebra, require_valid
from .linalg import Q, as_matrix, inverse, rank, zeros
from .realization import RealizationMap
from .tensor import GradedElement, TensorCoalgebra

NUMERATORS = range(-3, 4)
DENOMINATORS = (1, 2, 3)


def grouplike(d: int = 1) -> Coalgebra:
    return Coalgebra.from_terms(d, [[(i, i, 1)] for i in range(d)], [1] * d, f"grouplike{d}")


def primitive_extension(k: int = 1) -> Coalgebra:
    """Basis g, p_1..p_k with g grouplike and each p_i primitive over g."""
    delta = [[(0, 0, 1)]] + [[(i, 0, 1), (0, i, 1)] for i in range(1, k + 1)]
    return Coalgebra.from_terms(k + 1, delta, [1] + [0] * k, f"primitive{k}")


def divided_power(k: int) -> Coalgebra:
    """d_0..d_{k-1} with Delta d_n = sum_{i+j=n} d_i (x) d_j (dual of Q[t]/t^k)."""
    delta = [[(i, n - i, 1) for i in range(n + 1)] for n in range(k)]
    return Coalgebra.from_terms(k, delta, [1] + [0] * (k - 1), f"divided{k}")


def matrix_coalgebra(n: int = 2) -> Coalgebra:
    """Basis e_ij (index i*n + j), Delta e_ij = sum_k e_ik (x) e_kj."""
    delta = [[(i * n + k, k * n + j, 1) for k in range(n)] for i in range(n) for j in range(n)]
    counit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return Coalgebra.from_terms(n * n, delta, counit, f"matrix{n}")


def upper_triangular() -> Coalgebra:
    """e11, e12, e22 with Delta e12 = e11 (x) e12 + e12 (x) e22; not cocommutative."""
    delta = [[(0, 0, 1)], [(0, 1, 1), (1, 2, 1)], [(2, 2, 1)]]
    return Coalgebra.from_terms(3, delta, [1, 0, 1], "uppertri")


def direct_sum(a: Coalgebra, b: Coalgebra) -> Coalgebra:
    d = a.dim + b.dim
    t = zeros(d, d, d)
    t[: a.dim, : a.dim, : a.dim] = a.tensor
    t[a.dim :, a.dim :, a.dim :] = b.tensor
    name = f"{a.name}+{b.name}" if a.name and b.name else ""
    return Coalgebra.from_tensor(t, list(a.counit) + list(b.counit), name)


def change_basis(c: Coalgebra, A: np.ndarray) -> Coalgebra:
    """Re-express c in the basis c_i = sum_j A[j, i] b_j."""
    B = inverse(A)
    t = np.einsum("ji,jab,sa,tb->ist", A, c.tensor, B, B)
    counit = c.counit_vector @ A
    return Coalgebra.from_tensor(t, list(counit), f"{c.name}*P" if c.name else "")


def fix_g1(lam=1) -> RealizationMap:
    g = grouplike(1)
    return RealizationMap(g, g, as_matrix([[lam]]))


def fix_p2g1() -> RealizationMap:
    return RealizationMap(primitive_extension(1), grouplike(1), as_matrix([[1, 0]]))


def fix_m2() -> RealizationMap:
    m = matrix_coalgebra(2)
    return RealizationMap(m, m, as_matrix(np.eye(4, dtype=int).tolist()))


FIXTURES = {"G1": fix_g1, "P2G1": fix_p2g1, "M2": fix_m2}


class InstanceGenerator:
    """Seeded source of random rationals, coalgebras, realization maps and elements."""

    def __init__(self, seed: int, basis_change: float = 0.3):
        self.rng = random.Random(seed)
        self.basis_change = basis_change

    def rational(self) -> Q:
        return Q(self.rng.choice(NUMERATORS), self.rng.choice(DENOMINATORS))

    def nonzero_rational(self) -> Q:
        while True:
            q = self.rational()
            if q:
                return q

    def matrix(self, rows: int, cols: int) -> np.ndarray:
        m = zeros(rows, cols)
        for i in range(rows):
            for j in range(cols):
                m[i, j] = self.rational()
        return m

    def invertible(self, n: int) -> np.ndarray:
        while True:
            m = self.matrix(n, n)
            if rank(m) == n:
                return m

    def _template(self, max_dim: int) -> Coalgebra:
        choices = [lambda: grouplike(self.rng.randint(1, max_dim))]
        if max_dim >= 2:
            choices.append(lambda: primitive_extension(self.rng.randint(1, max_dim - 1)))
            choices.append(lambda: divided_power(self.rng.randint(2, max_dim)))
        if max_dim >= 3:
            choices.append(upper_triangular)
        if max_dim >= 4:
            choices.append(lambda: matrix_coalgebra(2))
        return self.rng.choice(choices)()

    def coalgebra(self, max_dim: int) -> Coalgebra:
        c = self._template(max_dim)
        if c.dim < max_dim and self.rng.random() < 0.3:
            c = direct_sum(c, self._template(max_dim - c.dim))
        if c.dim > 1 and self.rng.random() < self.basis_change:
            c = change_basis(c, self.invertible(c.dim))
        return require_valid(c)

    def realization(self, max_dim_L: int, max_dim_F: int) -> RealizationMap:
        L = self.coalgebra(max_dim_L)
        F = self.coalgebra(max_dim_F)
        return RealizationMap(L, F, self.matrix(F.dim, L.dim))

    def word(self, dim: int, max_len: int) -> tuple[int, ...]:
        n = self.rng.randint(0, max_len)
        return tuple(self.rng.randrange(dim) for _ in range(n))

    def element(self, space: TensorCoalgebra, max_terms: int = 3, degree: int | None = None) -> GradedElement:
        """A sparse random element; ``degree`` forces every word to that exact length."""
        terms = {}
        for _ in range(self.rng.randint(1, max_terms)):
            if degree is None:
                w = self.word(space.dim, space.max_degree)
            else:
                w = tuple(self.rng.randrange(space.dim) for _ in range(degree))
            terms[w] = terms.get(w, 0) + self.nonzero_rational()
        return space.element(terms)

    def dense_vector(self, n: int) -> np.ndarray:
        v = zeros(n)
        for i in range(n):
            v[i] = self.rational()
        return v


__all__ = [
    "FIXTURES",
    "InstanceGenerator",
    "change_basis",
    "direct_sum",
    "divided_power",
    "fix_g1",
    "fix_m2",
    "fix_p2g1",
    "grouplike",
    "matrix_coalgebra",
    "primitive_extension",
    "upper_triangular",
]
