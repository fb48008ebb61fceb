"""Realized bialgebras: the operators X(l) on T(F), the morphism pi_x and duality.

Data: coalgebras L = K* and F = E*, and a linear map x_t: L -> E stored as a
dim(E) x dim(L) matrix.  x(l) is the transpose of left multiplication by
x_t(l) on E, i.e. x(l)(f) = sum f'(x_t(l)) f''.  On a word f_1...f_n the
extension X(l) acts letter-wise along Delta^{n-1}(l).

Right-invariant operators on T_N(F) are stored by their form omega = eps o X.
The operator itself is (omega (x) id) o Delta, rebuilt per degree on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .coalgebra import Coalgebra, dual_algebra, iterated_coproduct, require_valid
from .linalg import ONE, as_matrix, format_rational, rational, zeros
from .tensor import (
    DEFAULT_GUARD,
    DualElement,
    GradedElement,
    TensorCoalgebra,
    counit_word,
    slotwise,
    tau,
)


class RealizationMap:
    """x_t: L -> E, column j holding the E-coordinates of x_t(l_j)."""

    def __init__(self, L: Coalgebra, F: Coalgebra, xt, *, validate: bool = True):
        xt = np.asarray(xt, dtype=object)
        if xt.ndim != 2 or xt.shape != (F.dim, L.dim):
            raise ValueError(
                f"x_t shape {getattr(xt, 'shape', None)} does not match dim E x dim L = ({F.dim}, {L.dim})"
            )
        if validate:
            require_valid(L)
            require_valid(F)
        self.L = L
        self.F = F
        self.xt = xt
        self.K = dual_algebra(L)
        self.E = dual_algebra(F)
        self._blocks: dict[tuple[int, int], np.ndarray] = {}
        self._spaces: dict[tuple[str, int], object] = {}

    def __repr__(self) -> str:
        return f"RealizationMap(dim L={self.L.dim}, dim F={self.F.dim})"

    @property
    def w(self) -> np.ndarray:
        """The element of K (x) E pairing as <l_j (x) f_i, w> = xt[i][j], shape (dim K, dim E)."""
        return self.xt.T.copy()

    def source(self, degree: int, guard: int = DEFAULT_GUARD) -> TensorCoalgebra:
        return self._space("L", degree, guard)

    def target(self, degree: int, guard: int = DEFAULT_GUARD) -> TensorCoalgebra:
        return self._space("F", degree, guard)

    def _space(self, side: str, degree: int, guard: int) -> TensorCoalgebra:
        key = (side, degree, guard)
        if key not in self._spaces:
            self._spaces[key] = TensorCoalgebra(self.L if side == "L" else self.F, degree, guard)
        return self._spaces[key]

    @cached_property
    def _x_table(self) -> np.ndarray:
        return np.einsum("icb,ca->abi", self.F.tensor, self.xt)

    def x_table(self) -> np.ndarray:
        """x_table[a, b, i]: coefficient of f_b in x(l_a)(f_i)."""
        return self._x_table

    def x_matrix(self, l) -> np.ndarray:
        """Matrix of x(l) on F (columns are images of basis vectors)."""
        return np.tensordot(np.asarray(l, dtype=object), self.x_table(), axes=([0], [0]))

    def X_matrix(self, l, n: int) -> np.ndarray:
        """Matrix of X(l) on (x)^n F, from the closed form (x)^n x along Delta^{n-1}(l)."""
        l = np.asarray(l, dtype=object)
        if n == 0:
            return np.array([[l @ self.L.counit_vector]], dtype=object)
        return slotwise(iterated_coproduct(self.L, l, n - 1), n, self.x_table())

    def X_basis_matrix(self, a: int, n: int) -> np.ndarray:
        key = (a, n)
        if key not in self._blocks:
            self._blocks[key] = self.X_matrix(self.L.basis_vector(a), n)
        return self._blocks[key]


def transpose_map(r: RealizationMap) -> RealizationMap:
    """y_t: F -> K with <l, y_t(f)> = <f, x_t(l)>; swaps (L, K) with (F, E)."""
    return RealizationMap(r.F, r.L, r.xt.T.copy(), validate=False)


@dataclass(eq=False)
class RightInvariantOperator:
    """A right-invariant operator on T_N(C), held as its form in T_N(C*)."""

    space: TensorCoalgebra
    form: DualElement

    @property
    def max_degree(self) -> int:
        return self.space.max_degree

    def _table(self) -> np.ndarray:
        # table[a, b, i] = D[i, a, b]
        return self.space.coalgebra.tensor.transpose(1, 2, 0)

    def matrix(self, n: int) -> np.ndarray:
        """(omega (x) id) o Delta on degree n; column i is the image of word i."""
        return slotwise(self.form.degree_part(n), n, self._table())

    def apply(self, v: GradedElement) -> GradedElement:
        if v.space.dim != self.space.dim:
            raise ValueError("operator and element live on different coalgebras")
        if v.max_degree > self.max_degree:
            raise ValueError("element degree exceeds the operator's carrier degree")
        out = zeros(v.space.size)
        for n in range(v.max_degree + 1):
            part = v.degree_part(n)
            if np.any(part != 0):
                out[v.space.block(n)] = self.matrix(n) @ part
        return GradedElement(v.space, out)

    def compose(self, other: "RightInvariantOperator") -> "RightInvariantOperator":
        """self o other, via per-degree matrices: eps (A B) = (eps A) B."""
        if not other.space.compatible(self.space):
            raise ValueError("operators act on different spaces")
        out = zeros(self.space.size)
        for n in range(self.max_degree + 1):
            out[self.space.block(n)] = self.form.degree_part(n) @ other.matrix(n)
        return RightInvariantOperator(self.space, DualElement(self.form.space, out))

    def is_zero(self) -> bool:
        return self.form.is_zero()


def identity_operator(space: TensorCoalgebra) -> RightInvariantOperator:
    return RightInvariantOperator(space, space.dual.unit())


def operator_from_matrices(space: TensorCoalgebra, blocks) -> RightInvariantOperator:
    """Extract the form eps o X from explicit per-degree matrices of X."""
    eps = space.counit_vector
    out = zeros(space.size)
    for n, m in enumerate(blocks):
        out[space.block(n)] = eps[space.block(n)] @ m
    return RightInvariantOperator(space, DualElement(space.dual, out))


def apply_X(r: RealizationMap, l, v: GradedElement) -> GradedElement:
    """X(l)(v) for l in L and v in T_N(F); degree-preserving."""
    l = np.asarray(l, dtype=object)
    out = zeros(v.space.size)
    for n in range(v.max_degree + 1):
        part = v.degree_part(n)
        if np.any(part != 0):
            out[v.space.block(n)] = r.X_matrix(l, n) @ part
    return GradedElement(v.space, out)


def word_forms(r: RealizationMap, words, n: int) -> dict[tuple[int, ...], np.ndarray]:
    """eps_n X(l_1) ... X(l_k) restricted to degree n, for every word and its prefixes."""
    eps = np.array([ONE], dtype=object)
    for _ in range(n):
        eps = np.multiply.outer(eps, r.F.counit_vector).ravel()
    memo: dict[tuple[int, ...], np.ndarray] = {(): eps}
    for word in words:
        word = tuple(word)
        k = len(word)
        j = k
        while word[:j] not in memo:
            j -= 1
        vec = memo[word[:j]]
        for t in range(j, k):
            vec = vec @ r.X_basis_matrix(word[t], n)
            memo[word[: t + 1]] = vec
    return memo


def pi_x(r: RealizationMap, w: GradedElement, N: int, guard: int = DEFAULT_GUARD) -> RightInvariantOperator:
    """pi_x(w) on T_N(F): words l_1...l_p go to X(l_1) o ... o X(l_p)."""
    if w.space.dim != r.L.dim:
        raise ValueError("w must be an element of T(L)")
    space = r.target(N, guard)
    terms = w.coefficients
    out = zeros(space.size)
    for n in range(N + 1):
        forms = word_forms(r, terms.keys(), n)
        acc = zeros(r.F.dim**n)
        for word, c in terms.items():
            acc = acc + c * forms[word]
        out[space.block(n)] = acc
    return RightInvariantOperator(space, DualElement(space.dual, out))


def op_pairing(A: RightInvariantOperator, c: GradedElement):
    """<A, c> = eps(A(c))."""
    return counit_word(A.apply(c))


def xt_component(r: RealizationMap, l, n: int) -> np.ndarray:
    """(x)^n x_t along Delta^{n-1}(l), in (x)^n E; degree 0 gives eps_L(l)."""
    l = np.asarray(l, dtype=object)
    if n == 0:
        return np.array([l @ r.L.counit_vector], dtype=object)
    return slotwise(iterated_coproduct(r.L, l, n - 1), n, r.xt.T)


@dataclass
class DualityReport:
    lhs: object
    rhs: object
    equal: bool

    def to_dict(self) -> dict:
        return {"lhs": format_rational(self.lhs), "rhs": format_rational(self.rhs), "equal": self.equal}


def duality_check(r: RealizationMap, w: GradedElement, v: GradedElement, guard: int = DEFAULT_GUARD) -> DualityReport:
    """<pi_x(w), v> against <pi_y(tau v), tau w>, each side from its own realization."""
    lhs = op_pairing(pi_x(r, w, v.max_degree, guard), v)
    rt = transpose_map(r)
    rhs = op_pairing(pi_x(rt, tau(v), w.max_degree, guard), tau(w))
    return DualityReport(rational(lhs), rational(rhs), bool(lhs == rhs))


class RealizedBialgebra:
    """Handle on U_x: images pi_x(w) and the dimension of pi_x(T_m(L))."""

    def __init__(self, r: RealizationMap, max_degree: int, guard: int = DEFAULT_GUARD):
        self.r = r
        self.max_degree = max_degree
        self.guard = guard

    def generator(self, l) -> RightInvariantOperator:
        sp = self.r.source(1, self.guard)
        coeffs = zeros(sp.size)
        coeffs[sp.block(1)] = np.asarray(l, dtype=object)
        return self.image(GradedElement(sp, coeffs))

    def image(self, w: GradedElement) -> RightInvariantOperator:
        return pi_x(self.r, w, self.max_degree, self.guard)

    def unit(self) -> RightInvariantOperator:
        return identity_operator(self.r.target(self.max_degree, self.guard))

    def image_dimension(self, m: int) -> int:
        from .relations import relations_via_dual_gen

        R = relations_via_dual_gen(self.r, m, guard=self.guard)
        return self.r.source(m, self.guard).size - R.dim


def realization_from_rows(L: Coalgebra, F: Coalgebra, rows) -> RealizationMap:
    return RealizationMap(L, F, as_matrix(rows, L.dim))


__all__ = [
    "DualityReport",
    "RealizationMap",
    "RealizedBialgebra",
    "RightInvariantOperator",
    "apply_X",
    "duality_check",
    "identity_operator",
    "op_pairing",
    "operator_from_matrices",
    "pi_x",
    "realization_from_rows",
    "transpose_map",
    "word_forms",
    "xt_component",
]
