"""Truncated tensor coalgebras T_N(C) and truncated dual algebras T_N(K).

Words of length 0..N over a d-letter alphabet get one flat coordinate each:
all words of degree 0 first (the empty word), then degree 1, and so on, each
degree block in lexicographic (mixed-radix) order.  T_N(C) and T_N(C*) share
this order, so the canonical pairing is a plain dot product and subspaces of
either side can be compared or complemented directly.

The word coproduct never mixes degrees, and neither does the dual product, so
all heavy work happens one degree block (a d**n-dimensional space) at a time.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .coalgebra import Algebra, Coalgebra, dual_algebra
from .linalg import ONE, ZERO, as_vector, format_rational, rational, zeros

DEFAULT_GUARD = 20000


class GuardExceeded(ValueError):
    """A graded space would exceed the configured coordinate limit."""


def slotwise(a: np.ndarray, n: int, table: np.ndarray) -> np.ndarray:
    """Contract every one of the ``n`` slots of ``a`` with ``table[i, ...]``.

    ``a`` is a degree-n coefficient block (any shape with d**n entries) and
    ``table`` has shape (d, p) or (d, p, q).  The result has shape (p**n,) or
    (p**n, q**n): for the 3-axis case,

        out[j1..jn, k1..kn] = sum_i a[i1..in] * prod_s table[i_s, j_s, k_s].
    """
    d = table.shape[0]
    x = np.asarray(a, dtype=object).reshape((d,) * n)
    for _ in range(n):
        x = np.tensordot(x, table, axes=([0], [0]))
    tail = table.shape[1:]
    if len(tail) == 1:
        return x.reshape(tail[0] ** n)
    p, q = tail
    if n:
        x = x.transpose(list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2)))
    return x.reshape(p**n, q**n)


class WordSpace:
    """Flat coordinates for words of length <= max_degree over ``dim`` letters."""

    def __init__(self, dim: int, max_degree: int, guard: int = DEFAULT_GUARD):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if dim < 1:
            raise ValueError("alphabet must have at least one letter")
        self.dim = dim
        self.max_degree = max_degree
        self.guard = guard
        offsets = [0]
        for n in range(max_degree + 1):
            offsets.append(offsets[-1] + dim**n)
            if offsets[-1] > guard:
                raise GuardExceeded(
                    f"T_{max_degree} over {dim} letters needs more than {guard} coordinates"
                )
        self.offsets = tuple(offsets)
        self.size = offsets[-1]

    def block(self, n: int) -> slice:
        return slice(self.offsets[n], self.offsets[n + 1])

    def block_dim(self, n: int) -> int:
        return self.dim**n

    def index(self, word: Sequence[int]) -> int:
        n = len(word)
        if n > self.max_degree:
            raise ValueError(f"word {tuple(word)} longer than max degree {self.max_degree}")
        idx = 0
        for letter in word:
            if not 0 <= letter < self.dim:
                raise ValueError(f"letter {letter} out of range for dim {self.dim}")
            idx = idx * self.dim + int(letter)
        return self.offsets[n] + idx

    def word(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise IndexError(index)
        n = 0
        while index >= self.offsets[n + 1]:
            n += 1
        rel = index - self.offsets[n]
        letters = []
        for _ in range(n):
            rel, r = divmod(rel, self.dim)
            letters.append(r)
        return tuple(reversed(letters))

    def words(self) -> list[tuple[int, ...]]:
        return [self.word(i) for i in range(self.size)]

    def degree_of(self, index: int) -> int:
        return len(self.word(index))

    def compatible(self, other: "WordSpace") -> bool:
        return self.dim == other.dim and self.max_degree == other.max_degree

    def embed(self, coeffs: np.ndarray, target: "WordSpace") -> np.ndarray:
        """Canonical inclusion (or truncation) into another word space over the same letters."""
        if target.dim != self.dim:
            raise ValueError("alphabets differ")
        out = zeros(target.size)
        k = min(self.size, target.size)
        out[:k] = coeffs[:k]
        return out

    def tau_permutation(self) -> np.ndarray:
        perm = np.empty(self.size, dtype=np.int64)
        for n in range(self.max_degree + 1):
            d = self.dim
            idx = np.arange(d**n).reshape((d,) * n) if n else np.arange(1)
            rev = idx.transpose(list(reversed(range(n)))).ravel() if n else idx
            perm[self.block(n)] = self.offsets[n] + rev
        return perm


class TensorCoalgebra(WordSpace):
    """T_N(C) with the letter-wise coproduct and multiplicative counit."""

    def __init__(self, coalgebra: Coalgebra, max_degree: int, guard: int = DEFAULT_GUARD):
        super().__init__(coalgebra.dim, max_degree, guard)
        self.coalgebra = coalgebra

    @cached_property
    def dual(self) -> "TensorAlgebra":
        return TensorAlgebra(dual_algebra(self.coalgebra), self.max_degree, self.guard)

    @cached_property
    def counit_vector(self) -> np.ndarray:
        eps = self.coalgebra.counit_vector
        out = zeros(self.size)
        block = np.array([ONE], dtype=object)
        out[self.block(0)] = block
        for n in range(1, self.max_degree + 1):
            block = np.multiply.outer(block, eps).ravel()
            out[self.block(n)] = block
        return out

    def coproduct_block(self, coeffs: np.ndarray, n: int) -> np.ndarray:
        """Delta of a degree-n block as a d**n x d**n matrix (left word, right word)."""
        return slotwise(coeffs, n, self.coalgebra.tensor)

    def coproduct_blocks(self, coeffs: np.ndarray) -> list[np.ndarray]:
        return [self.coproduct_block(coeffs[self.block(n)], n) for n in range(self.max_degree + 1)]

    def element(self, terms: Mapping[Sequence[int], object] | Iterable = ()) -> "GradedElement":
        return GradedElement.from_terms(self, terms)

    def zero(self) -> "GradedElement":
        return GradedElement(self, zeros(self.size))

    def unit(self) -> "GradedElement":
        return self.element({(): 1})


class TensorAlgebra(WordSpace):
    """T_N(K), the truncation of prod_n (x)^n K with the degree-wise product."""

    def __init__(self, algebra: Algebra, max_degree: int, guard: int = DEFAULT_GUARD):
        super().__init__(algebra.dim, max_degree, guard)
        self.algebra = algebra

    @cached_property
    def unit_vector(self) -> np.ndarray:
        out = zeros(self.size)
        block = np.array([ONE], dtype=object)
        out[self.block(0)] = block
        for n in range(1, self.max_degree + 1):
            block = np.multiply.outer(block, self.algebra.unit).ravel()
            out[self.block(n)] = block
        return out

    @cached_property
    def _right_table(self) -> np.ndarray:
        # table[j, i, k] = M[i, j, k]: contract the right factor's slots first
        return self.algebra.tensor.transpose(1, 0, 2).copy()

    def right_multiplication(self, b: np.ndarray) -> list[np.ndarray]:
        """Per-degree matrices R_n with (a b)_n = a_n @ R_n."""
        return [slotwise(b[self.block(n)], n, self._right_table) for n in range(self.max_degree + 1)]

    def product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = zeros(self.size)
        for n, rb in enumerate(self.right_multiplication(b)):
            out[self.block(n)] = a[self.block(n)] @ rb if rb.size else ZERO
        return out

    def element(self, terms=()) -> "DualElement":
        return DualElement.from_terms(self, terms)

    def unit(self) -> "DualElement":
        return DualElement(self, self.unit_vector.copy())

    def zero(self) -> "DualElement":
        return DualElement(self, zeros(self.size))


class _Graded:
    __slots__ = ("space", "coeffs")

    def __init__(self, space: WordSpace, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.shape != (space.size,):
            raise ValueError(f"expected {space.size} coefficients, got shape {coeffs.shape}")
        self.space = space
        self.coeffs = coeffs

    @classmethod
    def from_terms(cls, space, terms):
        v = zeros(space.size)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, c in items:
            v[space.index(tuple(word))] += rational(c)
        return cls(space, v)

    @property
    def max_degree(self) -> int:
        return self.space.max_degree

    @property
    def coefficients(self) -> dict[tuple[int, ...], object]:
        """Nonzero coefficients keyed by word; the zero element maps to {}."""
        return {self.space.word(int(i)): self.coeffs[i] for i in np.flatnonzero(self.coeffs != 0)}

    def degree_part(self, n: int) -> np.ndarray:
        return self.coeffs[self.space.block(n)]

    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs != 0)
        return -1 if nz.size == 0 else self.space.degree_of(int(nz[-1]))

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def _same(self, other) -> None:
        if type(other) is not type(self) or other.space is not self.space and not (
            other.space.compatible(self.space)
        ):
            raise ValueError("elements live in different graded spaces")

    def __add__(self, other):
        self._same(other)
        return type(self)(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._same(other)
        return type(self)(self.space, self.coeffs - other.coeffs)

    def __neg__(self):
        return type(self)(self.space, -self.coeffs)

    def __rmul__(self, scalar):
        return type(self)(self.space, self.coeffs * rational(scalar))

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.space.compatible(other.space) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        terms = self.coefficients
        if not terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{format_rational(c)}*{list(w)}" for w, c in terms.items())
        return f"{type(self).__name__}({body})"

    def to_terms(self) -> list[dict]:
        return [{"word": list(w), "c": format_rational(c)} for w, c in self.coefficients.items()]


class GradedElement(_Graded):
    """An element of T_N(C)."""

    __slots__ = ()

    @property
    def coalgebra(self) -> Coalgebra:
        return self.space.coalgebra


class DualElement(_Graded):
    """An element of T_N(K) = prod_{n<=N} (x)^n K."""

    __slots__ = ()

    @property
    def algebra(self) -> Algebra:
        return self.space.algebra


def word_coproduct(v: GradedElement) -> list[np.ndarray]:
    """Delta(v) in T_N(C) (x) T_N(C), one d**n x d**n block per degree n.

    Block n holds the coefficients of (left word) (x) (right word) for words
    of degree n; off-diagonal degree pairs are always zero.
    """
    return v.space.coproduct_blocks(v.coeffs)


def coproduct_matrix(v: GradedElement) -> np.ndarray:
    """Delta(v) as one dense size x size matrix over the flat word coordinates."""
    sp = v.space
    out = zeros(sp.size, sp.size)
    for n, blk in enumerate(word_coproduct(v)):
        s = sp.block(n)
        out[s, s] = blk
    return out


def counit_word(v: GradedElement):
    return v.coeffs @ v.space.counit_vector


def tau(v: _Graded) -> _Graded:
    """Reverse every word; coefficients are carried along unchanged."""
    perm = v.space.tau_permutation()
    out = zeros(v.space.size)
    out[perm] = v.coeffs
    return type(v)(v.space, out)


def concat(a: GradedElement, b: GradedElement) -> GradedElement:
    """Concatenation product in T(C), truncated at the common max degree."""
    a._same(b)
    sp = a.space
    out = zeros(sp.size)
    for n in range(sp.max_degree + 1):
        an = a.degree_part(n)
        if not np.any(an != 0):
            continue
        for k in range(sp.max_degree - n + 1):
            bk = b.degree_part(k)
            if not np.any(bk != 0):
                continue
            out[sp.block(n + k)] += np.multiply.outer(an, bk).ravel()
    return GradedElement(sp, out)


def dual_product(a: DualElement, b: DualElement) -> DualElement:
    a._same(b)
    return DualElement(a.space, a.space.product(a.coeffs, b.coeffs))


def dual_pairing(a: DualElement, v: GradedElement):
    """<a, v> with <word*, word'> = delta; pairs over the common truncation."""
    if a.space.dim != v.space.dim:
        raise ValueError("dual element and element use different alphabets")
    k = min(a.space.size, v.space.size)
    return a.coeffs[:k] @ v.coeffs[:k]


def unit_form(space: TensorAlgebra) -> DualElement:
    return space.unit()


def element_from_vector(space: WordSpace, vec) -> _Graded:
    cls = GradedElement if isinstance(space, TensorCoalgebra) else DualElement
    return cls(space, as_vector(vec) if not isinstance(vec, np.ndarray) else vec)
