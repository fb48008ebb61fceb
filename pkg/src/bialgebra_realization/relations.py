"""Relation spaces R_m(U_x) = ker(pi_x) inside T_m(L), by two independent routes.

Minimal-representation route: take the kernel R1 of the action of T_m(L) on
F alone, its orthogonal W_m in T_m(K), the unital subalgebra B(W_m) it
generates, and return the orthogonal of B(W_m).

Dual-generator route: the unital subalgebra B^m of T_m(K) generated by the
truncated elements Y_{t,op}(f) = sum_n (x)^n y_t o Delta_{F,op}^{n-1}(f) for f
in a basis of F; R_m is its orthogonal.

The two routes share nothing beyond the linear-algebra kernel and the
subalgebra closure, so their agreement is a genuine cross-check.  A third,
brute-force check (``relations_action_oracle``) evaluates the operators
pi_x(r) directly on T_N(F) for N beyond m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coalgebra import iterated_coproduct, opposite_coproduct
from .linalg import ONE, Subspace, format_rational, is_zero, kernel, zeros
from .realization import RealizationMap, word_forms
from .tensor import (
    DEFAULT_GUARD,
    DualElement,
    GradedElement,
    TensorAlgebra,
    TensorCoalgebra,
    slotwise,
)


class NotARelation(ValueError):
    """The element handed to ``relations_in_subcoalgebra`` is not in R_m."""


def _check_order(m: int) -> None:
    if m < 0:
        raise ValueError("relation order must be >= 0")


def minrep_kernel(r: RealizationMap, m: int, *, include_unit_slot: bool = False,
                  guard: int = DEFAULT_GUARD) -> Subspace:
    """R_m^1: kernel of T_m(L) -> End(F), l_1...l_n -> x(l_1) o ... o x(l_n), c -> c id_F.

    With ``include_unit_slot`` the action on the scalar summand of C + F is
    adjoined as well (one extra row carrying eps_L), i.e. the kernel is
    intersected with ker eps_L.
    """
    _check_order(m)
    space = r.source(m, guard)
    dF = r.F.dim
    cols = [None] * space.size
    mats = {(): np.asarray(np.eye(dF, dtype=int), dtype=object) * ONE}
    for idx in range(space.size):
        word = space.word(idx)
        if word not in mats:
            mats[word] = mats[word[:-1]] @ r.x_matrix(r.L.basis_vector(word[-1]))
        cols[idx] = mats[word].ravel()
    action = np.stack(cols, axis=1)
    if include_unit_slot:
        action = np.vstack([action, space.counit_vector[None, :]])
    return kernel(action)


def subalgebra_closure(gens, ambient: TensorAlgebra) -> Subspace:
    """Smallest subspace of T_m(K) containing gens and the unit, closed under products.

    The algebra generated by G and 1 is spanned by words in G, so it is the
    fixed point of S <- S + S.G.  Each round multiplies only the vectors added
    in the previous round by the generators.
    """
    vecs = [ambient.unit_vector]
    for g in gens:
        vecs.append(g.coeffs if isinstance(g, DualElement) else np.asarray(g, dtype=object))
    S = Subspace.span(np.vstack(vecs), ambient.size)
    G = S.basis
    right = [ambient.right_multiplication(g) for g in G]
    frontier = S.basis
    while frontier.shape[0] and S.dim < ambient.size:
        added = []
        for rb in right:
            prod = zeros(frontier.shape[0], ambient.size)
            for n, blk in enumerate(rb):
                s = ambient.block(n)
                prod[:, s] = frontier[:, s] @ blk
            new = Subspace.span(S.residual(prod), ambient.size)
            if new.dim:
                S = S.sum(new)
                added.append(new.basis)
                if S.dim == ambient.size:
                    break
        frontier = np.vstack(added) if added else zeros(0, ambient.size)
    return S


def is_subalgebra(S: Subspace, ambient: TensorAlgebra) -> bool:
    if not S.contains(ambient.unit_vector):
        return False
    for b in S.basis:
        rb = ambient.right_multiplication(b)
        prod = zeros(S.dim, ambient.size)
        for n, blk in enumerate(rb):
            s = ambient.block(n)
            prod[:, s] = S.basis[:, s] @ blk
        if S.dim and not is_zero(S.residual(prod)):
            return False
    return True


@dataclass
class MinrepTrace:
    R1: Subspace
    W: Subspace
    B: Subspace
    relations: Subspace


def minrep_trace(r: RealizationMap, m: int, *, include_unit_slot: bool = False,
                 guard: int = DEFAULT_GUARD) -> MinrepTrace:
    R1 = minrep_kernel(r, m, include_unit_slot=include_unit_slot, guard=guard)
    W = R1.orthogonal_complement()
    B = subalgebra_closure(list(W.basis), r.source(m, guard).dual)
    return MinrepTrace(R1, W, B, B.orthogonal_complement())


def relations_via_minrep(r: RealizationMap, m: int, *, include_unit_slot: bool = False,
                         guard: int = DEFAULT_GUARD) -> Subspace:
    return minrep_trace(r, m, include_unit_slot=include_unit_slot, guard=guard).relations


def dual_generator(r: RealizationMap, f: int, m: int, guard: int = DEFAULT_GUARD) -> DualElement:
    """Y_{t,op}^m(f) in T_m(K), built on the opposite coproduct of F."""
    _check_order(m)
    Fop = opposite_coproduct(r.F)
    yt = r.xt  # yt[b, a]: coefficient of k_a in y_t(f_b); used as a (dim F, dim K) table
    ambient = r.source(m, guard).dual
    out = zeros(ambient.size)
    e = r.F.basis_vector(f)
    out[ambient.block(0)] = np.array([e @ r.F.counit_vector], dtype=object)
    for n in range(1, m + 1):
        out[ambient.block(n)] = slotwise(iterated_coproduct(Fop, e, n - 1), n, yt)
    return DualElement(ambient, out)


def dual_generator_closure(r: RealizationMap, m: int, guard: int = DEFAULT_GUARD) -> Subspace:
    ambient = r.source(m, guard).dual
    gens = [dual_generator(r, f, m, guard) for f in range(r.F.dim)]
    return subalgebra_closure(gens, ambient)


def relations_via_dual_gen(r: RealizationMap, m: int, guard: int = DEFAULT_GUARD) -> Subspace:
    return dual_generator_closure(r, m, guard).orthogonal_complement()


@dataclass
class CheckResult:
    ok: bool
    witness: np.ndarray | None = None
    reason: str = ""
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def coideal_check(space: TensorCoalgebra, R: Subspace) -> CheckResult:
    """eps(R) = 0 and (q (x) q) Delta(r) = 0 for q: T_m(L) -> T_m(L)/R, basis vector by basis vector."""
    if R.ambient_dim != space.size:
        raise ValueError("subspace does not live in this tensor coalgebra")
    eps = space.counit_vector
    q = R.quotient_map()
    for r in R.basis:
        if r @ eps != 0:
            return CheckResult(False, r, "counit does not vanish", {"counit": r @ eps})
        if q.shape[0] == 0:
            continue
        acc = zeros(q.shape[0], q.shape[0])
        for n in range(space.max_degree + 1):
            part = r[space.block(n)]
            if not np.any(part != 0):
                continue
            qn = q[:, space.block(n)]
            acc = acc + qn @ space.coproduct_block(part, n) @ qn.T
        if not is_zero(acc):
            return CheckResult(False, r, "coproduct leaves the coideal")
    return CheckResult(True)


def is_subcoalgebra(space: TensorCoalgebra, C: Subspace) -> bool:
    """Delta(C) inside C (x) C."""
    q = C.quotient_map()
    if q.shape[0] == 0:
        return True
    for c in C.basis:
        for n in range(space.max_degree + 1):
            part = c[space.block(n)]
            if not np.any(part != 0):
                continue
            qn = q[:, space.block(n)]
            blk = space.coproduct_block(part, n)
            if not is_zero(qn @ blk) or not is_zero(blk @ qn.T):
                return False
    return True


def smallest_subcoalgebra(v: GradedElement) -> Subspace:
    """C_v, spanned by the slices (alpha (x) id (x) beta) Delta^2 v over dual basis words.

    Slices are taken in two steps, (id (x) beta) Delta of the left slices
    (alpha (x) id) Delta v, which is the same family by coassociativity.
    Degrees never mix, so each homogeneous component is handled on its own.
    """
    if v.is_zero():
        raise ValueError("smallest subcoalgebra of the zero element is undefined")
    space = v.space
    rows = []
    for n in range(space.max_degree + 1):
        part = v.degree_part(n)
        if not np.any(part != 0):
            continue
        dn = space.block_dim(n)
        left = Subspace.span(space.coproduct_block(part, n), dn)
        acc = Subspace.zero(dn)
        for s in left.basis:
            acc = acc.sum(Subspace.span(space.coproduct_block(s, n).T, dn))
            if acc.dim == dn:
                break
        block = zeros(acc.dim, space.size)
        block[:, space.block(n)] = acc.basis
        rows.append(block)
    return Subspace.span(np.vstack(rows), space.size)


def relations_in_subcoalgebra(r: RealizationMap, v: GradedElement, m: int,
                              R: Subspace | None = None, guard: int = DEFAULT_GUARD) -> Subspace:
    """R_m(U_x) intersected with C_v, for a relation v."""
    if R is None:
        R = relations_via_dual_gen(r, m, guard)
    if v.space.size != R.ambient_dim:
        raise ValueError("element and relation space differ in degree")
    if v.is_zero():
        raise NotARelation("the zero element has no smallest subcoalgebra")
    if not R.contains(v.coeffs):
        raise NotARelation("element is not a relation of this order")
    return R.intersection(smallest_subcoalgebra(v))


def action_forms(r: RealizationMap, m: int, n: int, guard: int = DEFAULT_GUARD) -> np.ndarray:
    """Rows eps_n o pi_x(word) on (x)^n F for every word of T_m(L), from explicit X-matrices."""
    space = r.source(m, guard)
    words = space.words()
    forms = word_forms(r, words, n)
    return np.stack([forms[w] for w in words])


def relations_action_oracle(r: RealizationMap, R: Subspace, m: int, N_check: int | None = None,
                            guard: int = DEFAULT_GUARD) -> CheckResult:
    """Every basis relation must have eps_L(r) = 0 and act as zero on T_N(F).

    pi_x(r) is computed by composing the closed-form matrices of X(l) degree by
    degree.  An operator in U_x is right-invariant, so it vanishes exactly when
    its row eps o pi_x(r) does; that row is what gets compared with zero.
    """
    if N_check is None:
        N_check = m + 2
    if N_check < m:
        raise ValueError("check degree must be at least the relation order")
    space = r.source(m, guard)
    r.target(N_check, guard)  # guard on the target side as well
    if R.dim == 0:
        return CheckResult(True)
    eps = space.counit_vector
    for b in R.basis:
        if b @ eps != 0:
            return CheckResult(False, b, "counit does not vanish", {"counit": b @ eps})
    for n in range(N_check + 1):
        acted = R.basis @ action_forms(r, m, n, guard)
        bad = np.flatnonzero(np.any(acted != 0, axis=1))
        if bad.size:
            i = int(bad[0])
            return CheckResult(False, R.basis[i], f"acts nonzero on degree {n}", {"degree": n})
    return CheckResult(True)


def coproduct_image_vanishes(r: RealizationMap, R: Subspace, m: int, N: int,
                             guard: int = DEFAULT_GUARD) -> CheckResult:
    """(pi_x (x) pi_x)(Delta_L r) = 0 on T_N(F) (x) T_N(F) for every basis relation."""
    space = r.source(m, guard)
    forms = [action_forms(r, m, n, guard) for n in range(N + 1)]
    for b in R.basis:
        for k in range(m + 1):
            part = b[space.block(k)]
            if not np.any(part != 0):
                continue
            blk = space.coproduct_block(part, k)
            s = space.block(k)
            for n1 in range(N + 1):
                for n2 in range(N + 1):
                    z = forms[n1][s].T @ blk @ forms[n2][s]
                    if not is_zero(z):
                        return CheckResult(False, b, f"nonzero on degrees ({n1}, {n2})")
    return CheckResult(True)


@dataclass
class RelationReport:
    order: int
    method: str
    relations: Subspace
    space: TensorCoalgebra
    dim_BW: int | None = None
    dim_Bm: int | None = None
    constructions_agree: bool | None = None
    coideal_verified: bool | None = None
    action_verified: bool | None = None
    check_degree: int | None = None
    counterexample: dict | None = None

    @property
    def dim(self) -> int:
        return self.relations.dim

    @property
    def ok(self) -> bool:
        flags = (self.constructions_agree, self.coideal_verified, self.action_verified)
        return all(f is not False for f in flags)

    def basis_elements(self) -> list[GradedElement]:
        return [GradedElement(self.space, b) for b in self.relations.basis]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "method": self.method,
            "dim_T": self.space.size,
            "dim_R": self.dim,
            "dim_B_W": self.dim_BW,
            "dim_B_m": self.dim_Bm,
            "relations": [e.to_terms() for e in self.basis_elements()],
            "flags": {
                "constructions_agree": self.constructions_agree,
                "coideal_verified": self.coideal_verified,
                "action_verified": self.action_verified,
            },
            "check_degree": self.check_degree,
            "counterexample": self.counterexample,
        }


def _witness_payload(space: TensorCoalgebra, res: CheckResult) -> dict:
    out = {"reason": res.reason}
    if res.witness is not None:
        out["witness"] = GradedElement(space, res.witness).to_terms()
    for k, v in res.detail.items():
        out[k] = format_rational(v) if not isinstance(v, (int, str)) else v
    return out


def compute_relations(r: RealizationMap, m: int, method: str = "both", N_check: int | None = None,
                      guard: int = DEFAULT_GUARD, include_unit_slot: bool = False) -> RelationReport:
    """Relations of order m with every cross-check the chosen method allows."""
    if method not in ("minrep", "dualgen", "both"):
        raise ValueError(f"unknown method {method!r}")
    space = r.source(m, guard)
    if N_check is None:
        N_check = m + 2
    report = RelationReport(m, method, Subspace.zero(space.size), space, check_degree=N_check)
    R_min = R_dual = None
    if method in ("minrep", "both"):
        trace = minrep_trace(r, m, include_unit_slot=include_unit_slot, guard=guard)
        R_min = trace.relations
        report.dim_BW = trace.B.dim
    if method in ("dualgen", "both"):
        B = dual_generator_closure(r, m, guard)
        R_dual = B.orthogonal_complement()
        report.dim_Bm = B.dim
    R = R_min if R_min is not None else R_dual
    report.relations = R
    if method == "both":
        report.constructions_agree = R_min == R_dual
        if not report.constructions_agree:
            diff = R_dual if not R_min.contains_subspace(R_dual) else R_min
            other = R_min if diff is R_dual else R_dual
            bad = next(b for b in diff.basis if not other.contains(b))
            report.counterexample = {
                "reason": "routes disagree",
                "witness": GradedElement(space, bad).to_terms(),
                "in": "dualgen" if diff is R_dual else "minrep",
            }
    co = coideal_check(space, R)
    report.coideal_verified = co.ok
    act = relations_action_oracle(r, R, m, N_check, guard)
    report.action_verified = act.ok
    if report.counterexample is None:
        if not co.ok:
            report.counterexample = _witness_payload(space, co)
        elif not act.ok:
            report.counterexample = _witness_payload(space, act)
    return report


__all__ = [
    "CheckResult",
    "MinrepTrace",
    "NotARelation",
    "RelationReport",
    "action_forms",
    "coideal_check",
    "compute_relations",
    "coproduct_image_vanishes",
    "dual_generator",
    "dual_generator_closure",
    "is_subalgebra",
    "is_subcoalgebra",
    "minrep_kernel",
    "minrep_trace",
    "relations_action_oracle",
    "relations_in_subcoalgebra",
    "relations_via_dual_gen",
    "relations_via_minrep",
    "smallest_subcoalgebra",
    "subalgebra_closure",
]
