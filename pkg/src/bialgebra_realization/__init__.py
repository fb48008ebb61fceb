"""Exact computation with bialgebras of right-invariant operators on tensor coalgebras.

A realization is a pair of finite-dimensional coalgebras L and F with a linear
map x_t from L into E = F*.  Each l in L becomes an operator X(l) on T(F);
words in T(L) map to composites.  The package evaluates the duality pairing
between the two sides, and computes the relations of each order by two
independent routes, all over the rationals.
"""

from .coalgebra import (
    Algebra,
    Coalgebra,
    CoalgebraAxiomError,
    ValidationReport,
    dual_algebra,
    opposite_coproduct,
    validate_coalgebra,
)
from .instances import FIXTURES, InstanceGenerator, fix_g1, fix_m2, fix_p2g1
from .linalg import Q, Subspace, kernel, orthogonal_complement, rank, rational, rref
from .realization import (
    RealizationMap,
    RealizedBialgebra,
    RightInvariantOperator,
    apply_X,
    duality_check,
    pi_x,
    transpose_map,
)
from .relations import (
    RelationReport,
    coideal_check,
    compute_relations,
    relations_action_oracle,
    relations_in_subcoalgebra,
    relations_via_dual_gen,
    relations_via_minrep,
    smallest_subcoalgebra,
    subalgebra_closure,
)
from .tensor import DEFAULT_GUARD, GuardExceeded, TensorAlgebra, TensorCoalgebra, tau

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "apply_X",
    "Coalgebra",
    "CoalgebraAxiomError",
    "coideal_check",
    "compute_relations",
    "DEFAULT_GUARD",
    "dual_algebra",
    "duality_check",
    "fix_g1",
    "fix_m2",
    "fix_p2g1",
    "FIXTURES",
    "GuardExceeded",
    "InstanceGenerator",
    "kernel",
    "opposite_coproduct",
    "orthogonal_complement",
    "pi_x",
    "Q",
    "rank",
    "rational",
    "RealizationMap",
    "RealizedBialgebra",
    "RelationReport",
    "relations_action_oracle",
    "relations_in_subcoalgebra",
    "relations_via_dual_gen",
    "relations_via_minrep",
    "RightInvariantOperator",
    "rref",
    "smallest_subcoalgebra",
    "subalgebra_closure",
    "Subspace",
    "tau",
    "TensorAlgebra",
    "TensorCoalgebra",
    "transpose_map",
    "validate_coalgebra",
    "ValidationReport",
]
