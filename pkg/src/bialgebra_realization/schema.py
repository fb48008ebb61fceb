"""JSON file formats: coalgebras, realization instances and graded elements.

All rationals travel as ``"p/q"`` strings (``"p"`` for integers).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .coalgebra import Coalgebra, validate_coalgebra
from .linalg import format_rational, rational, zeros
from .realization import RealizationMap
from .tensor import DEFAULT_GUARD, DualElement, GradedElement, TensorAlgebra, TensorCoalgebra

SPACES = ("T(L)", "T(F)", "T(K)", "T(E)")


class SchemaError(ValueError):
    """Input does not follow the documented file schema."""


def _rat(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(f"{where}: expected a rational string, got {x!r}")
    try:
        return rational(x)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_coalgebra(obj, where: str = "coalgebra") -> Coalgebra:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    for key in ("dim", "coproduct", "counit"):
        if key not in obj:
            raise SchemaError(f"{where}: missing field {key!r}")
    dim = _int(obj["dim"], f"{where}.dim")
    if dim < 1:
        raise SchemaError(f"{where}.dim: must be >= 1")
    counit = obj["counit"]
    if not isinstance(counit, list) or len(counit) != dim:
        raise SchemaError(f"{where}.counit: expected {dim} entries")
    rows = [[] for _ in range(dim)]
    seen = set()
    if not isinstance(obj["coproduct"], list):
        raise SchemaError(f"{where}.coproduct: expected an array")
    for n, entry in enumerate(obj["coproduct"]):
        at = f"{where}.coproduct[{n}]"
        if not isinstance(entry, dict) or "on" not in entry or "terms" not in entry:
            raise SchemaError(f"{at}: expected {{'on': i, 'terms': [...]}}")
        i = _int(entry["on"], f"{at}.on")
        if not 0 <= i < dim or i in seen:
            raise SchemaError(f"{at}.on: index {i} out of range or repeated")
        seen.add(i)
        for t, term in enumerate(entry["terms"]):
            tat = f"{at}.terms[{t}]"
            if not isinstance(term, dict) or not {"j", "k", "c"} <= term.keys():
                raise SchemaError(f"{tat}: expected {{'j', 'k', 'c'}}")
            j = _int(term["j"], f"{tat}.j")
            k = _int(term["k"], f"{tat}.k")
            if not (0 <= j < dim and 0 <= k < dim):
                raise SchemaError(f"{tat}: index out of range for dim {dim}")
            rows[i].append((j, k, _rat(term["c"], f"{tat}.c")))
    counit_q = [_rat(e, f"{where}.counit[{n}]") for n, e in enumerate(counit)]
    return Coalgebra.from_terms(dim, rows, counit_q)


def parse_instance(obj) -> tuple[Coalgebra, Coalgebra, np.ndarray]:
    """Structural parse only; axioms are checked by the caller."""
    if not isinstance(obj, dict):
        raise SchemaError("instance: expected an object")
    for key in ("L", "F", "x_t"):
        if key not in obj:
            raise SchemaError(f"instance: missing field {key!r}")
    L = parse_coalgebra(obj["L"], "L")
    F = parse_coalgebra(obj["F"], "F")
    xt = obj["x_t"]
    if not isinstance(xt, dict) or not {"rows", "cols", "entries"} <= xt.keys():
        raise SchemaError("x_t: expected {'rows', 'cols', 'entries'}")
    rows = _int(xt["rows"], "x_t.rows")
    cols = _int(xt["cols"], "x_t.cols")
    entries = xt["entries"]
    if not isinstance(entries, list) or len(entries) != rows or any(
        not isinstance(row, list) or len(row) != cols for row in entries
    ):
        raise SchemaError(f"x_t shape: entries do not form a {rows} x {cols} array")
    if (rows, cols) != (F.dim, L.dim):
        raise SchemaError(
            f"x_t shape: got {rows} x {cols}, expected dim E x dim L = {F.dim} x {L.dim}"
        )
    m = zeros(rows, cols)
    for i, row in enumerate(entries):
        for j, x in enumerate(row):
            m[i, j] = _rat(x, f"x_t.entries[{i}][{j}]")
    return L, F, m


def instance_to_dict(r: RealizationMap) -> dict:
    return {
        "L": r.L.to_dict(),
        "F": r.F.to_dict(),
        "x_t": {
            "rows": r.F.dim,
            "cols": r.L.dim,
            "entries": [[format_rational(x) for x in row] for row in r.xt],
        },
    }


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_instance(path) -> RealizationMap:
    """Parse and validate an instance file, raising on the first defect."""
    L, F, xt = parse_instance(load_json(path))
    for label, c in (("L", L), ("F", F)):
        report = validate_coalgebra(c)
        if not report:
            raise SchemaError(f"{label}: {report.axiom} axiom violated: {report.message}")
    return RealizationMap(L, F, xt, validate=False)


def parse_element(obj, r: RealizationMap, max_degree: int | None = None,
                  guard: int = DEFAULT_GUARD):
    if not isinstance(obj, dict) or "space" not in obj or "terms" not in obj:
        raise SchemaError("element: expected {'space', 'terms'}")
    space_name = obj["space"]
    if space_name not in SPACES:
        raise SchemaError(f"element.space: expected one of {SPACES}, got {space_name!r}")
    terms = []
    for t, term in enumerate(obj["terms"]):
        if not isinstance(term, dict) or "word" not in term or "c" not in term:
            raise SchemaError(f"element.terms[{t}]: expected {{'word', 'c'}}")
        word = term["word"]
        if not isinstance(word, list):
            raise SchemaError(f"element.terms[{t}].word: expected an array")
        terms.append((tuple(_int(a, f"element.terms[{t}].word") for a in word),
                      _rat(term["c"], f"element.terms[{t}].c")))
    degree = max((len(w) for w, _ in terms), default=0)
    if max_degree is not None:
        if max_degree < degree:
            raise SchemaError(f"element has degree {degree} above the requested order {max_degree}")
        degree = max_degree
    coalg = r.L if space_name in ("T(L)", "T(K)") else r.F
    space = TensorCoalgebra(coalg, degree, guard)
    if space_name in ("T(K)", "T(E)"):
        space = space.dual
    for w, _ in terms:
        if any(not 0 <= a < coalg.dim for a in w):
            raise SchemaError(f"element: letter out of range in word {list(w)}")
    if isinstance(space, TensorAlgebra):
        return DualElement.from_terms(space, terms)
    return GradedElement.from_terms(space, terms)


def element_to_dict(v, space_name: str) -> dict:
    return {"space": space_name, "terms": v.to_terms()}
