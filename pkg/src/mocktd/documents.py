"""JSON documents read and written by the command line front end.

System document (scalars are always strings)::

    {
      "field": {"kind": "Q"},
      "dimension": 2,
      "a": [
        ["2", "0"],
        ["0", "3"]
      ],
      "a_star": [...],
      "thetas": ["2", "3"],
      "theta_stars": [...]
    }

``write_system`` emits exactly this layout, so a canonical document
survives ``write_system(read_system(text))`` byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .errors import FieldError, MockTDError
from .exactfield import FieldSpec
from .linalg import Matrix, Subspace
from .quotient import QuotientReport, TdVerdict
from .tdcore import AxiomReport, ConstraintReport, MtdVerdict, ParameterArray

SYSTEM_KEYS = ("field", "dimension", "a", "a_star", "thetas", "theta_stars")


class DocumentError(MockTDError, ValueError):
    """Malformed input document; ``location`` says where."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class SystemDocument:
    field: FieldSpec
    dimension: int
    a: Matrix
    a_star: Matrix
    thetas: tuple
    theta_stars: tuple


def _parse_scalar(field: FieldSpec, x: Any, where: str):
    if not isinstance(x, str):
        raise DocumentError(where, f"scalars must be strings, got {json.dumps(x)}")
    try:
        return field.parse(x)
    except FieldError as exc:
        raise DocumentError(where, str(exc)) from None


def _parse_grid(field: FieldSpec, grid: Any, n: int, name: str) -> Matrix:
    if not isinstance(grid, list) or len(grid) != n:
        raise DocumentError(name, f"expected a list of {n} rows")
    rows = []
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError(f"{name}[{i}]", f"expected a list of {n} scalars")
        rows.append([_parse_scalar(field, x, f"{name}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix(field, rows)


def _parse_list(field: FieldSpec, xs: Any, name: str) -> tuple:
    if not isinstance(xs, list) or not xs:
        raise DocumentError(name, "expected a nonempty list of scalars")
    return tuple(_parse_scalar(field, x, f"{name}[{i}]") for i, x in enumerate(xs))


def parse_system(obj: Any) -> SystemDocument:
    if not isinstance(obj, dict):
        raise DocumentError("<root>", "expected a JSON object")
    missing = [k for k in SYSTEM_KEYS if k not in obj]
    if missing:
        raise DocumentError("<root>", f"missing keys {missing}")
    extra = sorted(set(obj) - set(SYSTEM_KEYS))
    if extra:
        raise DocumentError("<root>", f"unknown keys {extra}")
    try:
        field = FieldSpec.from_descriptor(obj["field"])
    except FieldError as exc:
        raise DocumentError("field", str(exc)) from None
    n = obj["dimension"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("dimension", "expected a positive integer")
    a = _parse_grid(field, obj["a"], n, "a")
    a_star = _parse_grid(field, obj["a_star"], n, "a_star")
    thetas = _parse_list(field, obj["thetas"], "thetas")
    theta_stars = _parse_list(field, obj["theta_stars"], "theta_stars")
    if len(thetas) != len(theta_stars):
        raise DocumentError("theta_stars", f"length {len(theta_stars)} differs from thetas ({len(thetas)})")
    return SystemDocument(field, n, a, a_star, thetas, theta_stars)


def read_system(text: str) -> SystemDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_system(obj)


def write_system(doc: SystemDocument) -> str:
    def grid(m: Matrix) -> str:
        rows = ",\n".join("    " + json.dumps(r) for r in m.to_strings())
        return "[\n" + rows + "\n  ]"

    render = doc.field.render
    parts = [
        f'  "field": {json.dumps(doc.field.descriptor())}',
        f'  "dimension": {doc.dimension}',
        f'  "a": {grid(doc.a)}',
        f'  "a_star": {grid(doc.a_star)}',
        f'  "thetas": {json.dumps([render(x) for x in doc.thetas])}',
        f'  "theta_stars": {json.dumps([render(x) for x in doc.theta_stars])}',
    ]
    return "{\n" + ",\n".join(parts) + "\n}\n"


# -- verdict serialization --------------------------------------------------------------


def axiom_json(rep: AxiomReport) -> dict:
    return {
        "name": rep.name,
        "passed": rep.passed,
        "vacuous": rep.vacuous,
        "violations": rep.violations,
        "detail": rep.detail,
    }


def mtd_json(v: MtdVerdict) -> dict:
    return {"passed": v.passed, "clauses": [axiom_json(c) for c in v.clauses]}


def constraints_json(c: ConstraintReport) -> dict:
    return {"passed": c.passed, "clauses": [axiom_json(x) for x in c.clauses]}


def parameter_array_json(pa: ParameterArray) -> dict:
    return pa.to_strings()


def subspace_json(s: Subspace) -> dict:
    return {"dim": s.dim, "basis": s.to_strings()}


def td_json(v: TdVerdict) -> dict:
    return {
        "td": v.td,
        "irreducible": v.irreducible,
        "principal_is_whole": v.principal_is_whole,
        "maximal_submodule": subspace_json(v.maximal_submodule),
        "witness": None if v.witness is None else subspace_json(v.witness),
    }


def quotient_json(r: QuotientReport) -> dict:
    f = r.induced_a.field
    return {
        "principal_module": subspace_json(r.principal_module),
        "corner_kernel": subspace_json(r.corner_kernel),
        "maximal_submodule": subspace_json(r.maximal_submodule),
        "quotient_dim": r.quotient_dim,
        "transversal": [[f.render(x) for x in t] for t in r.transversal],
        "induced_a": r.induced_a.to_strings(),
        "induced_a_star": r.induced_a_star.to_strings(),
        "induced_idempotents": [e.to_strings() for e in r.induced_idempotents],
        "induced_idempotents_star": [e.to_strings() for e in r.induced_idempotents_star],
        "support": r.support,
        "support_star": r.support_star,
        "r": r.r,
        "t": r.t,
        "k": r.k,
        "k_star": r.k_star,
        "induced_td": td_json(r.induced_verdict),
        "parent_parameter_array": parameter_array_json(r.parent_parameter_array),
        "induced_parameter_array": parameter_array_json(r.induced_parameter_array),
        "parameter_arrays_equal": r.parent_parameter_array == r.induced_parameter_array,
    }


def dump_machine(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
