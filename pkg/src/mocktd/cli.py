"""Command line front end.

Exit codes: 0 when the requested level passes, 1 when an axiom, constraint
or admissibility clause fails, 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import diameter2 as d2
from .documents import (
    DocumentError,
    SystemDocument,
    constraints_json,
    dump_machine,
    mtd_json,
    parameter_array_json,
    quotient_json,
    read_system,
    td_json,
    write_system,
)
from .errors import AdmissibilityError, FieldError, InternalInvariantViolation, SpectralError
from .exactfield import FieldSpec
from .quotient import is_td, quotient_system
from .tdcore import MtdSystem, certify_mtd, check_constraints, is_sharp, parameter_array

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


# -- analysis -------------------------------------------------------------------------


def analyze(doc: SystemDocument, level: str) -> tuple[int, dict]:
    """Run the check pipeline on a parsed document; returns (exit code, verdict)."""
    out: dict = {"field": doc.field.descriptor(), "dimension": doc.dimension, "level": level}
    try:
        system = MtdSystem.from_matrices(doc.a, doc.a_star, doc.thetas, doc.theta_stars)
    except SpectralError as exc:
        out["mtd"] = {
            "passed": False,
            "clauses": [
                {
                    "name": "(i) A and A* diagonalizable",
                    "passed": False,
                    "vacuous": False,
                    "violations": [f"{type(exc).__name__}: {exc}"],
                    "detail": {},
                }
            ],
        }
        out.update(sharp=None, parameter_array=None, constraints=None, td=None, passed=False)
        return EXIT_FAIL, out

    system, mtd = certify_mtd(system)
    out["mtd"] = mtd_json(mtd)
    sharp = is_sharp(system)
    out["sharp"] = sharp
    out["parameter_array"] = None
    out["constraints"] = None
    out["td"] = None
    if sharp:
        pa = parameter_array(system)
        out["parameter_array"] = parameter_array_json(pa)
        out["constraints"] = constraints_json(check_constraints(pa))
        out["td"] = td_json(is_td(system))
    if level == "mtd":
        passed = mtd.passed
    else:
        passed = out["td"] is not None and out["td"]["td"]
        if not sharp:
            out["note"] = "TD verdict undecided: system is not sharp"
    out["passed"] = passed
    return (EXIT_OK if passed else EXIT_FAIL), out


def _load(path: str) -> SystemDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(path, exc.strerror or str(exc)) from None
    return read_system(text)


def _parse_error(exc: DocumentError) -> dict:
    return {"error": {"location": exc.location, "message": str(exc)}, "passed": False}


def check_path(path: str, level: str) -> tuple[int, dict]:
    try:
        doc = _load(path)
    except DocumentError as exc:
        return EXIT_PARSE, _parse_error(exc)
    return analyze(doc, level)


def quotient_path(path: str) -> tuple[int, dict]:
    try:
        doc = _load(path)
    except DocumentError as exc:
        return EXIT_PARSE, _parse_error(exc)
    out: dict = {"field": doc.field.descriptor(), "dimension": doc.dimension}
    try:
        system = MtdSystem.from_matrices(doc.a, doc.a_star, doc.thetas, doc.theta_stars)
    except SpectralError as exc:
        out.update(passed=False, error=f"{type(exc).__name__}: {exc}")
        return EXIT_FAIL, out
    system, mtd = certify_mtd(system)
    out["mtd"] = mtd_json(mtd)
    if not mtd.passed:
        out.update(passed=False, error="not a mock tridiagonal system")
        return EXIT_FAIL, out
    if not is_sharp(system):
        out.update(passed=False, error="NotSharp: E*_0 V is not one-dimensional")
        return EXIT_FAIL, out
    try:
        report = quotient_system(system)
    except InternalInvariantViolation as exc:
        out.update(passed=False, error=f"InternalInvariantViolation: {exc}")
        return EXIT_FAIL, out
    out["quotient"] = quotient_json(report)
    out["passed"] = True
    return EXIT_OK, out


def expectation_checks(p: d2.Diameter2Params) -> list[dict]:
    """Cross-check the generic pipeline against the closed forms of the family."""
    system = d2.build_system(p)
    checks = []
    e, es = d2.closed_form_idempotents(p)
    checks.append({
        "name": "idempotents match closed forms",
        "passed": e == system.idempotents and es == system.idempotents_star,
    })
    checks.append({
        "name": "parameter array round-trips",
        "passed": parameter_array(system).zetas == p.zetas,
    })
    checks.append({
        "name": "zeta_1 zeta_1^x != zeta_2 agrees with irreducibility test",
        "passed": d2.closed_form_is_td(p) == is_td(system).td,
    })
    if p.is_degenerate:
        g = d2.degenerate_expected(p)
        r = quotient_system(system)
        checks.append({
            "name": "quotient matches closed forms",
            "passed": (
                r.principal_module.is_full()
                and r.maximal_submodule == g.maximal_submodule
                and tuple(r.transversal) == g.transversal
                and r.induced_a == g.induced_a
                and r.induced_a_star == g.induced_a_star
                and r.induced_idempotents == g.induced_idempotents
                and r.induced_idempotents_star == g.induced_idempotents_star
            ),
        })
    return checks


_FIELD_RE = re.compile(r"GF[:(]?(\d+)\)?", re.IGNORECASE)


def parse_field(text: str) -> FieldSpec:
    if text.upper() == "Q":
        return FieldSpec.rationals()
    m = _FIELD_RE.fullmatch(text)
    if m is None:
        raise FieldError(f"unknown field {text!r}; use Q or GF:p")
    return FieldSpec.prime(int(m.group(1)))


def diameter2_run(args) -> tuple[int, dict]:
    try:
        field = parse_field(args.field)
        values = [field.parse(x) for x in args.params]
    except FieldError as exc:
        return EXIT_PARSE, {"error": {"location": "arguments", "message": str(exc)}, "passed": False}
    out: dict = {"field": field.descriptor(), "params": [field.render(v) for v in values]}
    try:
        p = d2.validate_params(values[0:3], values[3:6], values[6:9], field)
    except AdmissibilityError as exc:
        out.update(passed=False, error={"clause": exc.clause, "kind": type(exc).__name__, "message": str(exc)})
        return EXIT_FAIL, out
    out["zeta1_times"] = str(p.zeta1_times)
    out["closed_form_td"] = d2.closed_form_is_td(p)
    a, a_star = d2.system_matrices(p)
    doc = SystemDocument(field, 4, a, a_star, tuple(x.value for x in p.thetas), tuple(x.value for x in p.theta_stars))
    if args.out:
        Path(args.out).write_text(write_system(doc), encoding="utf-8")
        out["written"] = args.out
    code, verdict = analyze(doc, args.level)
    out["check"] = verdict
    passed = verdict["passed"]
    if args.expect:
        checks = expectation_checks(p)
        out["expect"] = checks
        passed = passed and all(c["passed"] for c in checks)
    out["passed"] = passed
    return (EXIT_OK if passed else EXIT_FAIL), out


# -- human rendering --------------------------------------------------------------------


def _mark(ok) -> str:
    return "PASS" if ok else "FAIL"


def _clause_lines(prefix: str, clauses: list[dict]) -> list[str]:
    lines = []
    for c in clauses:
        tag = "PASS (vacuous)" if c["passed"] and c["vacuous"] else _mark(c["passed"])
        lines.append(f"  [{tag}] {prefix} {c['name']}")
        for v in c["violations"]:
            lines.append(f"         violation: {v}")
    return lines


def render_human(payload: dict) -> str:
    lines = []
    if "error" in payload and isinstance(payload["error"], dict) and "location" in payload["error"]:
        return f"parse error: {payload['error']['message']}\n"
    if "params" in payload:
        lines.append(f"diameter-two family over {FieldSpec.from_descriptor(payload['field'])}: {' '.join(payload['params'])}")
        if "error" in payload:
            lines.append(f"  [FAIL] admissibility {payload['error']['clause']}: {payload['error']['message']}")
            return "\n".join(lines) + "\n"
        lines.append(f"  zeta_1^x = {payload['zeta1_times']}; zeta_1 zeta_1^x != zeta_2: {payload['closed_form_td']}")
        if "written" in payload:
            lines.append(f"  system document written to {payload['written']}")
        lines.append(render_human(payload["check"]).rstrip("\n"))
        for c in payload.get("expect", []):
            lines.append(f"  [{_mark(c['passed'])}] expect: {c['name']}")
        lines.append(f"overall: {_mark(payload['passed'])}")
        return "\n".join(lines) + "\n"
    if "field" in payload:
        lines.append(f"system over {FieldSpec.from_descriptor(payload['field'])}, dimension {payload['dimension']}")
    if "mtd" in payload:
        lines.extend(_clause_lines("MTD", payload["mtd"]["clauses"]))
        lines.append(f"  mock tridiagonal: {'yes' if payload['mtd']['passed'] else 'no'}")
    if payload.get("sharp") is not None:
        lines.append(f"  sharp (dim E*_0 V = 1): {'yes' if payload['sharp'] else 'no'}")
    pa = payload.get("parameter_array")
    if pa:
        lines.append(f"  eigenvalue sequence:      {', '.join(pa['thetas'])}")
        lines.append(f"  dual eigenvalue sequence: {', '.join(pa['theta_stars'])}")
        lines.append(f"  split sequence:           {', '.join(pa['zetas'])}")
    if payload.get("constraints"):
        lines.extend(_clause_lines("constraint", payload["constraints"]["clauses"]))
    td = payload.get("td")
    if td:
        lines.append(f"  tridiagonal system (irreducible): {'yes' if td['td'] else 'no'}")
        if td["witness"] is not None:
            lines.append(f"    invariant subspace witness, dim {td['witness']['dim']}: {td['witness']['basis']}")
    if "note" in payload:
        lines.append(f"  note: {payload['note']}")
    q = payload.get("quotient")
    if q:
        lines.append(
            f"  dim T E*_0 V = {q['principal_module']['dim']}, dim K = {q['corner_kernel']['dim']}, "
            f"dim M = {q['maximal_submodule']['dim']}, dim L = {q['quotient_dim']}"
        )
        lines.append(f"  M basis: {q['maximal_submodule']['basis']}")
        lines.append(f"  transversal: {q['transversal']}")
        lines.append(f"  induced A:  {q['induced_a']}")
        lines.append(f"  induced A*: {q['induced_a_star']}")
        for i, e in enumerate(q["induced_idempotents"]):
            lines.append(f"  induced E_{i}:  {e}")
        for i, e in enumerate(q["induced_idempotents_star"]):
            lines.append(f"  induced E*_{i}: {e}")
        lines.append(f"  S = {q['support']}, S* = {q['support_star']}, (r, t, k, k*) = ({q['r']}, {q['t']}, {q['k']}, {q['k_star']})")
        lines.append(f"  induced system is TD: {'yes' if q['induced_td']['td'] else 'no'}")
        lines.append(f"  parameter arrays equal: {'yes' if q['parameter_arrays_equal'] else 'no'}")
    if "error" in payload:
        lines.append(f"  error: {payload['error']}")
    if "level" in payload:
        lines.append(f"level {payload['level']}: {_mark(payload['passed'])}")
    return "\n".join(lines) + "\n"


def _emit(payload: dict, fmt: str):
    text = dump_machine(payload) if fmt == "machine" else render_human(payload)
    sys.stdout.write(text)


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mocktd",
        description="Verify and reduce (mock) tridiagonal systems over Q and GF(p), exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("check", help="check the MTD or TD axioms of system documents")
    p.add_argument("paths", nargs="+", metavar="PATH")
    p.add_argument("--level", choices=("mtd", "td"), default="mtd")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="check several files in parallel")
    fmt(p)

    p = sub.add_parser("quotient", help="build the irreducible quotient of a sharp MTD system")
    p.add_argument("path", metavar="PATH")
    fmt(p)

    p = sub.add_parser(
        "diameter2",
        help="build and check a member of the 4x4 diameter-two family",
        description="Nine scalars: theta_0..2 theta*_0..2 zeta_0..2. "
        "Put '--' before them if any starts with '-'.",
    )
    p.add_argument("params", nargs=9, metavar="SCALAR")
    p.add_argument("--field", default="Q", help="Q (default) or GF:p")
    p.add_argument("--out", metavar="FILE", help="write the system document here")
    p.add_argument("--level", choices=("mtd", "td"), default="mtd")
    p.add_argument("--expect", action="store_true", help="cross-check against closed forms")
    fmt(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        if args.jobs > 1 and len(args.paths) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(check_path, args.paths, [args.level] * len(args.paths)))
        else:
            results = [check_path(path, args.level) for path in args.paths]
        if len(results) == 1:
            _emit(results[0][1], args.format)
        elif args.format == "machine":
            sys.stdout.write(dump_machine({"results": [dict(r, path=path) for path, (_, r) in zip(args.paths, results)]}))
        else:
            for path, (_, r) in zip(args.paths, results):
                sys.stdout.write(f"== {path}\n" + render_human(r))
        return max(code for code, _ in results)
    if args.command == "quotient":
        code, payload = quotient_path(args.path)
    else:
        code, payload = diameter2_run(args)
    _emit(payload, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
