"""Mock tridiagonal systems: axioms, sharpness, split sequences, parameter arrays.

Axiom failures are returned as :class:`AxiomReport` data (with the indices
and witness entries that violate them) rather than raised, so front ends can
explain why a candidate fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .errors import DiameterMismatch, NotScalarMultiple, NotSharp, ShapeError
from .exactfield import FieldScalar, FieldSpec
from .linalg import Matrix, Polynomial, poly_eval_at_matrix
from .spectral import EigenSystem, verify_diagonalizable


@dataclass(frozen=True)
class MtdSystem:
    """``(A; E_0..E_d; A*; E*_0..E*_d)`` on ``field^n``.

    ``checked_flags`` names the axioms already confirmed for this instance;
    diagonalizability is always among them since the eigen systems can only
    be produced by :func:`~mocktd.spectral.verify_diagonalizable`.
    """

    eigen: EigenSystem
    eigen_star: EigenSystem
    checked_flags: frozenset = frozenset({"diagonalizable"})

    def __post_init__(self):
        a, s = self.eigen.operator, self.eigen_star.operator
        if a.field != s.field:
            raise ShapeError(f"A over {a.field} but A* over {s.field}")
        if a.shape != s.shape:
            raise ShapeError(f"A is {a.shape} but A* is {s.shape}")
        if len(self.eigen.eigenvalues) != len(self.eigen_star.eigenvalues):
            raise DiameterMismatch(
                f"A has {len(self.eigen.eigenvalues)} eigenvalues, "
                f"A* has {len(self.eigen_star.eigenvalues)}"
            )

    @classmethod
    def from_matrices(
        cls, a: Matrix, a_star: Matrix, thetas: Sequence[Any], theta_stars: Sequence[Any]
    ) -> MtdSystem:
        """Verify both operators are diagonalizable with the given orderings and assemble."""
        if len(thetas) != len(theta_stars):
            raise DiameterMismatch(f"{len(thetas)} eigenvalues vs {len(theta_stars)} dual eigenvalues")
        return cls(verify_diagonalizable(a, thetas), verify_diagonalizable(a_star, theta_stars))

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    @property
    def n(self) -> int:
        return self.a.rows

    @property
    def d(self) -> int:
        return self.eigen.diameter

    @property
    def a(self) -> Matrix:
        return self.eigen.operator

    @property
    def a_star(self) -> Matrix:
        return self.eigen_star.operator

    @property
    def thetas(self) -> tuple[FieldScalar, ...]:
        return self.eigen.eigenvalues

    @property
    def theta_stars(self) -> tuple[FieldScalar, ...]:
        return self.eigen_star.eigenvalues

    @property
    def idempotents(self) -> tuple[Matrix, ...]:
        return self.eigen.idempotents

    @property
    def idempotents_star(self) -> tuple[Matrix, ...]:
        return self.eigen_star.idempotents

    def conjugate(self, p: Matrix, p_inv: Matrix) -> MtdSystem:
        """The same system after the change of basis ``X -> p X p_inv``."""
        return MtdSystem.from_matrices(
            p @ self.a @ p_inv, p @ self.a_star @ p_inv, self.thetas, self.theta_stars
        )


@dataclass(frozen=True)
class ParameterArray:
    thetas: tuple[FieldScalar, ...]
    theta_stars: tuple[FieldScalar, ...]
    zetas: tuple[FieldScalar, ...]

    @property
    def d(self) -> int:
        return len(self.thetas) - 1

    @property
    def field(self) -> FieldSpec:
        return self.thetas[0].field

    def to_strings(self) -> dict:
        return {
            "thetas": [str(x) for x in self.thetas],
            "theta_stars": [str(x) for x in self.theta_stars],
            "zetas": [str(x) for x in self.zetas],
        }


@dataclass
class AxiomReport:
    """Outcome of one axiom or constraint clause."""

    name: str
    passed: bool
    violations: list = dc_field(default_factory=list)
    vacuous: bool = False
    detail: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.passed


# -- axioms ------------------------------------------------------------------------------


def _witness(m: Matrix):
    i, j, v = m.nonzero_entries()[0]
    return {"row": i, "col": j, "value": str(v)}


def _shape_clause(name: str, idems: Sequence[Matrix], op: Matrix) -> AxiomReport:
    violations = []
    for i, ei in enumerate(idems):
        left = ei @ op
        for j, ej in enumerate(idems):
            if abs(i - j) <= 1:
                continue
            prod = left @ ej
            if not prod.is_zero():
                violations.append({"i": i, "j": j, "witness": _witness(prod)})
    return AxiomReport(name, not violations, violations, vacuous=len(idems) <= 2)


def check_tridiagonal_shape(system: MtdSystem) -> tuple[AxiomReport, AxiomReport]:
    """Clauses (ii) ``E_i A* E_j = 0`` and (iii) ``E*_i A E*_j = 0`` for ``|i-j| > 1``."""
    return (
        _shape_clause("(ii) E_i A* E_j = 0 for |i-j| > 1", system.idempotents, system.a_star),
        _shape_clause("(iii) E*_i A E*_j = 0 for |i-j| > 1", system.idempotents_star, system.a),
    )


def check_mtd_corner(system: MtdSystem) -> AxiomReport:
    """Clause (iv): both ``E*_0 E_0 E*_0`` and ``E*_0 E_d E*_0`` are nonzero."""
    es0 = system.idempotents_star[0]
    first = es0 @ system.idempotents[0] @ es0
    last = es0 @ system.idempotents[system.d] @ es0
    violations = []
    if first.is_zero():
        violations.append({"product": "E*_0 E_0 E*_0"})
    if last.is_zero():
        violations.append({"product": f"E*_0 E_{system.d} E*_0"})
    detail = {
        "E*0 E0 E*0": first.to_strings(),
        f"E*0 E{system.d} E*0": last.to_strings(),
    }
    return AxiomReport("(iv) E*_0 E_0 E*_0 != 0 and E*_0 E_d E*_0 != 0", not violations, violations, detail=detail)


def is_sharp(system: MtdSystem) -> bool:
    return system.idempotents_star[0].rank() == 1


@dataclass
class MtdVerdict:
    diagonalizable: AxiomReport
    tridiagonal: AxiomReport
    dual_tridiagonal: AxiomReport
    corner: AxiomReport

    @property
    def clauses(self) -> list[AxiomReport]:
        return [self.diagonalizable, self.tridiagonal, self.dual_tridiagonal, self.corner]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def check_mtd(system: MtdSystem) -> MtdVerdict:
    shape, dual = check_tridiagonal_shape(system)
    diag = AxiomReport(
        "(i) A and A* diagonalizable",
        True,
        detail={"d": system.d, "n": system.n},
    )
    return MtdVerdict(diag, shape, dual, check_mtd_corner(system))


def certify_mtd(system: MtdSystem) -> tuple[MtdSystem, MtdVerdict]:
    """Run the MTD checks and return the system with its flags updated."""
    v = check_mtd(system)
    flags = set(system.checked_flags)
    for key, rep in (("tridiagonal", v.tridiagonal), ("dual_tridiagonal", v.dual_tridiagonal), ("corner", v.corner)):
        if rep.passed:
            flags.add(key)
    if is_sharp(system):
        flags.add("sharp")
    return MtdSystem(system.eigen, system.eigen_star, frozenset(flags)), v


# -- polynomials and the split sequence --------------------------------------------


def td_polynomials(thetas: Sequence[Any], theta_stars: Sequence[Any], i: int):
    """``(tau_i, eta_i, tau*_i, eta*_i)``.

    tau_i has roots theta_0..theta_{i-1}; eta_i has roots theta_d..theta_{d-i+1};
    starred versions likewise.
    """
    d = len(thetas) - 1
    if len(theta_stars) != d + 1:
        raise DiameterMismatch("eigenvalue sequences of different lengths")
    if not 0 <= i <= d:
        raise IndexError(f"index {i} outside 0..{d}")
    f = _field_of(thetas)
    return (
        Polynomial.from_roots(f, thetas[:i]),
        Polynomial.from_roots(f, list(reversed(thetas))[:i]),
        Polynomial.from_roots(f, theta_stars[:i]),
        Polynomial.from_roots(f, list(reversed(theta_stars))[:i]),
    )


def _field_of(xs) -> FieldSpec:
    for x in xs:
        if isinstance(x, FieldScalar):
            return x.field
    raise TypeError("need FieldScalar entries to infer the field")


def proportionality_constant(target: Matrix, base: Matrix):
    """``c`` with ``target == c * base``, using the first nonzero entry of ``base``.

    Raises NotScalarMultiple otherwise.
    """
    f = base.field
    i, j, b = base.nonzero_entries()[0]
    c = f.div(target.values[i][j], b.value)
    if target != base.scale(c):
        raise NotScalarMultiple("matrix is not a scalar multiple of E*_0")
    return c


def split_sequence(system: MtdSystem) -> tuple[FieldScalar, ...]:
    if not is_sharp(system):
        raise NotSharp(f"E*_0 has rank {system.idempotents_star[0].rank()}, not 1")
    f = system.field
    es0 = system.idempotents_star[0]
    ts = [t.value for t in system.theta_stars]
    zetas = []
    for i in range(system.d + 1):
        tau = Polynomial.from_roots(f, [t.value for t in system.thetas[:i]])
        c = proportionality_constant(es0 @ poly_eval_at_matrix(tau, system.a) @ es0, es0)
        for j in range(1, i + 1):
            c = f.mul(c, f.sub(ts[0], ts[j]))
        zetas.append(FieldScalar(f, c))
    return tuple(zetas)


def parameter_array(system: MtdSystem) -> ParameterArray:
    return ParameterArray(system.thetas, system.theta_stars, split_sequence(system))


# -- constraints on parameter arrays --------------------------------------------------


@dataclass
class ConstraintReport:
    distinct: AxiomReport
    split: AxiomReport
    recurrence: AxiomReport

    @property
    def clauses(self) -> list[AxiomReport]:
        return [self.distinct, self.split, self.recurrence]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def constraint_sum(pa: ParameterArray) -> FieldScalar:
    """sum_i eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i."""
    d = pa.d
    total = 0 * pa.zetas[0]
    for i in range(d + 1):
        _, eta, _, eta_s = td_polynomials(pa.thetas, pa.theta_stars, d - i)
        total = total + eta(pa.thetas[0].value) * eta_s(pa.theta_stars[0].value) * pa.zetas[i]
    return total


def check_constraints(pa: ParameterArray) -> ConstraintReport:
    d = pa.d
    viol = []
    for name, seq in (("theta", pa.thetas), ("theta*", pa.theta_stars)):
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                if seq[i] == seq[j]:
                    viol.append({"sequence": name, "i": i, "j": j})
    distinct = AxiomReport("(i) eigenvalues mutually distinct", not viol, viol)

    s = constraint_sum(pa)
    viol = []
    if pa.zetas[0] != 1:
        viol.append("zeta_0 != 1")
    if not pa.zetas[d]:
        viol.append("zeta_d = 0")
    if not s:
        viol.append("sum vanishes")
    split = AxiomReport(
        "(ii) zeta_0 = 1, zeta_d != 0, sum eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i != 0",
        not viol,
        viol,
        detail={"sum": str(s)},
    )

    viol = []
    ratios = []
    if d >= 3 and not distinct.passed:
        viol.append("ratios undefined: eigenvalues not distinct")
    elif d >= 3:
        for i in range(2, d):
            for seq in (pa.thetas, pa.theta_stars):
                ratios.append((seq[i - 2] - seq[i + 1]) / (seq[i - 1] - seq[i]))
        ref = ratios[0]
        viol = [{"position": k, "ratio": str(r)} for k, r in enumerate(ratios) if r != ref]
    recurrence = AxiomReport(
        "(iii) (theta_{i-2}-theta_{i+1})/(theta_{i-1}-theta_i) equal for both sequences, all 2 <= i <= d-1",
        not viol,
        viol,
        vacuous=d <= 2,
        detail={"ratios": [str(r) for r in ratios]},
    )
    return ConstraintReport(distinct, split, recurrence)
