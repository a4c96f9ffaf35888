"""Irreducible quotient of a sharp mock tridiagonal system.

For a sharp system on V, let T be the algebra generated by A and A*.  The
module ``P = T E*_0 V`` has a unique maximal proper submodule ``M``, and every
proper submodule of ``P`` is killed by ``E*_0``.  So ``M`` is the largest
A,A*-invariant subspace of ``K = P ∩ ker E*_0``, which :func:`invariant_core`
computes directly.  The quotient ``L = P / M`` carries a TD system with the
same parameter array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InternalInvariantViolation, NotSharp, ShapeError
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    complete_basis,
    generated_module,
    invariant_core,
    quotient_action,
)
from .tdcore import (
    AxiomReport,
    MtdSystem,
    ParameterArray,
    check_mtd_corner,
    check_tridiagonal_shape,
    is_sharp,
    parameter_array,
)


def algebra_closure(a: Matrix, a_star: Matrix) -> list[Matrix]:
    """A linear basis of the unital algebra generated by ``a`` and ``a_star``."""
    if a.field != a_star.field or a.shape != a_star.shape or not a.is_square():
        raise ShapeError("generators must be square matrices of one shape over one field")
    f = a.field
    n = a.rows
    cap = n * n

    def flat(m: Matrix) -> Vector:
        return tuple(x for row in m.values for x in row)

    span = Subspace.zero(f, cap)
    basis: list[Matrix] = []
    frontier = [Matrix.identity(f, n)]
    length = 0
    while frontier:
        fresh = []
        for m in frontier:
            bigger = Subspace(f, cap, span.basis + (flat(m),))
            if bigger.dim > span.dim:
                span = bigger
                basis.append(m)
                fresh.append(m)
        if len(basis) > cap or length > 2 * cap:
            raise InternalInvariantViolation("algebra closure exceeded its growth bound")
        frontier = [m @ g for m in fresh for g in (a, a_star)]
        length += 1
    return basis


def principal_module(system: MtdSystem) -> Subspace:
    """``T E*_0 V``: the A,A*-closure of the image of ``E*_0``."""
    return generated_module(system.idempotents_star[0].image(), [system.a, system.a_star])


def corner_kernel(system: MtdSystem, principal: Optional[Subspace] = None) -> Subspace:
    """``K = {u in T E*_0 V : E*_0 u = 0}``."""
    p = principal_module(system) if principal is None else principal
    return p.intersect(system.idempotents_star[0].kernel())


def maximal_submodule(system: MtdSystem, principal: Optional[Subspace] = None) -> Subspace:
    if not is_sharp(system):
        raise NotSharp("the maximal submodule is only characterized for sharp systems")
    k = corner_kernel(system, principal)
    return invariant_core(k, [system.a, system.a_star])


@dataclass
class TdVerdict:
    td: bool
    tridiagonal: AxiomReport
    dual_tridiagonal: AxiomReport
    principal_is_whole: bool
    maximal_submodule: Subspace
    # a proper nonzero invariant subspace when the system is reducible
    witness: Optional[Subspace]

    @property
    def irreducible(self) -> bool:
        return self.witness is None


def is_td(system: MtdSystem) -> TdVerdict:
    """Full TD check for a sharp system.

    Irreducible iff ``T E*_0 V = V`` and the maximal submodule is zero: a
    proper invariant W with ``E*_0 W != 0`` would contain ``E*_0 V`` and hence
    all of V, so every proper invariant subspace sits inside ``M``.
    """
    if not is_sharp(system):
        raise NotSharp("irreducibility is only decided for sharp systems")
    shape, dual = check_tridiagonal_shape(system)
    p = principal_module(system)
    m = maximal_submodule(system, p)
    witness = None
    if not m.is_zero():
        witness = m
    elif not p.is_full():
        witness = p
    return TdVerdict(
        td=shape.passed and dual.passed and witness is None,
        tridiagonal=shape,
        dual_tridiagonal=dual,
        principal_is_whole=p.is_full(),
        maximal_submodule=m,
        witness=witness,
    )


def _support(matrices) -> list[int]:
    return [i for i, m in enumerate(matrices) if not m.is_zero()]


def _interval(indices: list[int]) -> bool:
    return bool(indices) and indices == list(range(indices[0], indices[-1] + 1))


@dataclass
class QuotientReport:
    principal_module: Subspace
    corner_kernel: Subspace
    maximal_submodule: Subspace
    transversal: list
    induced_a: Matrix
    induced_a_star: Matrix
    induced_idempotents: tuple
    induced_idempotents_star: tuple
    induced_system: MtdSystem
    induced_verdict: TdVerdict
    parent_parameter_array: ParameterArray
    induced_parameter_array: ParameterArray
    support: list
    support_star: list
    r: int
    t: int
    k: int
    k_star: int

    @property
    def quotient_dim(self) -> int:
        return len(self.transversal)


def quotient_system(system: MtdSystem) -> QuotientReport:
    """Build ``L = T E*_0 V / M`` and the TD system induced on it.

    Every identity the construction guarantees is re-checked; a failure
    raises InternalInvariantViolation.
    """
    if not is_sharp(system):
        raise NotSharp("the quotient construction needs a sharp system")
    d = system.d
    p = principal_module(system)
    k_space = corner_kernel(system, p)
    m = invariant_core(k_space, [system.a, system.a_star])
    trans = complete_basis(m, p)

    def induce(op):
        return quotient_action(op, m, trans)

    ia = induce(system.a)
    ias = induce(system.a_star)
    ie = tuple(induce(e) for e in system.idempotents)
    ies = tuple(induce(e) for e in system.idempotents_star)

    s = _support(ie)
    s_star = _support(ies)
    if not (_interval(s) and _interval(s_star)):
        raise InternalInvariantViolation(f"supports are not intervals: S={s}, S*={s_star}")
    r, t = s[0], s_star[0]
    k, k_star = s[-1] - r, s_star[-1] - t
    if (r, t, k, k_star) != (0, 0, d, d):
        raise InternalInvariantViolation(
            f"(r, t, k, k*) = {(r, t, k, k_star)}, expected (0, 0, {d}, {d})"
        )

    if len(trans) < d + 1:
        raise InternalInvariantViolation(f"dim L = {len(trans)} < d + 1 = {d + 1}")

    induced = MtdSystem.from_matrices(ia, ias, system.thetas, system.theta_stars)
    if induced.idempotents != ie or induced.idempotents_star != ies:
        raise InternalInvariantViolation("induced idempotents differ from those of the induced operators")

    verdict = is_td(induced)
    if not verdict.td:
        raise InternalInvariantViolation("induced system is not a TD system")
    if not check_mtd_corner(induced).passed:
        raise InternalInvariantViolation("induced TD system fails the corner condition")

    parent_pa = parameter_array(system)
    induced_pa = parameter_array(induced)
    if parent_pa != induced_pa:
        raise InternalInvariantViolation("induced parameter array differs from the parent's")

    return QuotientReport(
        principal_module=p,
        corner_kernel=k_space,
        maximal_submodule=m,
        transversal=trans,
        induced_a=ia,
        induced_a_star=ias,
        induced_idempotents=ie,
        induced_idempotents_star=ies,
        induced_system=induced,
        induced_verdict=verdict,
        parent_parameter_array=parent_pa,
        induced_parameter_array=induced_pa,
        support=s,
        support_star=s_star,
        r=r,
        t=t,
        k=k,
        k_star=k_star,
    )
