"""The explicit 4x4 family of sharp diameter-two mock tridiagonal systems.

Given admissible ``(theta_0..2; theta*_0..2; zeta_0..2)`` the matrices

    A  = [[t0, 0, 0, 0], [1, t1, 0, 0], [0, 0, t1, 0], [0, 1, zx, t2]]
    A* = [[s0, z1, z2, 0], [0, s1, 0, 0], [0, 0, s1, 1], [0, 0, 0, s2]]

with ``zx = z1 + (t0-t1)(s0-s1) - (t1-t2)(s1-s2)`` form a sharp MTD system
with that parameter array.  It is a TD system iff ``z1 * zx != z2``.  In the
degenerate case ``z1 * zx == z2`` the quotient by ``span{(0, -zx, 1, 0)}`` is
three-dimensional; the closed forms for that quotient are given by
:func:`degenerate_expected`.

All closed forms here are written out entry by entry, independently of the
generic spectral code, so the two can be compared.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Sequence

from .errors import (
    DistinctnessViolated,
    NonvanishingSumViolated,
    NotDegenerate,
    Zeta0NotOne,
    Zeta2Zero,
)
from .exactfield import FieldScalar, FieldSpec
from .linalg import Matrix, Subspace
from .tdcore import MtdSystem


@dataclass(frozen=True)
class Diameter2Params:
    thetas: tuple[FieldScalar, FieldScalar, FieldScalar]
    theta_stars: tuple[FieldScalar, FieldScalar, FieldScalar]
    zetas: tuple[FieldScalar, FieldScalar, FieldScalar]
    zeta1_times: FieldScalar

    @property
    def field(self) -> FieldSpec:
        return self.thetas[0].field

    @property
    def is_degenerate(self) -> bool:
        return self.zetas[1] * self.zeta1_times == self.zetas[2]

    def as_strings(self) -> list[str]:
        return [str(x) for x in self.thetas + self.theta_stars + self.zetas]


def zeta1_times(thetas, theta_stars, zeta1) -> FieldScalar:
    t0, t1, t2 = thetas
    s0, s1, s2 = theta_stars
    return zeta1 + (t0 - t1) * (s0 - s1) - (t1 - t2) * (s1 - s2)


def admissibility_sum(thetas, theta_stars, zetas) -> FieldScalar:
    """zeta_2 + zeta_1 (t0-t2)(s0-s2) + (t0-t1)(t0-t2)(s0-s1)(s0-s2); must be nonzero."""
    t0, t1, t2 = thetas
    s0, s1, s2 = theta_stars
    return zetas[2] + zetas[1] * (t0 - t2) * (s0 - s2) + (t0 - t1) * (t0 - t2) * (s0 - s1) * (s0 - s2)


def validate_params(
    thetas: Sequence[Any], theta_stars: Sequence[Any], zetas: Sequence[Any], field: FieldSpec
) -> Diameter2Params:
    """Coerce nine scalars into ``field`` and check the admissibility clauses."""
    if not (len(thetas) == len(theta_stars) == len(zetas) == 3):
        raise ValueError("need exactly three values in each sequence")
    th = tuple(field.scalar(x) for x in thetas)
    ts = tuple(field.scalar(x) for x in theta_stars)
    zs = tuple(field.scalar(x) for x in zetas)
    for name, seq in (("theta", th), ("theta*", ts)):
        if len(set(seq)) != 3:
            raise DistinctnessViolated(f"{name} values {[str(x) for x in seq]} are not mutually distinct")
    if zs[0] != 1:
        raise Zeta0NotOne(f"zeta_0 = {zs[0]}, must be 1")
    if not zs[2]:
        raise Zeta2Zero("zeta_2 must be nonzero")
    if not admissibility_sum(th, ts, zs):
        raise NonvanishingSumViolated("zeta_2 + zeta_1(t0-t2)(s0-s2) + (t0-t1)(t0-t2)(s0-s1)(s0-s2) vanishes")
    return Diameter2Params(th, ts, zs, zeta1_times(th, ts, zs[1]))


def system_matrices(p: Diameter2Params) -> tuple[Matrix, Matrix]:
    t0, t1, t2 = p.thetas
    s0, s1, s2 = p.theta_stars
    _, z1, z2 = p.zetas
    zx = p.zeta1_times
    a = Matrix(p.field, [
        [t0, 0, 0, 0],
        [1, t1, 0, 0],
        [0, 0, t1, 0],
        [0, 1, zx, t2],
    ])
    a_star = Matrix(p.field, [
        [s0, z1, z2, 0],
        [0, s1, 0, 0],
        [0, 0, s1, 1],
        [0, 0, 0, s2],
    ])
    return a, a_star


def build_system(p: Diameter2Params) -> MtdSystem:
    a, a_star = system_matrices(p)
    return MtdSystem.from_matrices(a, a_star, p.thetas, p.theta_stars)


def closed_form_idempotents(p: Diameter2Params) -> tuple[tuple[Matrix, ...], tuple[Matrix, ...]]:
    """``((E_0, E_1, E_2), (E*_0, E*_1, E*_2))`` written out entrywise."""
    f = p.field
    t0, t1, t2 = p.thetas
    s0, s1, s2 = p.theta_stars
    _, z1, z2 = p.zetas
    zx = p.zeta1_times
    one = f.scalar(1)
    e0 = Matrix(f, [
        [1, 0, 0, 0],
        [one / (t0 - t1), 0, 0, 0],
        [0, 0, 0, 0],
        [one / ((t0 - t1) * (t0 - t2)), 0, 0, 0],
    ])
    e1 = Matrix(f, [
        [0, 0, 0, 0],
        [one / (t1 - t0), 1, 0, 0],
        [0, 0, 1, 0],
        [one / ((t1 - t0) * (t1 - t2)), one / (t1 - t2), zx / (t1 - t2), 0],
    ])
    e2 = Matrix(f, [
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [one / ((t2 - t0) * (t2 - t1)), one / (t2 - t1), zx / (t2 - t1), 1],
    ])
    es0 = Matrix(f, [
        [1, z1 / (s0 - s1), z2 / (s0 - s1), z2 / ((s0 - s1) * (s0 - s2))],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ])
    es1 = Matrix(f, [
        [0, z1 / (s1 - s0), z2 / (s1 - s0), z2 / ((s1 - s0) * (s1 - s2))],
        [0, 1, 0, 0],
        [0, 0, 1, one / (s1 - s2)],
        [0, 0, 0, 0],
    ])
    es2 = Matrix(f, [
        [0, 0, 0, z2 / ((s2 - s0) * (s2 - s1))],
        [0, 0, 0, 0],
        [0, 0, 0, one / (s2 - s1)],
        [0, 0, 0, 1],
    ])
    return (e0, e1, e2), (es0, es1, es2)


def closed_form_is_td(p: Diameter2Params) -> bool:
    return p.zetas[1] * p.zeta1_times != p.zetas[2]


@dataclass(frozen=True)
class DegenerateGolden:
    """Closed forms for the quotient of a degenerate member, in the basis e1, e2, e4 mod M."""

    m_vector: tuple
    transversal: tuple
    induced_a: Matrix
    induced_a_star: Matrix
    induced_idempotents: tuple[Matrix, Matrix, Matrix]
    induced_idempotents_star: tuple[Matrix, Matrix, Matrix]

    @property
    def maximal_submodule(self) -> Subspace:
        return Subspace(self.induced_a.field, 4, [self.m_vector])


def degenerate_expected(p: Diameter2Params) -> DegenerateGolden:
    if closed_form_is_td(p):
        raise NotDegenerate("zeta_1 * zeta_1^x != zeta_2: the system is already TD")
    f = p.field
    t0, t1, t2 = p.thetas
    s0, s1, s2 = p.theta_stars
    _, z1, z2 = p.zetas
    zx = p.zeta1_times
    one = f.scalar(1)
    m_vector = f.vector([0, -zx, 1, 0])
    transversal = tuple(f.vector(v) for v in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]))
    a = Matrix(f, [[t0, 0, 0], [1, t1, 0], [0, 1, t2]])
    a_star = Matrix(f, [[s0, z1, 0], [0, s1, zx], [0, 0, s2]])
    e0 = Matrix(f, [
        [1, 0, 0],
        [one / (t0 - t1), 0, 0],
        [one / ((t0 - t1) * (t0 - t2)), 0, 0],
    ])
    e1 = Matrix(f, [
        [0, 0, 0],
        [one / (t1 - t0), 1, 0],
        [one / ((t1 - t0) * (t1 - t2)), one / (t1 - t2), 0],
    ])
    e2 = Matrix(f, [
        [0, 0, 0],
        [0, 0, 0],
        [one / ((t2 - t0) * (t2 - t1)), one / (t2 - t1), 1],
    ])
    es0 = Matrix(f, [
        [1, z1 / (s0 - s1), z2 / ((s0 - s1) * (s0 - s2))],
        [0, 0, 0],
        [0, 0, 0],
    ])
    es1 = Matrix(f, [
        [0, z1 / (s1 - s0), z2 / ((s1 - s0) * (s1 - s2))],
        [0, 1, zx / (s1 - s2)],
        [0, 0, 0],
    ])
    es2 = Matrix(f, [
        [0, 0, z2 / ((s2 - s0) * (s2 - s1))],
        [0, 0, zx / (s2 - s1)],
        [0, 0, 1],
    ])
    return DegenerateGolden(m_vector, transversal, a, a_star, (e0, e1, e2), (es0, es1, es2))


def sample_params(
    rng: random.Random, field: FieldSpec, *, degenerate: bool = False, bound: int = 5
) -> Diameter2Params:
    """Rejection-sample an admissible tuple.

    Over Q entries are integers in ``[-bound, bound]``; over GF(p) they are
    uniform residues.  With ``degenerate=True``, ``zeta_2`` is set to
    ``zeta_1 * zeta_1^x`` instead of being drawn.
    """

    def draw() -> int:
        if field.is_rational:
            return rng.randint(-bound, bound)
        return rng.randrange(field.modulus)

    while True:
        th = [draw() for _ in range(3)]
        ts = [draw() for _ in range(3)]
        z1 = draw()
        if degenerate:
            zx = zeta1_times([field.scalar(x) for x in th], [field.scalar(x) for x in ts], field.scalar(z1))
            z2: Any = field.scalar(z1) * zx
        else:
            z2 = draw()
        try:
            return validate_params(th, ts, [1, z1, z2], field)
        except (DistinctnessViolated, Zeta2Zero, NonvanishingSumViolated):
            continue
