"""Primitive idempotents of diagonalizable matrices, and eigenvalue discovery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import DoesNotSplit, DuplicateEigenvalue, ProductNotZero, ShapeError, ZeroIdempotent
from .exactfield import FieldScalar, FieldSpec
from .linalg import Matrix, Polynomial, Subspace, kernel


@dataclass(frozen=True)
class EigenSystem:
    """A diagonalizable operator with an ordering of its eigenvalues.

    ``idempotents[i]`` is the primitive idempotent for ``eigenvalues[i]``.
    Only :func:`verify_diagonalizable` should construct these.
    """

    operator: Matrix
    eigenvalues: tuple[FieldScalar, ...]
    idempotents: tuple[Matrix, ...]

    @property
    def diameter(self) -> int:
        return len(self.eigenvalues) - 1

    def eigenspace(self, i: int) -> Subspace:
        return self.idempotents[i].image()


def primitive_idempotent(a: Matrix, thetas: Sequence[FieldScalar], i: int) -> Matrix:
    """prod_{j != i} (a - theta_j I) / (theta_i - theta_j)."""
    f = a.field
    ti = f.value(thetas[i])
    out = Matrix.identity(f, a.rows)
    denom = f.one
    for j, tj in enumerate(thetas):
        if j == i:
            continue
        tj = f.value(tj)
        out = out @ a.shift(tj)
        denom = f.mul(denom, f.sub(ti, tj))
    return out.scale(f.inv(denom))


def verify_diagonalizable(a: Matrix, thetas: Sequence[Any]) -> EigenSystem:
    """Check that ``a`` is diagonalizable with spectrum exactly ``thetas`` (in that order).

    Raises DuplicateEigenvalue, ProductNotZero, or ZeroIdempotent.
    """
    if not a.is_square():
        raise ShapeError(f"operator must be square, got {a.shape}")
    if not thetas:
        raise ShapeError("need at least one eigenvalue")
    f = a.field
    ths = tuple(f.scalar(t) for t in thetas)
    seen = {}
    for i, t in enumerate(ths):
        if t in seen:
            raise DuplicateEigenvalue(f"eigenvalue {t} listed at positions {seen[t]} and {i}")
        seen[t] = i

    prod = Matrix.identity(f, a.rows)
    for t in ths:
        prod = prod @ a.shift(t.value)
    if not prod.is_zero():
        raise ProductNotZero(
            f"product of (A - theta I) over {[str(t) for t in ths]} is nonzero"
        )

    idems = []
    for i in range(len(ths)):
        e = primitive_idempotent(a, ths, i)
        if e.is_zero():
            raise ZeroIdempotent(f"{ths[i]} is not an eigenvalue")
        idems.append(e)
    return EigenSystem(a, ths, tuple(idems))


# -- characteristic polynomial ----------------------------------------------------------


def characteristic_polynomial(a: Matrix) -> Polynomial:
    """det(lambda I - a), monic of degree n.

    Faddeev-LeVerrier divides by 1..n, so over GF(p) with p <= n we expand
    by minors instead.
    """
    if not a.is_square():
        raise ShapeError("characteristic polynomial of a non-square matrix")
    f = a.field
    n = a.rows
    if f.modulus is not None and f.modulus <= n:
        return _charpoly_by_minors(a)
    # M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    coeffs = [f.zero] * (n + 1)
    coeffs[n] = f.one
    m = Matrix.zeros(f, n)
    for k in range(1, n + 1):
        m = (a @ m).shift(f.neg(coeffs[n - k + 1]))
        tr = (a @ m).trace()
        coeffs[n - k] = f.neg(f.div(tr, f.value(k)))
    return Polynomial(f, tuple(coeffs))


def _charpoly_by_minors(a: Matrix) -> Polynomial:
    f = a.field
    n = a.rows
    # entries of lambda I - a as polynomials
    grid = [
        [
            Polynomial(f, (f.neg(a.values[i][j]), f.one if i == j else f.zero))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return _det_poly(f, grid)


def _det_poly(f: FieldSpec, grid) -> Polynomial:
    n = len(grid)
    if n == 1:
        return grid[0][0]
    total = Polynomial(f)
    for j in range(n):
        entry = grid[0][j]
        if not entry.coefficients:
            continue
        minor = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = entry * _det_poly(f, minor)
        if j % 2:
            term = term * Polynomial(f, (f.neg(f.one),))
        total = total + term
    return total


# -- eigenvalue discovery ----------------------------------------------------------------


@dataclass(frozen=True)
class EigenvalueDiscovery:
    """Eigenvalues in ascending search order with their algebraic multiplicities."""

    eigenvalues: tuple[FieldScalar, ...]
    multiplicities: tuple[int, ...]
    charpoly: Polynomial


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _deflate(p: Polynomial, root) -> tuple[Polynomial, bool]:
    """Synthetic division by (lambda - root); returns (quotient, divides_exactly)."""
    f = p.field
    cs = p.coefficients
    out = [f.zero] * (len(cs) - 1)
    acc = f.zero
    for k in range(len(cs) - 1, 0, -1):
        acc = f.add(f.mul(acc, root), cs[k])
        out[k - 1] = acc
    rem = f.add(f.mul(acc, root), cs[0])
    return Polynomial(f, tuple(out)), not rem


def _candidate_roots(p: Polynomial) -> list:
    f = p.field
    if f.modulus is not None:
        return list(range(f.modulus))
    # clear denominators; candidates are +-a/b with a | const, b | lead
    cs = [Fraction(c) for c in p.coefficients]
    scale = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * scale) for c in cs]
    cands = {Fraction(0)} if ints[0] == 0 else set()
    lo = next(k for k, c in enumerate(ints) if c)
    for num in _divisors(ints[lo]):
        for den in _divisors(ints[-1]):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    return sorted(cands)


def discover_eigenvalues(a: Matrix) -> EigenvalueDiscovery:
    """Roots in the base field of the characteristic polynomial of ``a``.

    Raises DoesNotSplit unless the minimal polynomial is a product of
    distinct linear factors over the field (i.e. ``a`` is diagonalizable).
    """
    f = a.field
    cp = characteristic_polynomial(a)
    rest = cp
    roots, mults = [], []
    for r in _candidate_roots(cp):
        r = f.value(r)
        k = 0
        while rest.degree > 0:
            q, exact = _deflate(rest, r)
            if not exact:
                break
            rest = q
            k += 1
        if k:
            roots.append(FieldScalar(f, r))
            mults.append(k)
        if rest.degree == 0:
            break
    if rest.degree > 0:
        raise DoesNotSplit(f"characteristic polynomial has an irreducible factor of degree {rest.degree}")
    prod = Matrix.identity(f, a.rows)
    for r in roots:
        prod = prod @ a.shift(r.value)
    if not prod.is_zero():
        raise DoesNotSplit("minimal polynomial has a repeated root; operator is not diagonalizable")
    return EigenvalueDiscovery(tuple(roots), tuple(mults), cp)


def eigenspace(a: Matrix, theta: Any) -> Subspace:
    """ker(a - theta I)."""
    return kernel(a.shift(theta))
