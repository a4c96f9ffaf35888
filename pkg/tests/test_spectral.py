import itertools
import random

import pytest
import sympy

from mocktd import diameter2 as d2
from mocktd.errors import DoesNotSplit, DuplicateEigenvalue, ProductNotZero, ZeroIdempotent
from mocktd.exactfield import GF, QQ
from mocktd.linalg import Matrix, Polynomial
from mocktd.spectral import (
    characteristic_polynomial,
    discover_eigenvalues,
    eigenspace,
    primitive_idempotent,
    verify_diagonalizable,
)

from ._support import FIELDS, random_diagonalizable, random_matrix


def test_diagonal_idempotents():
    es = verify_diagonalizable(Matrix.diagonal(QQ, [2, 3]), [2, 3])
    assert es.idempotents == (Matrix(QQ, [[1, 0], [0, 0]]), Matrix(QQ, [[0, 0], [0, 1]]))


def test_nilpotent_is_rejected():
    with pytest.raises(ProductNotZero):
        verify_diagonalizable(Matrix(QQ, [[0, 1], [0, 0]]), [0])


def test_incomplete_spectrum_is_rejected():
    with pytest.raises(ProductNotZero):
        verify_diagonalizable(Matrix.diagonal(QQ, [1, 2, 3]), [1, 2])


def test_non_eigenvalue_is_rejected():
    with pytest.raises(ZeroIdempotent):
        verify_diagonalizable(Matrix.diagonal(QQ, [1, 2]), [1, 2, 5])


def test_duplicate_eigenvalue():
    with pytest.raises(DuplicateEigenvalue):
        verify_diagonalizable(Matrix.diagonal(GF(5), [1, 2]), [1, 2, 6])


def test_family_idempotents_match_closed_forms():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 2], QQ)
    a, a_star = d2.system_matrices(p)
    e, es = d2.closed_form_idempotents(p)
    assert verify_diagonalizable(a, p.thetas).idempotents == e
    assert verify_diagonalizable(a_star, p.theta_stars).idempotents == es


def test_discover_diagonal():
    found = discover_eigenvalues(Matrix.diagonal(QQ, [2, 3, 3]))
    assert [str(x) for x in found.eigenvalues] == ["2", "3"]
    assert found.multiplicities == (1, 2)


def test_discover_rotation_does_not_split():
    with pytest.raises(DoesNotSplit):
        discover_eigenvalues(Matrix(QQ, [[0, -1], [1, 0]]))


def test_discover_jordan_block_is_not_diagonalizable():
    with pytest.raises(DoesNotSplit):
        discover_eigenvalues(Matrix(QQ, [[2, 1], [0, 2]]))


def test_rotation_splits_mod_5():
    # x^2 + 1 = (x - 2)(x - 3) over GF(5)
    found = discover_eigenvalues(Matrix(GF(5), [[0, -1], [1, 0]]))
    assert [x.value for x in found.eigenvalues] == [2, 3]


def test_discover_family_operator():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    a, _ = d2.system_matrices(p)
    found = discover_eigenvalues(a)
    assert found.eigenvalues == p.thetas
    assert found.multiplicities == (1, 2, 1)
    assert found.charpoly == Polynomial.from_roots(QQ, [0, 1, 1, 2])


def test_discover_rational_roots():
    a = Matrix.diagonal(QQ, ["1/2", "-3/4", "1/2", 0])
    found = discover_eigenvalues(a)
    assert [str(x) for x in found.eigenvalues] == ["-3/4", "0", "1/2"]


@pytest.mark.parametrize("f", [QQ, GF(2), GF(3), GF(7)], ids=str)
def test_charpoly_against_sympy(f):
    rng = random.Random(11)
    lam = sympy.Symbol("lam")
    for n in range(1, 6):
        for _ in range(5):
            m = random_matrix(rng, f, n, n)
            ints = [[int(x) if f.is_rational else x for x in r] for r in m.values]
            expected = sympy.Poly(sympy.Matrix(ints).charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
            assert characteristic_polynomial(m) == Polynomial(f, [int(c) for c in expected])


def test_idempotents_independent_of_factor_order():
    rng = random.Random(5)
    a, thetas = random_diagonalizable(rng, QQ, 4)
    while len(thetas) < 3:
        a, thetas = random_diagonalizable(rng, QQ, 4)
    f = QQ
    for i in range(len(thetas)):
        others = [t for j, t in enumerate(thetas) if j != i]
        reference = primitive_idempotent(a, thetas, i)
        for perm in itertools.permutations(others):
            prod = Matrix.identity(f, a.rows)
            denom = f.scalar(1)
            for t in perm:
                prod = prod @ a.shift(t)
                denom = denom * (thetas[i] - t)
            assert prod.scale(denom.inverse()) == reference


@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_spectral_identities(f):
    rng = random.Random(1000 + f.characteristic)
    for _ in range(25):
        n = rng.randint(1, 5)
        a, thetas = random_diagonalizable(rng, f, n)
        es = verify_diagonalizable(a, thetas)
        ident = Matrix.identity(f, n)
        total = Matrix.zeros(f, n)
        recon = Matrix.zeros(f, n)
        for i, ei in enumerate(es.idempotents):
            total = total + ei
            recon = recon + ei.scale(thetas[i])
            assert ei.image() == eigenspace(a, thetas[i])
            for j, ej in enumerate(es.idempotents):
                assert ei @ ej == (ei if i == j else Matrix.zeros(f, n))
        assert total == ident
        assert recon == a
        assert sum(es.eigenspace(i).dim for i in range(len(thetas))) == n
