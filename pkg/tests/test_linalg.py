import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mocktd import diameter2 as d2
from mocktd.errors import FieldMismatchError, QuotientActionError, ShapeError
from mocktd.exactfield import GF, QQ
from mocktd.linalg import (
    Matrix,
    Polynomial,
    Subspace,
    complete_basis,
    generated_module,
    generated_module_trace,
    invariant_core,
    invariant_core_trace,
    kernel,
    poly_eval_at_matrix,
    quotient_action,
    rref,
)

from ._support import FIELDS, random_matrix


def e(i, n=4, f=QQ):
    return f.vector([1 if j == i else 0 for j in range(n)])


def test_identity_is_neutral(field):
    rng = random.Random(1)
    a = random_matrix(rng, field, 3, 3)
    assert Matrix.identity(field, 3) @ a == a == a @ Matrix.identity(field, 3)


def test_nilpotent_square():
    n = Matrix(QQ, [[0, 1], [0, 0]])
    assert (n @ n).is_zero()


def test_family_product_against_hand_expansion():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    a, a_star = d2.system_matrices(p)
    # sum-of-products per entry, computed on plain ints
    expected = [[0, 0, 0, 0], [0, 2, 1, 0], [0, 0, 1, 1], [0, 1, 1, 5]]
    assert a @ a_star == Matrix(QQ, expected)


def test_shape_and_field_errors():
    with pytest.raises(ShapeError):
        Matrix(QQ, [[1, 2], [3, 4]]) @ Matrix(QQ, [[1, 2, 3]])
    with pytest.raises(FieldMismatchError):
        Matrix(QQ, [[1]]) + Matrix(GF(5), [[1]])
    with pytest.raises(ShapeError):
        Matrix(QQ, [[1, 2], [3]])


def test_rref_examples():
    m, r = rref(Matrix(QQ, [[1, 1], [1, 1]]))
    assert m == Matrix(QQ, [[1, 1], [0, 0]]) and r == 1
    i4 = Matrix.identity(GF(7), 4)
    assert rref(i4) == (i4, 4)


def test_rank_of_family_dual_corner_idempotent():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    es0 = d2.build_system(p).idempotents_star[0]
    assert es0.rank() == 1


def test_kernel_examples():
    assert kernel(Matrix(QQ, [[1, 1], [1, 1]])) == Subspace(QQ, 2, [[1, -1]])
    assert kernel(Matrix.identity(QQ, 3)).is_zero()


def test_family_middle_eigenspace_is_a_plane():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 2], QQ)
    a, _ = d2.system_matrices(p)
    assert kernel(a.shift(p.thetas[1])).dim == 2


def test_poly_eval_examples():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    a, _ = d2.system_matrices(p)
    assert poly_eval_at_matrix(Polynomial(QQ), a).is_zero()
    assert Polynomial.from_roots(QQ, [0, 1, 2]).at_matrix(a).is_zero()
    tau2 = Polynomial.from_roots(QQ, [0, 1])
    assert tau2.coefficients == QQ.vector([0, -1, 1])
    # (A - 0I)(A - 1I) frozen from two explicit multiplications
    expected = Matrix(QQ, [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [1, 2, 2, 2]])
    assert tau2.at_matrix(a) == expected == a @ a.shift(1)


def test_polynomial_zero_trimmed():
    assert Polynomial(QQ, [0, 0]).coefficients == ()
    assert Polynomial(QQ, [1, 2, 0]).degree == 1


def test_subspace_ops():
    line1 = Subspace(QQ, 2, [[1, 0]])
    line2 = Subspace(QQ, 2, [[0, 1]])
    diag = Subspace(QQ, 2, [[1, 1]])
    zero = Subspace.zero(QQ, 2)
    assert line1 + zero == line1
    assert line1 + line2 == Subspace.full(QQ, 2)
    assert line1 + diag == Subspace.full(QQ, 2)
    assert (line1 + line2).contains(diag)
    assert not line1.contains(diag)
    assert line1.intersect(diag).is_zero()
    assert Subspace.full(QQ, 2).intersect(diag) == diag
    plane_a = Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    plane_b = Subspace(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert plane_a.intersect(plane_b) == Subspace(QQ, 3, [[0, 1, 0]])
    assert Subspace(QQ, 2, [[2, 4], [1, 2]]) == Subspace(QQ, 2, [[1, 2]])
    with pytest.raises(ShapeError):
        line1 + Subspace.zero(QQ, 3)


def shift_matrix(f, n):
    return Matrix(f, [[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)])


def test_generated_module_examples(field):
    v = Subspace.full(field, 3)
    assert generated_module(v, [random_matrix(random.Random(2), field, 3, 3)]) == v
    seed = Subspace(field, 4, [e(0, f=field)])
    assert generated_module(seed, [shift_matrix(field, 4)]).is_full()


def test_generated_module_family_degenerate():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    s = d2.build_system(p)
    assert generated_module(s.idempotents_star[0].image(), [s.a, s.a_star]).is_full()


def test_invariant_core_examples(field):
    ops = [random_matrix(random.Random(3), field, 3, 3)]
    assert invariant_core(Subspace.full(field, 3), ops).is_full()
    assert invariant_core(Subspace.zero(field, 3), ops).is_zero()


def test_invariant_core_family_degenerate():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    s = d2.build_system(p)
    k = Subspace.full(QQ, 4).intersect(s.idempotents_star[0].kernel())
    assert invariant_core(k, [s.a, s.a_star]) == Subspace(QQ, 4, [[0, -1, 1, 0]])


def test_complete_basis_is_lexicographically_earliest():
    m = Subspace(QQ, 4, [[0, -3, 1, 0]])
    assert complete_basis(m) == [e(0), e(1), e(3)]
    assert complete_basis(Subspace.zero(QQ, 3)) == [e(i, 3) for i in range(3)]
    assert complete_basis(Subspace.full(QQ, 3)) == []


def test_quotient_action_examples(field):
    rng = random.Random(4)
    op = random_matrix(rng, field, 3, 3)
    zero = Subspace.zero(field, 3)
    assert quotient_action(op, zero, complete_basis(zero)) == op
    w = Subspace(field, 3, [[1, 1, 0]])
    trans = complete_basis(w)
    assert quotient_action(Matrix.identity(field, 3), w, trans) == Matrix.identity(field, 2)
    with pytest.raises(QuotientActionError):
        quotient_action(shift_matrix(field, 3), Subspace(field, 3, [[1, 0, 0]]), [e(1, 3, field), e(2, 3, field)])


def test_quotient_action_family_degenerate():
    p = d2.validate_params([0, 1, 2], [0, 1, 2], [1, 1, 1], QQ)
    a, _ = d2.system_matrices(p)
    m = Subspace(QQ, 4, [[0, -1, 1, 0]])
    assert quotient_action(a, m, complete_basis(m)) == Matrix(QQ, [[0, 0, 0], [1, 1, 0], [0, 1, 2]])


# -- properties ---------------------------------------------------------------------------


@st.composite
def matrices(draw, field, max_dim=5):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    seed = draw(st.integers(0, 2**32))
    rng = random.Random(seed)
    # sparse-ish entries so low ranks show up
    data = [[rng.choice([0, 0, 1, -1, 2, rng.randint(-5, 5)]) for _ in range(cols)] for _ in range(rows)]
    return Matrix(field, data)


@pytest.mark.parametrize("f", FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rref_idempotent_and_rank_nullity(f, data):
    m = data.draw(matrices(f))
    r, rank = rref(m)
    assert rref(r) == (r, rank)
    assert rank + kernel(m).dim == m.cols
    for v in kernel(m).basis:
        assert not any(m.apply(v))


@pytest.mark.parametrize("f", FIELDS, ids=str)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rank_of_product(f, data):
    a = data.draw(matrices(f))
    rng = random.Random(data.draw(st.integers(0, 2**32)))
    b = random_matrix(rng, f, a.cols, rng.randint(1, 5), lo=-1, hi=1)
    assert (a @ b).rank() <= min(a.rank(), b.rank())


@pytest.mark.parametrize("f", FIELDS, ids=str)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_fixpoints(f, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    ops = [random_matrix(rng, f, n, n, lo=-1, hi=1) for _ in range(rng.randint(1, 2))]
    # block-triangular op to guarantee nontrivial invariant subspaces sometimes
    if n >= 2 and rng.random() < 0.5:
        ops = [Matrix(f, [[x if (i < n // 2 or j >= n // 2) else 0 for j, x in enumerate(r)] for i, r in enumerate(op.values)]) for op in ops]
    seed_space = Subspace(f, n, [random_matrix(rng, f, 1, n).row(0) for _ in range(rng.randint(0, 2))])

    grown, dims = generated_module_trace(seed_space, ops)
    assert grown.contains(seed_space)
    assert all(grown.is_invariant(op) for op in ops)
    assert len(dims) <= n
    assert dims == sorted(dims)

    shrunk, dims = invariant_core_trace(seed_space, ops)
    assert seed_space.contains(shrunk)
    assert all(shrunk.is_invariant(op) for op in ops)
    assert len(dims) <= n
    assert dims == sorted(dims, reverse=True)


@pytest.mark.parametrize("f", FIELDS, ids=str)
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_quotient_action_is_multiplicative(f, seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    k = rng.randint(1, n - 1)

    def block_upper():
        # invariant subspace span(e_0..e_{k-1})
        return Matrix(f, [[(rng.randint(-2, 2) if (i < k or j >= k) else 0) for j in range(n)] for i in range(n)])

    op1, op2 = block_upper(), block_upper()
    w = Subspace(f, n, [e(i, n, f) for i in range(k)])
    trans = complete_basis(w)
    lhs = quotient_action(op1 @ op2, w, trans)
    assert lhs == quotient_action(op1, w, trans) @ quotient_action(op2, w, trans)
