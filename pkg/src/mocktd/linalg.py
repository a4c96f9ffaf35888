"""Dense exact linear algebra over a :class:`~mocktd.exactfield.FieldSpec`.

Vectors are tuples of canonical field values (see :mod:`mocktd.exactfield`).
Matrices act on column vectors.  Subspaces always hold their basis in
reduced row-echelon form, so ``==`` on subspaces is equality of subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import FieldMismatchError, QuotientActionError, ShapeError
from .exactfield import FieldScalar, FieldSpec, Value

Vector = tuple


def _rref_rows(field: FieldSpec, rows: Sequence[Sequence[Value]], ncols: int):
    """Gauss-Jordan elimination on a list of rows.

    Returns ``(nonzero_rows, pivot_columns)``.  The pivot in each column is
    the topmost nonzero entry at or below the current row.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if m[i][c]:
                break
        else:
            continue
        m[r], m[i] = m[i], m[r]
        pr = m[r]
        if pr[c] != field.one:
            inv = field.inv(pr[c])
            pr = m[r] = [field.mul(x, inv) if x else x for x in pr]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                m[i] = [field.sub(x, field.mul(f, y)) if y else x for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def _kernel_vectors(field: FieldSpec, rows, ncols: int) -> list[Vector]:
    red, pivots = _rref_rows(field, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(tuple(v))
    return basis


class Matrix:
    """Immutable dense matrix with entries in a single field."""

    __slots__ = ("field", "rows", "cols", "_data", "_hash")

    def __init__(self, field: FieldSpec, entries: Iterable[Iterable[Any]]):
        data = tuple(tuple(field.value(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise ShapeError("matrices must have at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ShapeError("ragged matrix rows")
        self._init(field, data)

    def _init(self, field, data):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", len(data[0]))
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_values(cls, field: FieldSpec, data) -> Matrix:
        out = object.__new__(cls)
        out._init(field, tuple(tuple(r) for r in data))
        return out

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._from_values(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls._from_values(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, field: FieldSpec, values: Sequence[Any]) -> Matrix:
        vals = [field.value(v) for v in values]
        n = len(vals)
        return cls._from_values(
            field, [[vals[i] if i == j else field.zero for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[Any]]) -> Matrix:
        return cls(field, zip(*columns))

    @classmethod
    def block_diagonal(cls, *blocks: Matrix) -> Matrix:
        field = blocks[0].field
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        data = [[field.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            _same_field(field, b.field)
            for i, row in enumerate(b._data):
                data[r0 + i][c0 : c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls._from_values(field, data)

    # -- access ----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def values(self) -> tuple[tuple[Value, ...], ...]:
        return self._data

    def __getitem__(self, ij: tuple[int, int]) -> FieldScalar:
        i, j = ij
        return FieldScalar(self.field, self._data[i][j])

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self._data)]

    @property
    def T(self) -> Matrix:
        return Matrix._from_values(self.field, zip(*self._data))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def nonzero_entries(self) -> list[tuple[int, int, FieldScalar]]:
        return [
            (i, j, FieldScalar(self.field, x))
            for i, r in enumerate(self._data)
            for j, x in enumerate(r)
            if x
        ]

    def to_strings(self) -> list[list[str]]:
        render = self.field.render
        return [[render(x) for x in r] for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self._data)))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.to_strings())
        return f"Matrix({self.field}, [{body}])"

    # -- arithmetic ------------------------------------------------------------

    def _check_same_shape(self, other: Matrix):
        _same_field(self.field, other.field)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        add = self.field.add
        return Matrix._from_values(
            self.field, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        sub = self.field.sub
        return Matrix._from_values(
            self.field, [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix._from_values(self.field, [[neg(x) for x in r] for r in self._data])

    def scale(self, c: Any) -> Matrix:
        c = self.field.value(c)
        mul = self.field.mul
        return Matrix._from_values(self.field, [[mul(c, x) for x in r] for r in self._data])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        _same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        dot = self.field.dot
        cols = list(zip(*other._data))
        return Matrix._from_values(self.field, [[dot(r, c) for c in cols] for r in self._data])

    def apply(self, v: Sequence[Value]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} for {self.shape} matrix")
        dot = self.field.dot
        return tuple(dot(r, v) for r in self._data)

    def shift(self, c: Any) -> Matrix:
        """``self - c*I``."""
        c = self.field.value(c)
        sub = self.field.sub
        return Matrix._from_values(
            self.field,
            [[sub(x, c) if i == j else x for j, x in enumerate(r)] for i, r in enumerate(self._data)],
        )

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square() or k < 0:
            raise ShapeError("powers need a square matrix and a nonnegative exponent")
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out

    # -- derived subspaces -------------------------------------------------------

    def rank(self) -> int:
        return rref(self)[1]

    def kernel(self) -> Subspace:
        return kernel(self)

    def image(self) -> Subspace:
        """Column space."""
        return Subspace(self.field, self.rows, self.columns())

    def trace(self) -> Value:
        if not self.is_square():
            raise ShapeError("trace of a non-square matrix")
        s = self.field.zero
        for i in range(self.rows):
            s = self.field.add(s, self._data[i][i])
        return s


def _same_field(f: FieldSpec, g: FieldSpec):
    if f != g:
        raise FieldMismatchError(f"{f} vs {g}")


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form (zero rows kept at the bottom) and rank."""
    red, pivots = _rref_rows(m.field, m.values, m.cols)
    rank = len(red)
    pad = [tuple([m.field.zero] * m.cols)] * (m.rows - rank)
    return Matrix._from_values(m.field, red + pad), rank


def kernel(m: Matrix) -> Subspace:
    return Subspace(m.field, m.cols, _kernel_vectors(m.field, m.values, m.cols))


def solve_coordinates(field: FieldSpec, basis: Sequence[Vector], target: Vector) -> tuple | None:
    """Coefficients ``c`` with ``sum c_k basis_k == target``, or None if out of span.

    ``basis`` must be linearly independent.
    """
    n = len(target)
    k = len(basis)
    aug = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, pivots = _rref_rows(field, aug, k + 1)
    if k in pivots:
        return None
    if len(pivots) != k:
        raise ShapeError("basis vectors are linearly dependent")
    return tuple(row[k] for row in red)


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient_dim`` given by its canonical RREF basis.

    The constructor accepts any spanning list and canonicalizes it.
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        n = self.ambient_dim
        vecs = []
        for v in self.basis:
            v = tuple(self.field.value(x) for x in v)
            if len(v) != n:
                raise ShapeError(f"vector of length {len(v)} in ambient dimension {n}")
            vecs.append(v)
        red, _ = _rref_rows(self.field, vecs, n)
        object.__setattr__(self, "basis", tuple(red))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> Subspace:
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> Subspace:
        return Matrix.identity(field, n).image()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(v) if x) for v in self.basis]

    def _check(self, other: Subspace):
        _same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError(f"ambient dimensions {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> list[Vector]:
        """Rows ``y`` such that ``w`` lies in this subspace iff ``y . w == 0`` for all of them."""
        if not self.basis:
            return [tuple(r) for r in Matrix.identity(self.field, self.ambient_dim).values]
        return _kernel_vectors(self.field, self.basis, self.ambient_dim)

    def contains(self, x) -> bool:
        if isinstance(x, Subspace):
            self._check(x)
            return (self + x).dim == self.dim
        v = self.field.vector(x)
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        return Subspace(self.field, self.ambient_dim, self.basis + (v,)).dim == self.dim

    __contains__ = contains

    def intersect(self, other: Subspace) -> Subspace:
        """Kernel of the stacked system: coefficients of self's basis landing in other."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        ann = other.annihilator()
        dot = self.field.dot
        # coefficient c (len = dim self) gives v = sum c_k b_k; need y . v = 0 for y in ann
        system = [[dot(y, b) for b in self.basis] for y in ann]
        if not system:
            return self
        coeffs = _kernel_vectors(self.field, system, self.dim)
        return Subspace(self.field, self.ambient_dim, [_combine(self.field, c, self.basis) for c in coeffs])

    def map(self, op: Matrix) -> Subspace:
        """Image of this subspace under ``op``."""
        _check_op(op, self)
        return Subspace(self.field, op.rows, [op.apply(b) for b in self.basis])

    def is_invariant(self, op: Matrix) -> bool:
        _check_op(op, self)
        return all(self.contains(op.apply(b)) for b in self.basis)

    def as_matrix(self) -> Matrix:
        """Basis vectors as rows (the zero subspace gives a single zero row)."""
        if not self.basis:
            return Matrix.zeros(self.field, 1, self.ambient_dim)
        return Matrix._from_values(self.field, self.basis)

    def to_strings(self) -> list[list[str]]:
        render = self.field.render
        return [[render(x) for x in v] for v in self.basis]


def _combine(field: FieldSpec, coeffs, vectors) -> Vector:
    n = len(vectors[0])
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c:
            out = [field.add(o, field.mul(c, x)) if x else o for o, x in zip(out, v)]
    return tuple(out)


def _check_op(op: Matrix, space: Subspace):
    _same_field(op.field, space.field)
    if not op.is_square() or op.cols != space.ambient_dim:
        raise ShapeError(f"operator of shape {op.shape} on ambient dimension {space.ambient_dim}")


# -- invariant-subspace fixpoints ----------------------------------------------------


def generated_module_trace(seed: Subspace, ops: Sequence[Matrix]) -> tuple[Subspace, list[int]]:
    """Grow fixpoint plus the dimension after every round (last round is the stable one)."""
    for op in ops:
        _check_op(op, seed)
    w = seed
    dims = []
    while True:
        images = [op.apply(b) for op in ops for b in w.basis]
        nxt = Subspace(w.field, w.ambient_dim, w.basis + tuple(images))
        dims.append(nxt.dim)
        if nxt.dim == w.dim:
            return w, dims
        w = nxt


def generated_module(seed: Subspace, ops: Sequence[Matrix]) -> Subspace:
    """Smallest subspace containing ``seed`` and invariant under every op."""
    return generated_module_trace(seed, ops)[0]


def invariant_core_trace(container: Subspace, ops: Sequence[Matrix]) -> tuple[Subspace, list[int]]:
    """Shrink fixpoint plus the dimension after every round."""
    for op in ops:
        _check_op(op, container)
    field = container.field
    dot = field.dot
    w = container
    dims = []
    while True:
        if w.is_zero():
            dims.append(0)
            return w, dims
        ann = w.annihilator()
        # v = sum c_k b_k stays iff y . (op v) = 0 for every op and annihilator row y
        system = []
        for op in ops:
            imgs = [op.apply(b) for b in w.basis]
            system.extend([dot(y, im) for im in imgs] for y in ann)
        if not system:
            dims.append(w.dim)
            return w, dims
        coeffs = _kernel_vectors(field, system, w.dim)
        nxt = Subspace(field, w.ambient_dim, [_combine(field, c, w.basis) for c in coeffs])
        dims.append(nxt.dim)
        if nxt.dim == w.dim:
            return w, dims
        w = nxt


def invariant_core(container: Subspace, ops: Sequence[Matrix]) -> Subspace:
    """Largest subspace of ``container`` invariant under every op."""
    return invariant_core_trace(container, ops)[0]


# -- quotients -------------------------------------------------------------------------


def complete_basis(sub: Subspace, whole: Subspace | None = None) -> list[Vector]:
    """Lexicographically earliest completion of ``sub`` to a basis of ``whole``.

    Candidates are the canonical basis vectors of ``whole`` (the standard basis
    when ``whole`` is the full space), taken greedily in order.
    """
    if whole is None:
        whole = Subspace.full(sub.field, sub.ambient_dim)
    sub._check(whole)
    if not whole.contains(sub):
        raise ShapeError("subspace is not contained in the space to be completed")
    chosen = []
    span = sub
    for v in whole.basis:
        if span.dim == whole.dim:
            break
        bigger = Subspace(sub.field, sub.ambient_dim, span.basis + (v,))
        if bigger.dim > span.dim:
            chosen.append(v)
            span = bigger
    return chosen


def quotient_action(op: Matrix, w: Subspace, transversal: Sequence[Vector]) -> Matrix:
    """Matrix of the map induced by ``op`` on ``span(w, transversal) / w``.

    Column ``j`` holds the transversal coordinates of ``op @ t_j`` modulo ``w``.
    """
    _check_op(op, w)
    if not w.is_invariant(op):
        raise QuotientActionError("subspace is not invariant under the operator")
    field = op.field
    transversal = [field.vector(t) for t in transversal]
    k = len(transversal)
    if k == 0:
        raise QuotientActionError("empty transversal: quotient is zero")
    basis = transversal + list(w.basis)
    cols = []
    for t in transversal:
        coords = solve_coordinates(field, basis, op.apply(t))
        if coords is None:
            raise QuotientActionError("operator leaves span(w, transversal)")
        cols.append(coords[:k])
    return Matrix._from_values(field, [[cols[j][i] for j in range(k)] for i in range(k)])


# -- polynomials -------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with coefficients lowest degree first; zero is ``()``."""

    field: FieldSpec
    coefficients: tuple = ()

    def __post_init__(self):
        cs = [self.field.value(c) for c in self.coefficients]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable[Any]) -> Polynomial:
        p = cls(field, (field.one,))
        for r in roots:
            p = p * cls(field, (field.neg(field.value(r)), field.one))
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_monic(self) -> bool:
        return bool(self.coefficients) and self.coefficients[-1] == self.field.one

    def __mul__(self, other: Polynomial) -> Polynomial:
        _same_field(self.field, other.field)
        f = self.field
        if not self.coefficients or not other.coefficients:
            return Polynomial(f)
        out = [f.zero] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Polynomial(f, tuple(out))

    def __add__(self, other: Polynomial) -> Polynomial:
        _same_field(self.field, other.field)
        f = self.field
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        a = a + (f.zero,) * (n - len(a))
        b = b + (f.zero,) * (n - len(b))
        return Polynomial(f, tuple(f.add(x, y) for x, y in zip(a, b)))

    def __call__(self, x: Any) -> FieldScalar:
        f = self.field
        x = f.value(x)
        acc = f.zero
        for c in reversed(self.coefficients):
            acc = f.add(f.mul(acc, x), c)
        return FieldScalar(f, acc)

    def at_matrix(self, a: Matrix) -> Matrix:
        return poly_eval_at_matrix(self, a)

    def to_strings(self) -> list[str]:
        return [self.field.render(c) for c in self.coefficients]


def poly_eval_at_matrix(p: Polynomial, a: Matrix) -> Matrix:
    """Horner evaluation of ``p`` at the square matrix ``a``."""
    _same_field(p.field, a.field)
    if not a.is_square():
        raise ShapeError("polynomials are evaluated at square matrices only")
    n = a.rows
    acc = Matrix.zeros(a.field, n)
    for c in reversed(p.coefficients):
        acc = (acc @ a).shift(a.field.neg(c))
    return acc
