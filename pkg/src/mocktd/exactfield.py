"""Exact scalar fields: the rationals and prime fields GF(p).

A :class:`FieldSpec` does all arithmetic on *canonical values*: a reduced
:class:`fractions.Fraction` for Q, an ``int`` in ``[0, p)`` for GF(p).
Matrices and vectors store canonical values directly, so the hot loops never
allocate wrapper objects.  :class:`FieldScalar` is the user-facing immutable
value that carries its field along and overloads the usual operators.

Text encoding (both fields)::

    scalar := ['-'] digits ['/' digits]

Over GF(p) a fraction ``a/b`` means ``a * b^-1 mod p``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Union

from .errors import FieldError, FieldMismatchError, FieldZeroDivisionError, ScalarParseError

MAX_MODULUS = 2**31

_SCALAR_RE = re.compile(r"(-?)(\d+)(?:/(\d+))?")

Value = Union[Fraction, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldKind(enum.Enum):
    RATIONALS = "Q"
    PRIME = "GFp"


@dataclass(frozen=True)
class FieldSpec:
    """Q (``modulus is None``) or GF(p)."""

    kind: FieldKind
    modulus: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.modulus is not None:
                raise FieldError("the rationals take no modulus")
            return
        p = self.modulus
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError(f"modulus must be an integer, got {p!r}")
        if not 2 <= p < MAX_MODULUS:
            raise FieldError(f"modulus {p} outside [2, 2^31)")
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(FieldKind.PRIME, p)

    @classmethod
    def from_descriptor(cls, desc: dict) -> FieldSpec:
        """Inverse of :meth:`descriptor`: ``{"kind": "Q"}`` or ``{"kind": "GFp", "p": 7}``."""
        if not isinstance(desc, dict):
            raise FieldError(f"field descriptor must be an object, got {desc!r}")
        kind = desc.get("kind")
        if kind == "Q":
            if set(desc) != {"kind"}:
                raise FieldError(f"unexpected keys in Q descriptor: {sorted(set(desc) - {'kind'})}")
            return cls.rationals()
        if kind == "GFp":
            if set(desc) != {"kind", "p"}:
                raise FieldError("GFp descriptor needs exactly the keys 'kind' and 'p'")
            return cls.prime(desc["p"])
        raise FieldError(f"unknown field kind {kind!r}")

    def descriptor(self) -> dict:
        if self.is_rational:
            return {"kind": "Q"}
        return {"kind": "GFp", "p": self.modulus}

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    def __str__(self) -> str:
        return "Q" if self.is_rational else f"GF({self.modulus})"

    def __repr__(self) -> str:
        return f"FieldSpec({self})"

    # -- canonical values -----------------------------------------------------

    @property
    def zero(self) -> Value:
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self) -> Value:
        return Fraction(1) if self.modulus is None else 1

    def value(self, x: Any) -> Value:
        """Coerce ``x`` (int, Fraction, str, FieldScalar) to a canonical value."""
        if isinstance(x, FieldScalar):
            if x.field != self:
                raise FieldMismatchError(f"scalar over {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise FieldError("booleans are not field scalars")
        if isinstance(x, int):
            return Fraction(x) if self.modulus is None else x % self.modulus
        if isinstance(x, Fraction):
            if self.modulus is None:
                return x
            if x.denominator % self.modulus == 0:
                raise FieldZeroDivisionError(f"{x} has denominator divisible by {self.modulus}")
            return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
        raise FieldError(f"cannot interpret {x!r} as an element of {self}")

    def scalar(self, x: Any) -> FieldScalar:
        return FieldScalar(self, self.value(x))

    def vector(self, xs: Iterable[Any]) -> tuple:
        return tuple(self.value(x) for x in xs)

    def parse(self, text: str) -> Value:
        if not isinstance(text, str):
            raise ScalarParseError(f"expected a string, got {type(text).__name__}")
        m = _SCALAR_RE.fullmatch(text)
        if m is None:
            raise ScalarParseError(f"malformed scalar {text!r}")
        sign, num, den = m.groups()
        n = int(num)
        d = 1 if den is None else int(den)
        if d == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        if sign:
            n = -n
        if self.modulus is None:
            return Fraction(n, d)
        p = self.modulus
        if d % p == 0:
            raise ScalarParseError(f"denominator of {text!r} vanishes in {self}")
        return n * pow(d, -1, p) % p

    def render(self, v: Value) -> str:
        if self.modulus is None:
            v = Fraction(v)
            if v.denominator == 1:
                return str(v.numerator)
            return f"{v.numerator}/{v.denominator}"
        return str(v % self.modulus)

    # -- arithmetic on canonical values ----------------------------------------

    def add(self, a: Value, b: Value) -> Value:
        if self.modulus is None:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a: Value, b: Value) -> Value:
        if self.modulus is None:
            return a - b
        return (a - b) % self.modulus

    def mul(self, a: Value, b: Value) -> Value:
        if self.modulus is None:
            return a * b
        return a * b % self.modulus

    def neg(self, a: Value) -> Value:
        if self.modulus is None:
            return -a
        return -a % self.modulus

    def inv(self, a: Value) -> Value:
        if not a:
            raise FieldZeroDivisionError(f"inverse of zero in {self}")
        if self.modulus is None:
            return 1 / a
        return pow(a, -1, self.modulus)

    def div(self, a: Value, b: Value) -> Value:
        return self.mul(a, self.inv(b))

    def dot(self, xs: Iterable[Value], ys: Iterable[Value]) -> Value:
        s = sum(x * y for x, y in zip(xs, ys) if x and y)
        if self.modulus is None:
            return Fraction(s)
        return s % self.modulus


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


def parse_scalar(text: str, field: FieldSpec) -> FieldScalar:
    """Parse ``text`` into a canonical element of ``field``.

    >>> parse_scalar("-4/6", QQ)
    FieldScalar(Q, -2/3)
    >>> parse_scalar("1/2", GF(7))
    FieldScalar(GF(7), 4)
    """
    return FieldScalar(field, field.parse(text))


class FieldScalar:
    """Immutable element of a :class:`FieldSpec`.

    Binary operators accept another scalar of the same field or a plain
    ``int``/``Fraction``; mixing fields raises :class:`FieldMismatchError`.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: Any = 0):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.value(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    def _other(self, other) -> Value | None:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.value(other)
        return None

    def _wrap(self, v: Value) -> FieldScalar:
        out = object.__new__(FieldScalar)
        object.__setattr__(out, "field", self.field)
        object.__setattr__(out, "value", v)
        return out

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self.inverse() if k < 0 else self
        out = self._wrap(self.field.one)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> FieldScalar:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field.value(other)
            except FieldZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return f"FieldScalar({self.field}, {self})"
