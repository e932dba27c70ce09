"""Exact scalar arithmetic over Q, GF(p) and GF(p^k).

Every field hands out *raw* payloads for speed-critical code (``Fraction``
for Q, an int in ``[0, p)`` for GF(p), an int code ``sum c_i p^i`` for
GF(p^k)) and wraps them in :class:`FieldScalar` for the public API.

Scalar text grammar::

    Q          "a" or "a/b" with optional sign, b > 0
    GF(p)      decimal integer, reduced mod p
    GF(p^k)    "[c0,c1,...,c_{k-1}]" little-endian coefficients
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import (
    DivisionByZero,
    NonPrimeModulus,
    ReducibleModulusPolynomial,
    ScalarSyntaxError,
    ValueOutOfField,
)

RATIONALS = "rationals"
PRIME = "prime-field"
EXTENSION = "extension-field"

MAX_EXTENSION_ORDER = 2 ** 16

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_INT_RE = re.compile(r"\s*([+-]?\d+)\s*$")
_LIST_RE = re.compile(r"\s*\[([^\[\]]*)\]\s*$")


def _isprime(n: int) -> bool:
    from sympy import isprime

    return n > 1 and bool(isprime(n))


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: Optional[int] = None
    k: int = 1
    modulus: Optional[tuple] = None

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME, p=p)

    @classmethod
    def extension(cls, p: int, modulus: Sequence[int]) -> "FieldSpec":
        modulus = tuple(int(c) for c in modulus)
        return cls(EXTENSION, p=p, k=len(modulus) - 1, modulus=modulus)

    @classmethod
    def from_dict(cls, data: dict) -> "FieldSpec":
        kind = data.get("kind")
        if kind == RATIONALS:
            return cls.rationals()
        if kind == PRIME:
            return cls.prime(int(data["p"]))
        if kind == EXTENSION:
            spec = cls.extension(int(data["p"]), data["modulus"])
            if "k" in data and int(data["k"]) != spec.k:
                raise ValueError(f"extension degree {data['k']} does not match modulus length")
            return spec
        raise ValueError(f"unknown field kind {kind!r}")

    def to_dict(self) -> dict:
        if self.kind == RATIONALS:
            return {"kind": RATIONALS}
        if self.kind == PRIME:
            return {"kind": PRIME, "p": self.p}
        return {"kind": EXTENSION, "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def label(self) -> str:
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


class FieldScalar:
    """Immutable field element bound to its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: "Field", value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise TypeError(f"cannot mix {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction) and self.field.spec.kind == RATIONALS:
            return other
        return NotImplemented

    def _wrap(self, raw):
        return FieldScalar(self.field, raw)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self) -> "FieldScalar":
        return self._wrap(self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        o = self._coerce(other)
        return False if o is NotImplemented else self.value == o

    def __hash__(self):
        return hash((self.field.spec, self.value))

    @property
    def coeffs(self) -> tuple:
        """Little-endian coefficient list (extension fields); ``(value,)`` otherwise."""
        if self.field.spec.kind == EXTENSION:
            return self.field.digits(self.value)
        return (self.value,)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field}({self.field.format(self.value)!r})"


class Field:
    """Base class; subclasses implement raw arithmetic on payloads."""

    spec: FieldSpec
    characteristic: int
    order: Optional[int]
    zero = None
    one = None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return self.spec.label()

    def __call__(self, value) -> FieldScalar:
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise TypeError(f"{value!r} does not belong to {self}")
            return value
        if isinstance(value, str):
            return FieldScalar(self, self.parse(value))
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return FieldScalar(self, self.from_int(value))
        return FieldScalar(self, self.coerce_raw(value))

    def coerce_raw(self, value):
        raise TypeError(f"cannot convert {value!r} into {self}")

    def scalar(self, raw) -> FieldScalar:
        return FieldScalar(self, raw)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def elements(self) -> Iterator:
        raise TypeError(f"{self} is infinite")


class Rationals(Field):
    def __init__(self):
        self.spec = FieldSpec.rationals()
        self.characteristic = 0
        self.order = None
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def is_zero(a):
        return not a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def coerce_raw(self, value):
        if isinstance(value, Fraction):
            return value
        raise TypeError(f"cannot convert {value!r} into Q")

    def parse(self, text: str):
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ScalarSyntaxError(f"not a rational: {text!r}")
        num = int(m.group(1))
        if m.group(2) is None:
            return Fraction(num)
        den = int(m.group(2))
        if den == 0:
            raise ScalarSyntaxError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    @staticmethod
    def format(a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def random(self, rng, bound: int = 5):
        return Fraction(rng.randint(-bound, bound))


class PrimeField(Field):
    def __init__(self, p: int):
        self.spec = FieldSpec.prime(p)
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def parse(self, text: str):
        m = _INT_RE.match(text)
        if not m:
            raise ScalarSyntaxError(f"not an integer: {text!r}")
        return int(m.group(1)) % self.p

    @staticmethod
    def format(a) -> str:
        return str(a)

    def elements(self):
        return iter(range(self.p))

    def random(self, rng, bound=None):
        return rng.randrange(self.p)


def _poly_mod(a: list, m: Sequence[int], p: int) -> list:
    """Remainder of ``a`` modulo monic ``m`` over GF(p), little-endian lists."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top]
        if c:
            shift = top - dm
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
    return a[:dm] + [0] * max(0, dm - len(a))


def _divides(g: Sequence[int], f: Sequence[int], p: int) -> bool:
    return not any(_poly_mod(list(f), g, p))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= k/2."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for code in range(p ** deg):
            g = [(code // p ** i) % p for i in range(deg)] + [1]
            if _divides(g, modulus, p):
                return False
    return True


class ExtensionField(Field):
    """GF(p^k) with elements coded as ``sum c_i p^i``; multiplication via log tables."""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.spec = FieldSpec.extension(p, modulus)
        self.p = p
        self.k = self.spec.k
        self.modulus = self.spec.modulus
        self.characteristic = p
        self.order = p ** self.k
        self.zero = 0
        self.one = 1
        self._build_tables()

    def digits(self, code: int) -> tuple:
        p = self.p
        out = []
        for _ in range(self.k):
            code, r = divmod(code, p)
            out.append(r)
        return tuple(out)

    def encode(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + (c % self.p)
        return code

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    def _build_tables(self):
        from sympy import factorint

        q = self.order
        if q == 2:
            self._exp = [1, 1]
            self._log = {1: 0}
            return
        prime_factors = list(factorint(q - 1))

        def power(a, n):
            r = 1
            while n:
                if n & 1:
                    r = self._slow_mul(r, a)
                a = self._slow_mul(a, a)
                n >>= 1
            return r

        gen = next(g for g in range(2, q) if all(power(g, (q - 1) // r) != 1 for r in prime_factors))
        exp = [1] * (2 * (q - 1))
        for i in range(1, 2 * (q - 1)):
            exp[i] = self._slow_mul(exp[i - 1], gen)
        self._exp = exp
        self._log = [0] * q
        for i in range(q - 1):
            self._log[exp[i]] = i
        self.generator = gen

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.encode([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.p == 2:
            return a
        return self.encode([-x for x in self.digits(a)])

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.encode([x - y for x, y in zip(self.digits(a), self.digits(b))])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self}")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def pow(self, a, n: int):
        if a == 0:
            if n < 0:
                raise DivisionByZero(f"inverse of 0 in {self}")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def from_int(self, n: int):
        return n % self.p

    def parse(self, text: str):
        m = _LIST_RE.match(text)
        if not m:
            if _INT_RE.match(text):
                return int(text) % self.p
            raise ScalarSyntaxError(f"expected coefficient list like [c0,...,c{self.k - 1}]: {text!r}")
        parts = [s.strip() for s in m.group(1).split(",")] if m.group(1).strip() else []
        if len(parts) != self.k:
            raise ValueOutOfField(f"{text!r} has {len(parts)} coefficients, {self} needs {self.k}")
        coeffs = []
        for s in parts:
            if not re.fullmatch(r"\d+", s):
                raise ScalarSyntaxError(f"bad coefficient {s!r} in {text!r}")
            c = int(s)
            if c >= self.p:
                raise ValueOutOfField(f"coefficient {c} not in GF({self.p})")
            coeffs.append(c)
        return self.encode(coeffs)

    def format(self, a) -> str:
        return "[" + ",".join(str(c) for c in self.digits(a)) + "]"

    def elements(self):
        return iter(range(self.order))

    def random(self, rng, bound=None):
        return rng.randrange(self.order)


@functools.lru_cache(maxsize=None)
def make_field(spec: FieldSpec) -> Field:
    """Validated field handle for ``spec`` (cached, so handles compare by identity too)."""
    if spec.kind == RATIONALS:
        return Rationals()
    if spec.p is None or not _isprime(spec.p):
        raise NonPrimeModulus(f"{spec.p} is not prime")
    if spec.kind == PRIME:
        return PrimeField(spec.p)
    if spec.kind != EXTENSION:
        raise ValueError(f"unknown field kind {spec.kind!r}")
    modulus = spec.modulus
    if not modulus or len(modulus) < 2:
        raise ReducibleModulusPolynomial("modulus must have degree >= 1")
    if modulus[-1] % spec.p != 1:
        raise ReducibleModulusPolynomial(f"modulus {list(modulus)} is not monic")
    if any(not 0 <= c < spec.p for c in modulus):
        raise ValueOutOfField(f"modulus coefficients must lie in [0, {spec.p})")
    if spec.p ** spec.k > MAX_EXTENSION_ORDER:
        raise ValueOutOfField(f"GF({spec.p}^{spec.k}) exceeds the supported size 2^16")
    if not is_irreducible(modulus, spec.p):
        raise ReducibleModulusPolynomial(f"modulus {list(modulus)} is reducible over GF({spec.p})")
    return ExtensionField(spec.p, modulus)


QQ = make_field(FieldSpec.rationals())


def GF(p: int, modulus: Optional[Sequence[int]] = None) -> Field:
    if modulus is None:
        return make_field(FieldSpec.prime(p))
    return make_field(FieldSpec.extension(p, modulus))


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``GF(p)`` or ``GF(p,[c0,...,ck])``."""
    t = text.replace(" ", "")
    if t in ("Q", "QQ", "rationals"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", t)
    if m:
        return GF(int(m.group(1)))
    m = re.fullmatch(r"GF\((\d+),\[([\d,]+)\]\)", t)
    if m:
        return GF(int(m.group(1)), [int(c) for c in m.group(2).split(",")])
    raise ScalarSyntaxError(f"unknown field {text!r}")


def invert(a: FieldScalar) -> FieldScalar:
    return a.inverse()


def parse_scalar(field: Field, text: str) -> FieldScalar:
    return FieldScalar(field, field.parse(text))


def default_modulus(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible polynomial of degree k over GF(p)."""
    for code in range(p ** k):
        low = []
        c = code
        for _ in range(k):
            c, r = divmod(c, p)
            low.append(r)
        coeffs = tuple(low) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulusPolynomial(f"no irreducible polynomial of degree {k} over GF({p})")


def finite_field(q: int) -> Field:
    """GF(q) for a prime power q, using :func:`default_modulus` when q is not prime."""
    from sympy import factorint
    fac = factorint(q)
    if len(fac) != 1:
        raise NonPrimeModulus(f"{q} is not a prime power")
    (p, k), = fac.items()
    return GF(p) if k == 1 else GF(p, default_modulus(p, k))
