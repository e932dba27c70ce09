"""Sparse multivariate polynomials over an exact field.

A polynomial is a map from exponent tuples to nonzero raw field payloads.
Monomials print in graded lexicographic order (highest first).
"""
from __future__ import annotations

from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import ArityMismatch, SymbolicBlowup
from .exactfield import Field, FieldScalar

MONOMIAL_CAP = 5 * 10 ** 6

Monomial = Tuple[int, ...]


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MultiPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Optional[Dict[Monomial, object]] = None,
                 cap: int = MONOMIAL_CAP):
        self.field = field
        self.nvars = nvars
        is_zero = field.is_zero
        self.terms = {m: c for m, c in (terms or {}).items() if not is_zero(c)}
        if len(self.terms) > cap:
            raise SymbolicBlowup(f"{len(self.terms)} monomials exceed cap {cap}")

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: Field, nvars: int, value) -> "MultiPoly":
        raw = field(value).value if not isinstance(value, FieldScalar) else value.value
        return cls(field, nvars, {(0,) * nvars: raw})

    @classmethod
    def variable(cls, field: Field, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise ArityMismatch(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(field, nvars, {mono: field.one})

    @classmethod
    def linear(cls, field: Field, nvars: int, coeffs: Dict[int, object]) -> "MultiPoly":
        """``sum coeffs[i] * x_i`` with raw payload coefficients."""
        terms = {}
        for i, c in coeffs.items():
            terms[tuple(1 if j == i else 0 for j in range(nvars))] = c
        return cls(field, nvars, terms)

    # arithmetic -------------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other).__name__}")
        if other.nvars != self.nvars or other.field != self.field:
            raise ArityMismatch(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables "
                                f"over {self.field} and {other.field}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        add, is_zero = self.field.add, self.field.is_zero
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = add(out[m], c)
                if is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return MultiPoly(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        neg = self.field.neg
        return MultiPoly(self.field, self.nvars, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            raw = self.field(other).value if not isinstance(other, FieldScalar) else other.value
            return self.scale(raw)
        self._check(other)
        f = self.field
        mul, add = f.mul, f.add
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = mul(c1, c2)
                if m in out:
                    out[m] = add(out[m], c)
                else:
                    out[m] = c
            if len(out) > MONOMIAL_CAP:
                raise SymbolicBlowup(f"product exceeds {MONOMIAL_CAP} monomials")
        return MultiPoly(f, self.nvars, out)

    __rmul__ = __mul__

    def scale(self, raw) -> "MultiPoly":
        if self.field.is_zero(raw):
            return MultiPoly(self.field, self.nvars)
        mul = self.field.mul
        return MultiPoly(self.field, self.nvars, {m: mul(c, raw) for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # queries ----------------------------------------------------------
    def is_identically_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, variables: Iterable[int]) -> int:
        idx = list(variables)
        return max((sum(m[i] for i in idx) for m in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def eval_raw(self, point: Sequence) -> object:
        if len(point) != self.nvars:
            raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        f = self.field
        mul, add, pw = f.mul, f.add, f.pow
        total = f.zero
        for m, c in self.terms.items():
            term = c
            for v, e in zip(point, m):
                if e:
                    term = mul(term, pw(v, e))
            total = add(total, term)
        return total

    def __call__(self, *point) -> FieldScalar:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        raw = [self.field(v).value for v in point]
        return FieldScalar(self.field, self.eval_raw(raw))

    def monomials(self):
        """(exponents, FieldScalar) pairs in graded-lex order, highest first."""
        for m in sorted(self.terms, key=_grlex_key, reverse=True):
            yield m, FieldScalar(self.field, self.terms[m])

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.monomials():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            text = str(c)
            if factors:
                mono = "*".join(factors)
                if text == "1":
                    text = mono
                elif text == "-1":
                    text = "-" + mono
                else:
                    text = f"{text}*{mono}"
            parts.append(text)
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.format()!r})"


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    p._check(q)
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    p._check(q)
    return p * q


def poly_eval(p: MultiPoly, point: Sequence) -> FieldScalar:
    return p(tuple(point))


def is_identically_zero(p: MultiPoly) -> bool:
    return p.is_identically_zero()


def variables(field: Field, nvars: int):
    return [MultiPoly.variable(field, nvars, i) for i in range(nvars)]
