"""Exact ground fields: the rationals (default) and prime fields GF(p)."""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class FieldError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``"num/den"`` or an integer string (ints are accepted as-is)."""
    if isinstance(text, bool):
        raise FieldError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise FieldError(f"rationals are serialized as strings, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise FieldError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise FieldError(f"zero denominator in {text!r}")
    return Fraction(num, den)


class Mod:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldError(f"{other} is not defined in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Mod(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    name = "rational"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Mod):
            raise FieldError("cannot lift a residue class to the rationals")
        if isinstance(value, str):
            return parse_rational(value)
        return Fraction(value)

    def parse(self, text) -> Fraction:
        return parse_rational(text)

    def describe(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p <= 3:
            raise FieldError(f"prime field characteristic must exceed 3, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"p{p}"

    def __call__(self, value) -> Mod:
        if isinstance(value, Mod):
            if value.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({value.p})")
            return value
        if isinstance(value, str):
            value = parse_rational(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} is not defined in GF({self.p})")
            return Mod(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return Mod(int(value), self.p)

    def parse(self, text) -> Mod:
        return self(parse_rational(text))

    def describe(self):
        return {"prime": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def field_from_name(name: str):
    """``"rational"`` or ``"pNNN"`` (as accepted by ``--field``)."""
    if name == "rational":
        return QQ
    m = re.fullmatch(r"p(\d+)", name or "")
    if m is None:
        raise FieldError(f"unknown field {name!r}; use 'rational' or 'p<prime>'")
    return PrimeField(int(m.group(1)))


def format_scalar(c) -> str:
    return str(c)
