"""Lazily evaluated exact reals with certified interval enclosures.

A :class:`Real` is an expression tree over rationals, ``tan(q*pi)`` and
``sin(q*pi)`` for rational ``q``.  Asking for ``x.interval(prec)`` evaluates
the tree with mpmath's interval context at ``prec`` bits, so every
enclosure contains the true value; the result is cached per precision.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, mp, nstr

@contextmanager
def working_precision(prec: int):
    old = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = old


def _coerce(x) -> "Real":
    if isinstance(x, Real):
        return x
    if isinstance(x, (int, Fraction)):
        return Rat(Fraction(x))
    if isinstance(x, str):
        return parse_real(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact real")


_UNSET = object()


class Real:
    __slots__ = ("_cache", "_exact")

    def __init__(self):
        self._cache: dict[int, object] = {}
        self._exact = _UNSET

    def interval(self, prec: int):
        v = self._cache.get(prec)
        if v is None:
            with working_precision(prec):
                v = self._eval(prec)
            self._cache[prec] = v
        return v

    def _eval(self, prec: int):
        raise NotImplementedError

    def exact(self) -> Fraction | None:
        """The value as a fraction when it is rational by construction."""
        return None

    def sign(self, prec: int) -> int | None:
        """Certified sign, or ``None`` when the enclosure straddles zero."""
        q = self.exact()
        if q is not None:
            return (q > 0) - (q < 0)
        v = self.interval(prec)
        if v.a > 0:
            return 1
        if v.b < 0:
            return -1
        return None

    def __add__(self, other): return _Op("+", self, _coerce(other))
    def __radd__(self, other): return _Op("+", _coerce(other), self)
    def __sub__(self, other): return _Op("-", self, _coerce(other))
    def __rsub__(self, other): return _Op("-", _coerce(other), self)
    def __mul__(self, other): return _Op("*", self, _coerce(other))
    def __rmul__(self, other): return _Op("*", _coerce(other), self)
    def __truediv__(self, other): return _Op("/", self, _coerce(other))
    def __rtruediv__(self, other): return _Op("/", _coerce(other), self)
    def __neg__(self): return _Op("neg", self)
    def __abs__(self): return _Op("abs", self)

    def to_text(self, prec: int) -> str:
        v = self.interval(prec)
        digits = int(prec * math.log10(2)) + 3
        with mp.workprec(prec + 16):
            mid = (mp.mpf(v.a) + mp.mpf(v.b)) / 2
            return nstr(mid, digits)


class Rat(Real):
    __slots__ = ("value",)

    def __init__(self, value):
        super().__init__()
        self.value = Fraction(value)

    def _eval(self, prec):
        return iv.mpf(self.value.numerator) / self.value.denominator

    def exact(self):
        return self.value

    def to_text(self, prec):
        return fraction_text(self.value)

    def __repr__(self):
        return f"Rat({fraction_text(self.value)})"


class TanPi(Real):
    """``tan(q * pi)`` for rational ``q`` strictly between -1/2 and 1/2."""

    __slots__ = ("q",)

    def __init__(self, q):
        super().__init__()
        self.q = Fraction(q)
        if not -Fraction(1, 2) < self.q < Fraction(1, 2):
            raise ValueError(f"tan({self.q}*pi) is outside the principal branch")

    def _eval(self, prec):
        if self.q == 0:
            return iv.mpf(0)
        return iv.tan(iv.pi * self.q.numerator / self.q.denominator)

    def exact(self):
        return Fraction(0) if self.q == 0 else None

    def to_text(self, prec):
        return f"tan({fraction_text(self.q)}*pi)"

    def __repr__(self):
        return f"TanPi({self.q})"


class SinPi(Real):
    __slots__ = ("q",)

    def __init__(self, q):
        super().__init__()
        self.q = Fraction(q)

    def _eval(self, prec):
        return iv.sin(iv.pi * self.q.numerator / self.q.denominator)

    def exact(self):
        return Fraction(0) if self.q.denominator == 1 else None

    def __repr__(self):
        return f"SinPi({self.q})"


class _Op(Real):
    __slots__ = ("op", "args")

    def __init__(self, op: str, *args: Real):
        super().__init__()
        self.op = op
        self.args = args

    def _eval(self, prec):
        vals = [a.interval(prec) for a in self.args]
        op = self.op
        if op == "+":
            return vals[0] + vals[1]
        if op == "-":
            return vals[0] - vals[1]
        if op == "*":
            return vals[0] * vals[1]
        if op == "/":
            return vals[0] / vals[1]
        if op == "neg":
            return -vals[0]
        if op == "abs":
            return abs(vals[0])
        if op == "min":
            lo = min(v.a for v in vals)
            hi = min(v.b for v in vals)
            return iv.mpf([lo, hi])
        raise AssertionError(op)

    def exact(self):
        if self._exact is _UNSET:
            self._exact = self._exact_value()
        return self._exact

    def _exact_value(self):
        qs = []
        for a in self.args:
            q = a.exact()
            if q is None:
                return None
            qs.append(q)
        op = self.op
        if op == "+":
            return qs[0] + qs[1]
        if op == "-":
            return qs[0] - qs[1]
        if op == "*":
            return qs[0] * qs[1]
        if op == "/":
            return qs[0] / qs[1] if qs[1] else None
        if op == "neg":
            return -qs[0]
        if op == "abs":
            return abs(qs[0])
        return min(qs)

    def __repr__(self):
        return f"{self.op}{self.args!r}"


def real_min(*xs: Real) -> Real:
    return _Op("min", *[_coerce(x) for x in xs])


def fraction_text(q: Fraction) -> str:
    """Decimal text when ``q`` has a terminating expansion, else ``p/q``."""
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = q * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


_TAN = re.compile(r"^tan\(\s*([^)*]+?)\s*\*\s*pi\s*\)$")


def parse_real(text: str) -> Real:
    """Parse ``"1.66"``, ``"-3/7"``, ``"1e-4"`` or ``"tan(3/14*pi)"``."""
    text = text.strip()
    m = _TAN.match(text)
    try:
        if m:
            return TanPi(Fraction(m.group(1)))
        return Rat(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a real literal: {text!r}") from exc
