"""Exact scalars: rationals and the cyclotomic field Q(zeta_24).

An element of Q(zeta_24) is stored in the power basis zeta^0..zeta^7 modulo
Phi_24(x) = x^8 - x^4 + 1, as eight integer numerators over one common
positive denominator.  That keeps the hot path (matrix products during group
closure, polynomial averaging) in plain integer arithmetic.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

import mpmath

__all__ = [
    "Rational",
    "CycNum",
    "ZETA_ORDER",
    "DEGREE",
    "zeta",
    "named_constants",
    "to_complex_approx",
    "as_cyc",
]

Rational = Fraction

ZETA_ORDER = 24
DEGREE = 8

Scalar = Union[int, Fraction, "CycNum"]


def _reduce_poly(c: list) -> list:
    # x^8 = x^4 - 1 (mod Phi_24)
    for m in range(len(c) - 1, DEGREE - 1, -1):
        v = c[m]
        if v:
            c[m - 4] += v
            c[m - 8] -= v
    return c[:DEGREE] + [0] * (DEGREE - len(c))


class CycNum:
    """Element sum_m c_m zeta^m of Q(zeta_24), zeta = exp(2 pi i / 24)."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable = (0,) * DEGREE, _den: int | None = None):
        if _den is not None:
            num = tuple(coeffs)
            den = _den
        else:
            fr = [Fraction(c) for c in coeffs]
            if len(fr) > DEGREE:
                fr = _reduce_poly(fr)
            fr = fr + [Fraction(0)] * (DEGREE - len(fr))
            den = 1
            for f in fr:
                den = den * f.denominator // gcd(den, f.denominator)
            num = tuple(int(f * den) for f in fr)
        g = den
        for v in num:
            g = gcd(g, v)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(v // g for v in num)
            den //= g
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den: int) -> "CycNum":
        return cls(num, _den=den)

    @classmethod
    def from_rational(cls, q) -> "CycNum":
        q = Fraction(q)
        return cls._raw((q.numerator,) + (0,) * (DEGREE - 1), q.denominator)

    # -- structure -------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self._den) for v in self._num)

    def key(self) -> tuple:
        """Hashable canonical form (numerators, denominator)."""
        return self._num, self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def size(self) -> int:
        return self._den.bit_length() + sum(abs(v).bit_length() for v in self._num)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = as_cyc(other)
        if o is NotImplemented:
            return NotImplemented
        if self._den == o._den:
            return CycNum._raw(tuple(a + b for a, b in zip(self._num, o._num)), self._den)
        d1, d2 = self._den, o._den
        return CycNum._raw(tuple(a * d2 + b * d1 for a, b in zip(self._num, o._num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(tuple(-a for a in self._num), self._den)

    def __sub__(self, other):
        o = as_cyc(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_cyc(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum._raw(tuple(a * q.numerator for a in self._num), self._den * q.denominator)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._num, other._num
        prod = [0] * (2 * DEGREE - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycNum._raw(tuple(_reduce_poly(prod)), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_24)")
            return self * (1 / Fraction(other))
        o = as_cyc(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_cyc(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the 8x8 rational system a*x = 1."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        if self.is_rational():
            return CycNum.from_rational(1 / self.to_rational())
        from .linalg import solve

        cols = []
        e = [Fraction(0)] * DEGREE
        for m in range(DEGREE):
            basis = [0] * DEGREE
            basis[m] = 1
            cols.append(list((self * CycNum._raw(tuple(basis), 1)).coeffs))
        mat = [[cols[m][r] for m in range(DEGREE)] for r in range(DEGREE)]
        e[0] = Fraction(1)
        x = solve(mat, e)
        if x is None:  # pragma: no cover - field, cannot happen
            raise ZeroDivisionError("singular multiplication matrix")
        return CycNum(x)

    def conjugate(self) -> "CycNum":
        # zeta^m -> zeta^(24 - m)
        c = [0] * (ZETA_ORDER)
        for m, v in enumerate(self._num):
            c[(-m) % ZETA_ORDER] += v
        return CycNum._raw(tuple(_reduce_poly(c)), self._den)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.to_rational()) if self.is_rational() else hash((self._num, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycNum({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # -- text form -------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text ``c0 + c1*z + ... + c7*z^7``; zero terms omitted."""
        parts = []
        for m, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = str(abs(c))
            term = mag if m == 0 else (f"{mag}*z" if m == 1 else f"{mag}*z^{m}")
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts) if parts else "0"

    _TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*z(?:\s*\^\s*(\d+))?)?\s*")

    @classmethod
    def from_text(cls, text: str) -> "CycNum":
        """Parse the canonical text form (also accepts ``z^m`` up to z^23 and bare ints)."""
        s = str(text).strip()
        if not s:
            raise ValueError("empty CycNum text")
        coeffs = [Fraction(0)] * ZETA_ORDER
        pos = 0
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse CycNum text {text!r} at position {pos}")
            sign, num, zpart, exp = m.groups()
            if not sign and not first:
                raise ValueError(f"missing operator in CycNum text {text!r} at position {pos}")
            if num is None and zpart is None:
                raise ValueError(f"dangling sign in CycNum text {text!r}")
            c = Fraction(num) if num is not None else Fraction(1)
            if sign == "-":
                c = -c
            k = 0 if zpart is None else (1 if exp is None else int(exp))
            if k >= ZETA_ORDER:
                k %= ZETA_ORDER
            coeffs[k] += c
            pos = m.end()
            first = False
        return cls(coeffs)


def as_cyc(x) -> CycNum:
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    return NotImplemented


ZERO = CycNum._raw((0,) * DEGREE, 1)
ONE = CycNum._raw((1,) + (0,) * (DEGREE - 1), 1)


def zeta(m: int = 1) -> CycNum:
    """zeta_24^m reduced to the power basis."""
    c = [0] * ZETA_ORDER
    c[m % ZETA_ORDER] = 1
    return CycNum._raw(tuple(_reduce_poly(c)), 1)


@lru_cache(maxsize=None)
def named_constants() -> dict[str, CycNum]:
    """sqrt2, sqrt3, i and omega3 = exp(2 pi i / 3) as elements of Q(zeta_24)."""
    return {
        "sqrt2": zeta(3) + zeta(-3),
        "sqrt3": zeta(2) + zeta(-2),
        "i": zeta(6),
        "omega3": zeta(8),
    }


def to_complex_approx(a: Scalar, precision_bits: int = 53) -> mpmath.mpc:
    """Numerical value of ``a`` at the requested binary precision."""
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    a = as_cyc(a)
    with mpmath.workprec(precision_bits + 16):
        z = mpmath.expjpi(mpmath.mpf(2) / ZETA_ORDER)
        total = mpmath.mpc(0)
        for m, c in enumerate(a.coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * z**m
    with mpmath.workprec(precision_bits):
        return +total
