"""Exact arithmetic in the rational span of real radicals.

A :class:`Surd` is a finite sum ``sum_i q_i * rho_i`` with rational ``q_i`` and
canonical radicals ``rho_i = prod_p p**f_p`` (distinct primes ``p``, rational
``f_p`` in ``(0, 1)``).  Distinct canonical radicals are linearly independent
over the rationals, so a Surd is zero exactly when all of its coefficients
vanish, and equality tests never need floating point.  Signs of nonzero
values are certified with integer-root interval bounds.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

RadicalKey = tuple  # tuple[tuple[int, Fraction], ...], sorted by prime

Number = Union[int, Fraction, "Surd"]

_SIGN_PRECISIONS = (64, 128, 256, 512, 1024, 2048, 4096)


@lru_cache(maxsize=8192)
def factorize(n: int) -> tuple:
    """Prime factorization of a positive integer as ``((p, a), ...)``."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def iroot(x: int, n: int) -> int:
    """Floor of the real ``n``-th root of a nonnegative integer."""
    if x < 0:
        raise ValueError("iroot of a negative number")
    if x < 2 or n == 1:
        return x
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        s = ((n - 1) * r + x // r ** (n - 1)) // n
        if s >= r:
            break
        r = s
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def power_lower(base: int, exponent: Fraction, bits: int = 32) -> Fraction:
    """Rational lower bound of ``base ** exponent`` for ``base >= 1``, ``exponent >= 0``."""
    exponent = Fraction(exponent)
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return Fraction(base ** p)
    return Fraction(iroot((base ** p) << (q * bits), q), 1 << bits)


def power_upper(base: int, exponent: Fraction, bits: int = 32) -> Fraction:
    """Rational upper bound of ``base ** exponent`` for ``base >= 1``, ``exponent >= 0``."""
    exponent = Fraction(exponent)
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return Fraction(base ** p)
    return Fraction(iroot((base ** p) << (q * bits), q) + 1, 1 << bits)


def _key_mul(a: RadicalKey, b: RadicalKey) -> tuple[RadicalKey, Fraction]:
    if not a:
        return b, Fraction(1)
    if not b:
        return a, Fraction(1)
    merged = dict(a)
    factor = Fraction(1)
    for p, f in b:
        g = merged.get(p, Fraction(0)) + f
        if g >= 1:
            g -= 1
            factor *= p
        if g:
            merged[p] = g
        else:
            merged.pop(p, None)
    return tuple(sorted(merged.items())), factor


def _key_bounds(key: RadicalKey, bits: int) -> tuple[Fraction, Fraction]:
    lo = hi = Fraction(1)
    for p, f in key:
        lo *= power_lower(p, f, bits)
        hi *= power_upper(p, f, bits)
    return lo, hi


class Surd:
    """Immutable element of the rational span of canonical real radicals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[dict, Iterable] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for key, c in items:
            c = Fraction(c)
            if c:
                acc[key] = acc.get(key, Fraction(0)) + c
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def of(cls, x: Number) -> "Surd":
        if isinstance(x, Surd):
            return x
        return cls((((), Fraction(x)),))

    @classmethod
    def power(cls, base: int, exponent) -> "Surd":
        """Exact ``base ** exponent`` for a positive integer base and rational exponent."""
        exponent = Fraction(exponent)
        if base < 1:
            raise ValueError("radical base must be a positive integer")
        if exponent.denominator == 1:
            e = exponent.numerator
            return cls.of(Fraction(base) ** e)
        rational = Fraction(1)
        key = []
        for p, a in factorize(base):
            x = a * exponent
            whole = x.numerator // x.denominator
            frac = x - whole
            rational *= Fraction(p) ** whole
            if frac:
                key.append((p, frac))
        return cls(((tuple(key), rational),))

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(not k for k, _ in self._terms)

    def to_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[0][1]

    def rational_part(self) -> Fraction:
        for k, c in self._terms:
            if not k:
                return c
        return Fraction(0)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Number) -> "Surd":
        other = Surd.of(other)
        return Surd(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> "Surd":
        return Surd((k, -c) for k, c in self._terms)

    def __sub__(self, other: Number) -> "Surd":
        return self + (-Surd.of(other))

    def __rsub__(self, other: Number) -> "Surd":
        return Surd.of(other) - self

    def __mul__(self, other: Number) -> "Surd":
        if not isinstance(other, Surd):
            q = Fraction(other)
            return Surd((k, c * q) for k, c in self._terms)
        out = []
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                k, f = _key_mul(k1, k2)
                out.append((k, c1 * c2 * f))
        return Surd(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Surd.of(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    # bounds and signs -----------------------------------------------------
    def bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Certified rational enclosure ``lo <= value <= hi``."""
        lo = hi = Fraction(0)
        for key, c in self._terms:
            if not key:
                lo += c
                hi += c
                continue
            klo, khi = _key_bounds(key, bits)
            if c > 0:
                lo += c * klo
                hi += c * khi
            else:
                lo += c * khi
                hi += c * klo
        return lo, hi

    def sign(self) -> int:
        if not self._terms:
            return 0
        if self.is_rational():
            return 1 if self._terms[0][1] > 0 else -1
        for bits in _SIGN_PRECISIONS:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise ArithmeticError(f"could not certify the sign of {self}")

    def abs_upper(self) -> Fraction:
        """Rational upper bound of ``|value|``."""
        if self.is_rational():
            return abs(self.rational_part())
        lo, hi = self.bounds(32)
        return max(abs(lo), abs(hi))

    def abs_lower(self) -> Fraction:
        """Rational lower bound of ``|value|``; positive whenever the value is nonzero."""
        if self.is_rational():
            return abs(self.rational_part())
        if self.is_zero():
            return Fraction(0)
        for bits in _SIGN_PRECISIONS:
            lo, hi = self.bounds(bits)
            if lo > 0:
                return lo
            if hi < 0:
                return -hi
        raise ArithmeticError(f"could not separate {self} from zero")

    def __float__(self) -> float:
        if self.is_rational():
            return float(self.rational_part())
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        return f"Surd({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key, c in self._terms:
            if not key:
                parts.append(str(c))
            else:
                rad = "*".join(f"{p}^{f}" for p, f in key)
                parts.append(f"{c}*{rad}")
        return " + ".join(parts)


def compare(x: Number, y: Number) -> int:
    """Exact three-way comparison of two Surd-or-rational values."""
    if not isinstance(x, Surd) and not isinstance(y, Surd):
        d = Fraction(x) - Fraction(y)
        return (d > 0) - (d < 0)
    return (Surd.of(x) - Surd.of(y)).sign()
