"""Exact algebra of interleaved strand sequences.

A :class:`SymbolicSequence` of modulus ``m`` assigns to every global index
``k >= 1`` the value of strand ``r = (k - 1) % m`` at the local index
``j = (k - 1) // m + 1``, unless ``k`` carries a finite exception.

A strand is a finite sum of monomials ``c * prod_b (alpha_b*j - d_b)**(-e_b)``
with nonnegative rational exponents and primitive affine bases
(``0 <= d_b < alpha_b``, ``gcd(alpha_b, d_b) = 1``).  User input only ever
uses the base ``j`` itself; shifted bases appear when sequences of different
moduli are brought onto a common modulus (``j -> t*j - s``).  The class is
closed under sums, products and that reindexing, and every question asked
here (limits, identically-zero tests, eventual sign, zero sets, threshold
counts) is decided exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

from .errors import IrrationalValue, ScanBudgetExceeded
from .radicals import Surd, compare, power_lower

SCAN_BUDGET = 2_000_000

Base = tuple  # (alpha, d) meaning alpha*j - d
Monomial = tuple  # ((base, exponent), ...) sorted by base

J_BASE = (1, 0)


def _frac(x) -> Fraction:
    if isinstance(x, Surd):
        return x.to_fraction()
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact rationals are required")
    return Fraction(x)


def as_number(x):
    """Normalize a value to ``Fraction`` when rational, else keep the Surd."""
    if isinstance(x, Surd):
        return x.to_fraction() if x.is_rational() else x
    return _frac(x)


def _make_monomial(factors: Iterable) -> tuple[Surd, Monomial]:
    """Merge ``(alpha, d, e)`` factors into a primitive monomial and its constant."""
    merged: dict = {}
    const = Surd.of(1)
    for alpha, d, e in factors:
        e = Fraction(e)
        if e < 0:
            raise ValueError("strand exponents must be nonnegative")
        if e == 0:
            continue
        if alpha < 1 or not 0 <= d < alpha:
            raise ValueError(f"invalid base {alpha}*j-{d}")
        g = math.gcd(alpha, d) if d else alpha
        if g > 1:
            const = const * Surd.power(g, -e)
            alpha, d = alpha // g, d // g
        merged[(alpha, d)] = merged.get((alpha, d), Fraction(0)) + e
    return const, tuple(sorted(merged.items()))


def _degree(mono: Monomial) -> Fraction:
    return sum((e for _, e in mono), Fraction(0))


# -- small exact polynomial helpers (coefficient lists, low degree first) ----
def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _series_mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for k, y in enumerate(b[: order + 1 - i]):
                out[i + k] += x * y
    return out


def _binomial_series(gamma: Fraction, e: Fraction, order: int) -> list:
    """Coefficients of ``(1 - gamma*y)**(-e)`` up to ``y**order``."""
    out = [Fraction(1)]
    c = Fraction(1)
    for n in range(order):
        c = c * (e + n) / (n + 1) * gamma
        out.append(c)
    return out


def _smallest_j(bound_terms: list, target: Fraction, start: int) -> int:
    """Smallest ``J >= start`` with ``sum M * J**(-g) < target`` (certified)."""
    if not bound_terms:
        return start

    def ok(j: int) -> bool:
        total = Fraction(0)
        for m, g in bound_terms:
            total += m / power_lower(j, g)
            if total >= target:
                return False
        return True

    if ok(start):
        return start
    lo, hi = start, start * 2
    while not ok(hi):
        lo, hi = hi, hi * 2
        if hi > 1 << 64:
            raise ScanBudgetExceeded("tail bound does not fit in 64 bits")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


class StrandExpr:
    """One strand: a finite sum of monomials in the local index ``j``.

    ``terms`` is a tuple of ``(monomial, coefficient)`` sorted by total
    exponent, where a monomial is a tuple of ``((alpha, d), exponent)`` and the
    coefficient is a :class:`~sumspec.radicals.Surd`.  The empty monomial
    carries the strand's limit.
    """

    __slots__ = ("terms", "_cache")

    def __init__(self, terms: Iterable = ()):
        acc: dict = {}
        for mono, c in terms:
            const, mono = _make_monomial((a, d, e) for (a, d), e in mono)
            c = Surd.of(c) * const
            acc[mono] = acc.get(mono, Surd.of(0)) + c
        self.terms = tuple(
            sorted(((m, c) for m, c in acc.items() if not c.is_zero()),
                   key=lambda t: (_degree(t[0]), t[0]))
        )
        self._cache: dict = {}

    # construction ---------------------------------------------------------
    @classmethod
    def from_terms(cls, pairs: Iterable) -> "StrandExpr":
        """Build ``sum c * j**(-e)`` from ``(coeff, exponent)`` pairs."""
        out = []
        for c, e in pairs:
            e = Fraction(e)
            out.append(((((1, 0), e),) if e else (), _frac(c)))
        return cls(out)

    @classmethod
    def constant(cls, c) -> "StrandExpr":
        return cls([((), _frac(c))])

    @classmethod
    def zero(cls) -> "StrandExpr":
        return cls()

    @classmethod
    def coerce(cls, x) -> "StrandExpr":
        if isinstance(x, StrandExpr):
            return x
        if isinstance(x, (int, Fraction, str)):
            return cls.constant(Fraction(x))
        return cls.from_terms(x)

    # algebra ----------------------------------------------------------------
    def __add__(self, other: "StrandExpr") -> "StrandExpr":
        return StrandExpr(self.terms + StrandExpr.coerce(other).terms)

    def __neg__(self) -> "StrandExpr":
        return StrandExpr((m, -c) for m, c in self.terms)

    def __sub__(self, other: "StrandExpr") -> "StrandExpr":
        return self + (-StrandExpr.coerce(other))

    def __mul__(self, other) -> "StrandExpr":
        if not isinstance(other, StrandExpr):
            other = StrandExpr.constant(other)
        out = []
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                out.append((m1 + m2, c1 * c2))
        return StrandExpr(out)

    __rmul__ = __mul__

    def substitute(self, t: int, s: int) -> "StrandExpr":
        """The strand ``j -> f(t*j - s)`` for ``t >= 1``, ``0 <= s < t``."""
        if t == 1:
            return self
        out = []
        for mono, c in self.terms:
            out.append((tuple(((a * t, a * s + d), e) for (a, d), e in mono), c))
        return StrandExpr(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, StrandExpr) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    # inspection -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def limit(self) -> Fraction:
        if self.terms and not self.terms[0][0]:
            return self.terms[0][1].to_fraction()
        return Fraction(0)

    def nonconstant(self) -> tuple:
        return tuple(t for t in self.terms if t[0])

    @property
    def is_rational_valued(self) -> bool:
        """True when every value ``f(j)`` is rational (integer exponents, rational coefficients)."""
        r = self._cache.get("rational")
        if r is None:
            r = all(c.is_rational() and all(e.denominator == 1 for _, e in m)
                    for m, c in self.terms)
            self._cache["rational"] = r
        return r

    def simple_terms(self):
        """``[(coeff, exponent), ...]`` when the strand uses only the base ``j``, else None."""
        out = []
        for mono, c in self.terms:
            if not c.is_rational() or any(b != J_BASE for b, _ in mono):
                return None
            out.append((c.to_fraction(), _degree(mono)))
        return out

    # evaluation ---------------------------------------------------------------
    def value(self, j: int):
        """Exact value at local index ``j >= 1``: a Fraction, or a Surd when irrational."""
        if j < 1:
            raise ValueError("local index must be >= 1")
        if self.is_rational_valued:
            plan = self._cache.get("plan")
            if plan is None:
                plan = []
                for mono, c in self.terms:
                    q = c.to_fraction()
                    plan.append((q.numerator, q.denominator,
                                 tuple((a, d, int(e)) for (a, d), e in mono)))
                self._cache["plan"] = plan
            num, den = 0, 1
            for p, q, facs in plan:
                for a, d, e in facs:
                    q *= (a * j - d) ** e
                num = num * q + p * den
                den *= q
            return Fraction(num, den)
        total = Surd.of(0)
        for mono, c in self.terms:
            term = c
            for (a, d), e in mono:
                term = term * Surd.power(a * j - d, -e)
            total = total + term
        return as_number(total)

    def value_float(self, j: int) -> float:
        total = 0.0
        for mono, c in self.terms:
            term = float(c)
            for (a, d), e in mono:
                term *= float(a * j - d) ** (-float(e))
            total += term
        return total

    # exact asymptotics --------------------------------------------------------
    def nonconstant_vanishes(self) -> bool:
        """True when ``f(j) - limit`` is identically zero.

        Terms are grouped by their radical class (the canonical radical of
        the coefficient and the fractional parts of the exponents); classes
        are linearly independent over the rational functions, so the strand
        is constant exactly when each class's rational function vanishes.
        """
        r = self._cache.get("vanishes")
        if r is not None:
            return r
        classes: dict = {}
        for mono, c in self.nonconstant():
            frac_key = []
            int_part = []
            for base, e in mono:
                n = e.numerator // e.denominator
                f = e - n
                if f:
                    frac_key.append((base, f))
                if n:
                    int_part.append((base, n))
            for rkey, q in c.terms:
                cls = classes.setdefault((rkey, tuple(frac_key)), [])
                cls.append((tuple(int_part), q))
        r = True
        for items in classes.values():
            if len(items) == 1:
                r = False
                break
            top: dict = {}
            for mono, _ in items:
                for base, n in mono:
                    top[base] = max(top.get(base, 0), n)
            numer = [Fraction(0)]
            for mono, q in items:
                have = dict(mono)
                poly = [q]
                for (a, d), n in top.items():
                    for _ in range(n - have.get((a, d), 0)):
                        poly = _poly_mul(poly, [Fraction(-d), Fraction(a)])
                numer = _poly_add(numer, poly)
            if any(numer):
                r = False
                break
        self._cache["vanishes"] = r
        return r

    def _expansion_data(self):
        data = self._cache.get("expansion")
        if data is None:
            data = []
            for mono, c in self.nonconstant():
                scale = c
                for (a, d), e in mono:
                    if a > 1:
                        scale = scale * Surd.power(a, -e)
                data.append((_degree(mono), scale, mono))
            self._cache["expansion"] = data
        return data

    def _series(self, mono: Monomial, order: int) -> list:
        out = [Fraction(1)] + [Fraction(0)] * order
        for (a, d), e in mono:
            if d:
                out = _series_mul(out, _binomial_series(Fraction(d, a), e, order), order)
        return out

    def asymptotics(self):
        """Leading behaviour of ``f(j) - limit``.

        Returns ``(order, coeff, remainder)`` such that for all ``j >= 2``::

            |f(j) - limit - coeff * j**(-order)| <= sum(M * j**(-order - g) for M, g in remainder)

        with every ``g > 0`` and ``coeff`` a nonzero Surd.  Returns None when
        the strand is constant.
        """
        if "asym" in self._cache:
            return self._cache["asym"]
        if self.nonconstant_vanishes():
            self._cache["asym"] = None
            return None
        data = self._expansion_data()
        emin = min(E for E, _, _ in data)
        depth = 8
        while True:
            series = [self._series(mono, depth) for _, _, mono in data]
            orders = sorted({E + n for E, _, _ in data for n in range(depth + 1)
                             if E + n <= emin + depth})
            found = None
            for o in orders:
                a = Surd.of(0)
                for (E, scale, _), ser in zip(data, series):
                    n = o - E
                    if n >= 0 and n.denominator == 1 and n <= depth:
                        if ser[int(n)]:
                            a = a + scale * ser[int(n)]
                if not a.is_zero():
                    found = (o, a)
                    break
            if found is not None:
                break
            depth *= 2
            if depth > 1024:
                raise ArithmeticError("asymptotic expansion did not terminate")
        order, coeff = found
        remainder = []
        for E, scale, _ in data:
            k = math.floor(order - E) if E <= order else -1
            m = scale.abs_upper() * 2 ** math.ceil(E) * 2 ** (k + 1)
            remainder.append((m, E + k + 1 - order))
        result = (order, coeff, tuple(remainder))
        self._cache["asym"] = result
        return result

    def coarse_bound(self, gap: Fraction) -> int:
        """Smallest ``J`` with ``|f(j) - limit| < gap`` certified for all ``j >= J``."""
        terms = [(c.abs_upper(), _degree(m)) for m, c in self.nonconstant()]
        return _smallest_j(terms, Fraction(gap), 1)

    def tail_sign(self, threshold) -> tuple[int, int]:
        """``(sign, J)`` with ``sign(f(j) - threshold) == sign`` for every ``j >= J``.

        A zero sign means the strand is identically equal to ``threshold``.
        """
        threshold = Fraction(threshold)
        key = ("tail", threshold)
        if key in self._cache:
            return self._cache[key]
        diff = self.limit - threshold
        if diff:
            out = (1 if diff > 0 else -1, self.coarse_bound(abs(diff)))
        elif self.nonconstant_vanishes():
            out = (0, 1)
        else:
            order, coeff, remainder = self.asymptotics()
            J = _smallest_j(list(remainder), coeff.abs_lower(), 2)
            out = (coeff.sign(), J)
        self._cache[key] = out
        return out

    def eventually_within(self, eps) -> tuple[bool, int]:
        """``(inside, J)``: for ``j >= J`` membership in ``|f(j)| <= eps`` equals ``inside``."""
        s_hi, j_hi = self.tail_sign(eps)
        s_lo, j_lo = self.tail_sign(-Fraction(eps))
        return (s_hi <= 0 and s_lo >= 0), max(j_hi, j_lo)

    def eventually_zero(self) -> tuple[bool, int]:
        """``(identically_zero, J)``: beyond ``J`` the strand never vanishes unless identically zero."""
        s, J = self.tail_sign(0)
        return s == 0, J

    # display -------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms:
            coeff = str(c.to_fraction()) if c.is_rational() else f"({c})"
            if not mono:
                parts.append(coeff)
                continue
            facs = []
            for (a, d), e in mono:
                base = "j" if (a, d) == J_BASE else f"({a}j-{d})" if d else f"({a}j)"
                facs.append(f"{base}^-{e}")
            parts.append(coeff + "*" + "*".join(facs))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"StrandExpr({self})"


@dataclass(frozen=True)
class SymbolicSequence:
    """Interleaved strands plus finitely many exceptional values."""

    modulus: int
    strands: tuple
    exceptions: tuple = ()

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        strands = tuple(StrandExpr.coerce(s) for s in self.strands)
        if len(strands) != self.modulus:
            raise ValueError(f"expected {self.modulus} strands, got {len(strands)}")
        items = self.exceptions.items() if isinstance(self.exceptions, dict) else self.exceptions
        exc = tuple(sorted((int(k), as_number(v)) for k, v in items))
        keys = [k for k, _ in exc]
        if len(set(keys)) != len(keys) or any(k < 1 for k in keys):
            raise ValueError("exception indices must be distinct positive integers")
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "exceptions", exc)

    @classmethod
    def from_strands(cls, strands: Sequence, exceptions=None) -> "SymbolicSequence":
        return cls(len(strands), tuple(strands), tuple((exceptions or {}).items()))

    @classmethod
    def constant(cls, c) -> "SymbolicSequence":
        return cls(1, (StrandExpr.constant(c),))

    @classmethod
    def zero(cls) -> "SymbolicSequence":
        return cls(1, (StrandExpr.zero(),))

    @property
    def exception_map(self) -> dict:
        return dict(self.exceptions)

    def locate(self, k: int) -> tuple[int, int]:
        """``(strand, local index)`` of global index ``k``."""
        return (k - 1) % self.modulus, (k - 1) // self.modulus + 1

    def __str__(self) -> str:
        body = "; ".join(f"strand {r}: {s}" for r, s in enumerate(self.strands))
        for k, v in self.exceptions:
            body += f"; except {k} -> {v}"
        return f"seq mod {self.modulus} {{ {body} }}"


def global_index(r: int, j: int, modulus: int) -> int:
    return (j - 1) * modulus + r + 1


def seq_value(s: SymbolicSequence, k: int):
    """Exact value at ``k``: a Fraction when rational, else a Surd."""
    if k < 1:
        raise ValueError("index must be >= 1")
    for key, v in s.exceptions:
        if key == k:
            return v
    r, j = s.locate(k)
    return s.strands[r].value(j)


def seq_eval(s: SymbolicSequence, k: int) -> Fraction:
    """Exact rational value at ``k``; raises IrrationalValue otherwise."""
    v = seq_value(s, k)
    if isinstance(v, Surd):
        raise IrrationalValue(f"value at k={k} is irrational ({v}); use seq_eval_bounds")
    return v


def seq_eval_bounds(s: SymbolicSequence, k: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of the value at ``k``."""
    v = seq_value(s, k)
    if isinstance(v, Surd):
        return v.bounds(bits)
    return v, v


def _refine(s: SymbolicSequence, modulus: int) -> SymbolicSequence:
    m = s.modulus
    if modulus == m:
        return s
    if modulus % m:
        raise ValueError(f"modulus {modulus} is not a multiple of {m}")
    t = modulus // m
    strands = []
    for r2 in range(modulus):
        r, u = r2 % m, r2 // m
        strands.append(s.strands[r].substitute(t, t - 1 - u))
    return SymbolicSequence(modulus, tuple(strands), s.exceptions)


def refine_common(seqs: Sequence[SymbolicSequence]) -> list:
    """Rewrite all sequences on the common modulus ``lcm(m_i)``."""
    if not seqs:
        raise ValueError("refine_common needs at least one sequence")
    modulus = reduce(math.lcm, (s.modulus for s in seqs))
    return [_refine(s, modulus) for s in seqs]


def _combine(a: SymbolicSequence, b: SymbolicSequence, strand_op, value_op) -> SymbolicSequence:
    a2, b2 = refine_common([a, b])
    strands = tuple(strand_op(x, y) for x, y in zip(a2.strands, b2.strands))
    keys = sorted({k for k, _ in a.exceptions} | {k for k, _ in b.exceptions})
    exc = tuple((k, as_number(value_op(Surd.of(seq_value(a, k)), Surd.of(seq_value(b, k)))))
                for k in keys)
    return SymbolicSequence(a2.modulus, strands, exc)


def seq_add(a: SymbolicSequence, b: SymbolicSequence) -> SymbolicSequence:
    """Pointwise sum."""
    return _combine(a, b, lambda x, y: x + y, lambda x, y: x + y)


def seq_mul(a: SymbolicSequence, b: SymbolicSequence) -> SymbolicSequence:
    """Pointwise product."""
    return _combine(a, b, lambda x, y: x * y, lambda x, y: x * y)


def seq_scale(s: SymbolicSequence, c) -> SymbolicSequence:
    c = _frac(c)
    return SymbolicSequence(s.modulus, tuple(x * c for x in s.strands),
                            tuple((k, as_number(Surd.of(v) * c)) for k, v in s.exceptions))


def seq_limit_points(s: SymbolicSequence) -> frozenset:
    """Limit points of the value set: the strand limits."""
    return frozenset(st.limit for st in s.strands)


def seq_tends_to_zero(s: SymbolicSequence) -> bool:
    return all(st.limit == 0 for st in s.strands)


# -- index sets ---------------------------------------------------------------
@dataclass(frozen=True)
class IndexSet:
    """Exact description of a set of global indices.

    ``cofinal`` lists ``(strand, excluded)`` pairs: every index on that strand
    belongs to the set except the finitely many ``excluded`` ones.  ``finite``
    lists the members lying on the remaining strands.
    """

    modulus: int
    cofinal: tuple = ()
    finite: tuple = ()

    def __post_init__(self):
        cof = tuple(sorted((int(r), tuple(sorted(ex))) for r, ex in self.cofinal))
        object.__setattr__(self, "cofinal", cof)
        object.__setattr__(self, "finite", tuple(sorted(self.finite)))

    @property
    def cofinal_strands(self) -> tuple:
        return tuple(r for r, _ in self.cofinal)

    @property
    def is_finite(self) -> bool:
        return not self.cofinal

    def __contains__(self, k: int) -> bool:
        r = (k - 1) % self.modulus
        for s, ex in self.cofinal:
            if s == r:
                return k not in ex
        return k in self.finite

    def complement(self) -> "IndexSet":
        cof_strands = dict(self.cofinal)
        finite_by_strand: dict = {}
        for k in self.finite:
            finite_by_strand.setdefault((k - 1) % self.modulus, []).append(k)
        new_cof = [(r, finite_by_strand.get(r, ())) for r in range(self.modulus)
                   if r not in cof_strands]
        new_fin = [k for ex in cof_strands.values() for k in ex]
        return IndexSet(self.modulus, tuple(new_cof), tuple(new_fin))

    def refined(self, modulus: int) -> "IndexSet":
        if modulus % self.modulus:
            raise ValueError("can only refine to a multiple of the modulus")
        t = modulus // self.modulus
        cof = []
        for r, ex in self.cofinal:
            for i in range(t):
                r2 = r + i * self.modulus
                cof.append((r2, tuple(k for k in ex if (k - 1) % modulus == r2)))
        return IndexSet(modulus, tuple(cof), self.finite)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        m = math.lcm(self.modulus, other.modulus)
        a, b = self.refined(m), other.refined(m)
        acof, bcof = dict(a.cofinal), dict(b.cofinal)
        cof = [(r, tuple(set(acof[r]) | set(bcof[r]))) for r in acof if r in bcof]
        fin = {k for k in a.finite if k in b} | {k for k in b.finite if k in a}
        return IndexSet(m, tuple(cof), tuple(fin))

    def union(self, other: "IndexSet") -> "IndexSet":
        return self.complement().intersection(other.complement()).complement()

    def difference(self, other: "IndexSet") -> "IndexSet":
        return self.intersection(other.complement())

    def symmetric_difference(self, other: "IndexSet"):
        """Finite symmetric difference as a sorted tuple, or None when it is infinite."""
        m = math.lcm(self.modulus, other.modulus)
        a, b = self.refined(m), other.refined(m)
        if a.cofinal_strands != b.cofinal_strands:
            return None
        cand = set(a.finite) | set(b.finite)
        for (_, ex1), (_, ex2) in zip(a.cofinal, b.cofinal):
            cand |= set(ex1) | set(ex2)
        return tuple(sorted(k for k in cand if (k in a) != (k in b)))

    def members_upto(self, n: int) -> list:
        return [k for k in range(1, n + 1) if k in self]


@dataclass(frozen=True)
class CountResult:
    """Finite(count, witness_indices) or Infinite(witness_strand)."""

    finite: bool
    count: int | None = None
    witness_indices: tuple = ()
    witness_strand: int | None = None

    def __post_init__(self):
        if self.finite and self.count != len(self.witness_indices):
            raise ValueError("finite count must equal the number of witness indices")
        if not self.finite and self.witness_strand is None:
            raise ValueError("infinite count needs a witness strand")

    @classmethod
    def Finite(cls, indices: Iterable) -> "CountResult":
        idx = tuple(sorted(indices))
        return cls(True, len(idx), idx)

    @classmethod
    def Infinite(cls, strand: int) -> "CountResult":
        return cls(False, None, (), strand)

    @classmethod
    def of(cls, index_set: IndexSet) -> "CountResult":
        if index_set.cofinal:
            return cls.Infinite(index_set.cofinal[0][0])
        return cls.Finite(index_set.finite)


def _abs_le(v, eps: Fraction) -> bool:
    if isinstance(v, Fraction):
        return abs(v) <= eps
    return compare(v, eps) <= 0 and compare(v, -eps) >= 0


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, Fraction) else v.is_zero()


def _joint_index_set(seqs: Sequence[SymbolicSequence], eventual, member) -> IndexSet:
    """Shared scan: ``eventual(strand) -> (inside, J)``, ``member(values) -> bool``."""
    seqs = refine_common(seqs)
    M = seqs[0].modulus
    cofinal, finite = [], []
    for r in range(M):
        strands = [s.strands[r] for s in seqs]
        info = [eventual(st) for st in strands]
        all_in = all(inside for inside, _ in info)
        if all_in:
            limit = max(J for _, J in info)
        else:
            limit = min(J for inside, J in info if not inside)
        if limit - 1 > SCAN_BUDGET:
            raise ScanBudgetExceeded(f"strand {r} needs a scan to j={limit}")
        # cofinal strands record their non-members, the others their members
        hits = [global_index(r, j, M) for j in range(1, limit)
                if all(member(st.value(j)) for st in strands) != all_in]
        if all_in:
            cofinal.append([r, hits])
        else:
            finite.extend(hits)
    special = sorted({k for s in seqs for k, _ in s.exceptions})
    cof_map = {r: set(ex) for r, ex in cofinal}
    fin = set(finite)
    for k in special:
        inside = all(member(seq_value(s, k)) for s in seqs)
        r = (k - 1) % M
        if r in cof_map:
            (cof_map[r].discard if inside else cof_map[r].add)(k)
        else:
            (fin.add if inside else fin.discard)(k)
    return IndexSet(M, tuple((r, tuple(ex)) for r, ex in cof_map.items()), tuple(fin))


def joint_below_set(seqs: Sequence[SymbolicSequence], eps) -> IndexSet:
    """Indices ``k`` with ``|s_i(k)| <= eps`` for every sequence."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return _joint_index_set(seqs, lambda st: st.eventually_within(eps),
                            lambda v: _abs_le(v, eps))


def joint_zero_set(seqs: Sequence[SymbolicSequence]) -> IndexSet:
    """Indices where every sequence vanishes."""
    return _joint_index_set(seqs, lambda st: st.eventually_zero(), _is_zero)


def seq_count_below(s: SymbolicSequence, eps) -> CountResult:
    """Classify ``{k : |s(k)| <= eps}`` as finite (with its indices) or infinite."""
    if Fraction(eps) <= 0:
        raise ValueError("eps must be positive")
    return CountResult.of(joint_below_set([s], eps))


class ZeroSet(NamedTuple):
    indices: tuple  # zeros on strands that are not identically zero
    strands: tuple  # identically zero strands
    excluded: tuple = ()  # exceptions that make an index on a zero strand nonzero


def seq_zero_set(s: SymbolicSequence) -> ZeroSet:
    """Exact zero set of a sequence."""
    z = joint_zero_set([s])
    return ZeroSet(z.finite, z.cofinal_strands, tuple(k for _, ex in z.cofinal for k in ex))
