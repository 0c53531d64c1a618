"""Shared builders and a direct-formula oracle for strand sequences."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from sumspec.operators import ModelOperator
from sumspec.sequences import StrandExpr, SymbolicSequence


def strand(*pairs) -> StrandExpr:
    """``strand((1, 0), (2, 1))`` is ``1 + 2 j^-1``."""
    return StrandExpr.from_terms(pairs)


def seq(*strands, exceptions=None) -> SymbolicSequence:
    return SymbolicSequence.from_strands([StrandExpr.coerce(s) for s in strands], exceptions)


def diag(*strands, label="A", exceptions=None, block=None) -> ModelOperator:
    return ModelOperator(seq(*strands, exceptions=exceptions), block, label)


INV_K = [(1, 1)]  # j^-1 on a modulus-1 sequence is 1/k


def raw(op: ModelOperator):
    """Plain data ``(modulus, [[(c, e), ...] per strand], {k: v})`` for the oracle.

    Only plain ``j^-e`` monomials are expected (the random populations use no
    shifted bases).
    """
    strands = []
    for st in op.diag.strands:
        pairs = []
        for mono, c in st.terms:
            assert len(mono) <= 1 and all(base == (1, 0) for base, _ in mono)
            pairs.append((c.to_fraction(), mono[0][1] if mono else Fraction(0)))
        strands.append(pairs)
    return op.diag.modulus, strands, dict(op.diag.exceptions)


def direct_value(data, k: int) -> Fraction:
    """Value at global index ``k`` by the defining formula, in exact arithmetic."""
    m, strands, exc = data
    if k in exc:
        return Fraction(exc[k])
    r, j = (k - 1) % m, (k - 1) // m + 1
    return sum((c / Fraction(j) ** int(e) for c, e in strands[r]), Fraction(0))


def direct_values_float(data, n: int) -> np.ndarray:
    """Float values at ``k = 1..n``."""
    m, strands, exc = data
    k = np.arange(1, n + 1)
    r, j = (k - 1) % m, ((k - 1) // m + 1).astype(float)
    out = np.zeros(n)
    for s, pairs in enumerate(strands):
        sel = r == s
        for c, e in pairs:
            out[sel] += float(c) * j[sel] ** (-float(e))
    for key, v in exc.items():
        if key <= n:
            out[key - 1] = float(v)
    return out


def direct_limit(data, residue: int) -> Fraction:
    m, strands, _ = data
    return sum((c for c, e in strands[residue % m] if e == 0), Fraction(0))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
