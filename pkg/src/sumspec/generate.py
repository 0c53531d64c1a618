"""Seeded random populations for the oracle and acceptance suites."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .linalg import HermitianMatrix
from .operators import ModelOperator
from .sequences import StrandExpr, SymbolicSequence

MAX_MODULUS = 6
MAX_TERMS = 3
MAX_ENTRY = 9


def _divisors(m: int) -> list:
    return [d for d in range(1, m + 1) if m % d == 0]


def random_rational(rng: np.random.Generator, nonzero: bool = True) -> Fraction:
    while True:
        num = int(rng.integers(-MAX_ENTRY, MAX_ENTRY + 1))
        if num or not nonzero:
            return Fraction(num, int(rng.integers(1, MAX_ENTRY + 1)))


def random_strand(rng: np.random.Generator, limit: Fraction, decaying: Optional[bool] = None) -> StrandExpr:
    """``limit`` plus up to MAX_TERMS - 1 decaying terms ``c j^-e``, ``e`` in 1..3.

    ``decaying=True`` forces at least one decaying term, ``False`` forbids them.
    """
    room = MAX_TERMS - (1 if limit else 0)
    lo = 1 if decaying else 0
    hi = 0 if decaying is False else room
    k = int(rng.integers(lo, hi + 1)) if hi >= lo else 0
    exps = rng.choice([1, 2, 3], size=k, replace=False) if k else []
    pairs = [(limit, 0)] + [(random_rational(rng), int(e)) for e in exps]
    return StrandExpr.from_terms(pairs)


def random_exceptions(rng: np.random.Generator, limit: int = 2) -> dict:
    k = int(rng.integers(0, limit + 1))
    idx = rng.choice(np.arange(1, 13), size=k, replace=False)
    return {int(i): random_rational(rng, nonzero=False) for i in idx}


def _op_from(rng, label, m, limits, decaying=None, exceptions=True) -> ModelOperator:
    strands = [random_strand(rng, limits[s], decaying(s) if callable(decaying) else decaying)
               for s in range(m)]
    exc = random_exceptions(rng) if exceptions else {}
    return ModelOperator(SymbolicSequence.from_strands(strands, exc), None, label)


def random_tuple(rng: np.random.Generator, n_ops: Optional[int] = None,
                 modulus: Optional[int] = None, p_nonzero: float = 0.6) -> list:
    """Block-free operators whose pairwise products are compact.

    Every operator's modulus divides a common ``M``; a strand may carry a
    nonzero limit only when no other operator already claims one of the
    residues mod ``M`` it covers.
    """
    n_ops = int(rng.integers(2, 5)) if n_ops is None else n_ops
    big = int(rng.integers(1, MAX_MODULUS + 1)) if modulus is None else modulus
    claimed: set = set()
    ops = []
    for i in range(n_ops):
        m = int(rng.choice(_divisors(big)))
        limits = []
        for s in range(m):
            cover = {r for r in range(big) if r % m == s}
            if not cover & claimed and rng.random() < p_nonzero:
                claimed |= cover
                limits.append(random_rational(rng))
            else:
                limits.append(Fraction(0))
        ops.append(_op_from(rng, f"A{i + 1}", m, limits))
    return ops


def closed_tuple(rng: np.random.Generator, n_ops: Optional[int] = None) -> list:
    """Closed sum of ranges: every residue is owned or vanishes for all operators."""
    n_ops = int(rng.integers(2, 5)) if n_ops is None else n_ops
    big = int(rng.integers(1, MAX_MODULUS + 1))
    owner = {r: (int(rng.integers(0, n_ops)) if rng.random() < 0.75 else None) for r in range(big)}
    if all(o is None for o in owner.values()):
        owner[0] = 0
    ops = []
    for i in range(n_ops):
        limits = [random_rational(rng) if owner[r] == i else Fraction(0) for r in range(big)]
        # unowned residues vanish identically for every operator
        ops.append(_op_from(rng, f"A{i + 1}", big, limits,
                            decaying=lambda r: None if owner[r] is not None else False))
    return ops


def not_closed_tuple(rng: np.random.Generator, n_ops: Optional[int] = None) -> list:
    """Not closed: some residue has only vanishing limits but a nonzero strand."""
    n_ops = int(rng.integers(2, 5)) if n_ops is None else n_ops
    big = int(rng.integers(1, MAX_MODULUS + 1))
    bad = int(rng.integers(0, big))
    carrier = int(rng.integers(0, n_ops))
    owner = {r: (None if r == bad else int(rng.integers(0, n_ops))) for r in range(big)}
    ops = []
    for i in range(n_ops):
        limits = [random_rational(rng) if owner[r] == i else Fraction(0) for r in range(big)]
        decay = (lambda r, i=i: True if (r == bad and i == carrier) else None)
        ops.append(_op_from(rng, f"A{i + 1}", big, limits, decaying=decay))
    return ops


def finite_core_tuple(rng: np.random.Generator, n_ops: Optional[int] = None) -> tuple:
    """A compact-product tuple with every residue owned, and an eps with finite ``H_eps``."""
    n_ops = int(rng.integers(2, 5)) if n_ops is None else n_ops
    big = int(rng.integers(1, MAX_MODULUS + 1))
    owner = {r: int(rng.integers(0, n_ops)) for r in range(big)}
    ops, smallest = [], None
    for i in range(n_ops):
        limits = [random_rational(rng) if owner[r] == i else Fraction(0) for r in range(big)]
        for x in limits:
            if x and (smallest is None or abs(x) < smallest):
                smallest = abs(x)
        ops.append(_op_from(rng, f"A{i + 1}", big, limits))
    return ops, smallest / int(rng.integers(2, 5))


# -- finite-dimensional families ---------------------------------------------------
def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def projection_family(rng: np.random.Generator, dim: int = 200, count: Optional[int] = None,
                      max_links: int = 5) -> tuple:
    """Projections whose Gram embedding differs from ``I`` by rank at most ``2 * links``.

    Frames are built from columns of a random unitary: each projection gets its
    own fresh columns, and each link tilts one of them towards a column owned
    by another projection, which creates one rank-one cross block.
    Returns ``(projections, rank_bound)``.
    """
    count = int(rng.integers(2, 6)) if count is None else count
    u = random_unitary(rng, dim)
    ranks = [int(rng.integers(3, 13)) for _ in range(count)]
    cols = iter(range(dim))
    frames = [[u[:, next(cols)] for _ in range(r)] for r in ranks]
    links = int(rng.integers(0, max_links + 1))
    used = set()
    done = 0
    for _ in range(links):
        i, j = (int(x) for x in rng.choice(count, size=2, replace=False))
        a = int(rng.integers(0, ranks[i]))
        b = int(rng.integers(0, ranks[j]))
        if (i, a) in used or (j, b) in used:
            continue
        used |= {(i, a), (j, b)}
        theta = float(rng.uniform(0.2, 1.3))
        frames[i][a] = np.cos(theta) * frames[i][a] + np.sin(theta) * frames[j][b]
        done += 1
    projs = []
    for f in frames:
        f = np.stack(f, axis=1)
        projs.append(HermitianMatrix(f @ f.conj().T))
    return projs, 2 * done


def matrix_family(rng: np.random.Generator, n: int = 50, count: Optional[int] = None) -> list:
    """Rectangular complex matrices ``B_i`` whose columns jointly span ``C^n``."""
    count = int(rng.integers(2, 5)) if count is None else count
    ranks = [int(rng.integers(n // (2 * count) + 1, n)) for _ in range(count)]
    while sum(ranks) < n:
        i = int(rng.integers(0, count))
        ranks[i] = min(n, ranks[i] + n // count)
    mats = []
    for r in ranks:
        w = int(rng.integers(r, r + 10))
        a = rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r))
        b = rng.normal(size=(r, w)) + 1j * rng.normal(size=(r, w))
        mats.append(a @ b / np.sqrt(r))
    return mats
