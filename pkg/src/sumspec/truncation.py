"""Finite truncations against the symbolic ground truth."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .linalg import (DEFAULT_TOLERANCES, HermitianMatrix, Subspace, Tolerances,
                     eigh, spectral_projection, subspace_intersection)
from .operators import ModelOperator, epsilon_core, essential_spectrum, truncate

CLUSTER_GAP = 1e-3


def truncated_spectrum(op: ModelOperator, n: int, tol: Tolerances = DEFAULT_TOLERANCES) -> list:
    """Ascending eigenvalues of the ``n``-truncation; exact Fractions when diagonal and rational."""
    m = truncate(op, n)
    diag = m.exact_diagonal()
    if diag is not None:
        return sorted(diag)
    return [float(x) for x in eigh(m, tol, vectors=False).eigenvalues]


def clusters(values: Sequence, gap: float = CLUSTER_GAP) -> list:
    """Split sorted values wherever consecutive entries differ by more than ``gap``.

    Returns ``(center, count, lo, hi)`` tuples; the center is the mean.
    """
    xs = [float(v) for v in values]
    out, start = [], 0
    for i in range(1, len(xs) + 1):
        if i == len(xs) or xs[i] - xs[i - 1] > gap:
            chunk = xs[start:i]
            out.append((float(np.mean(chunk)), len(chunk), chunk[0], chunk[-1]))
            start = i
    return out


def _overlap_count(c: tuple, others: list, gap: float) -> int:
    """Total size of the clusters in ``others`` whose range meets that of ``c``."""
    return sum(o[1] for o in others if o[2] <= c[3] + gap and o[3] >= c[2] - gap)


def hausdorff(a: Sequence[float], b: Sequence[float]) -> float:
    if not a and not b:
        return 0.0
    if not a or not b:
        return float("inf")
    d = np.abs(np.subtract.outer(np.asarray(a, float), np.asarray(b, float)))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass(frozen=True)
class ConvergenceReport:
    sizes: tuple
    clusters: tuple  # per size: ((center, count), ...)
    growing: tuple  # per size: centers of clusters whose count grows with n
    hausdorff_to_essential: tuple
    essential_points: tuple
    cluster_gap: float = CLUSTER_GAP
    spectra: tuple = field(default=(), repr=False)

    @property
    def nonincreasing(self) -> bool:
        h = self.hausdorff_to_essential
        return all(b <= a + 1e-12 for a, b in zip(h, h[1:]))


def truncation_spectrum_convergence(op: ModelOperator, sizes: Sequence[int],
                                    cluster_gap: float = CLUSTER_GAP,
                                    tol: Tolerances = DEFAULT_TOLERANCES) -> ConvergenceReport:
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2 or any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise ValueError("need at least two strictly increasing sizes")
    spectra = [truncated_spectrum(op, n, tol) for n in sizes]
    cl = [clusters(s, cluster_gap) for s in spectra]
    growing = []
    for i, cur in enumerate(cl):
        if i == 0:
            grow = [c[0] for c in cur if _overlap_count(c, cl[1], cluster_gap) > c[1]]
        else:
            grow = [c[0] for c in cur if c[1] > _overlap_count(c, cl[i - 1], cluster_gap)]
        growing.append(tuple(grow))
    ess = tuple(sorted(essential_spectrum(op).essential_points))
    ess_f = [float(x) for x in ess]
    h = tuple(hausdorff(list(g), ess_f) for g in growing)
    return ConvergenceReport(sizes, tuple(tuple(c[:2] for c in x) for x in cl), tuple(growing), h, ess,
                             cluster_gap, tuple(tuple(s) for s in spectra))


def random_low_rank(n: int, rank: int, seed, scale: float = 1.0) -> HermitianMatrix:
    """``V diag(s) V*`` with ``V`` orthonormal from the QR of seeded Gaussian samples."""
    rng = np.random.default_rng(seed)
    if rank == 0:
        return HermitianMatrix(np.zeros((n, n)))
    g = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    v, _ = np.linalg.qr(g)
    s = rng.uniform(0.5, 2.0, size=rank) * rng.choice([-1.0, 1.0], size=rank) * scale
    return HermitianMatrix((v * s) @ v.conj().T)


@dataclass(frozen=True)
class WeylReport:
    holds: bool
    rank: int
    n: int
    seed: int
    positive: int  # positive eigenvalues of the perturbation
    negative: int
    interlacing_violations: int
    outliers: int  # perturbed eigenvalues outside the unperturbed hull
    max_shift: float
    essential_unchanged: bool
    unperturbed: tuple = field(default=(), repr=False)
    perturbed: tuple = field(default=(), repr=False)


def weyl_experiment(op: ModelOperator, rank: int, n: int, seed: int = 0,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> WeylReport:
    """Finite-rank perturbation of the truncation: interlacing and outlier counts.

    With ``p`` positive and ``q`` negative perturbation eigenvalues, the
    ``i``-th perturbed eigenvalue lies in ``[lam_{i-q}, lam_{i+p}]``.  Only the
    ``p + q`` eigenvalues whose window runs off the unperturbed spectrum may
    leave its hull; those that do are counted as outliers.
    """
    if rank < 0 or rank > n:
        raise ValueError("rank must lie in [0, n]")
    base = truncate(op, n)
    k = random_low_rank(n, rank, seed)
    pert = ModelOperator(op.diag, k if op.block is None else op.block.padded(n) + k, op.label)
    lam = np.array([float(x) for x in truncated_spectrum(op, n, tol)])
    mu = np.array([float(x) for x in truncated_spectrum(pert, n, tol)])
    kw = eigh(k, tol, vectors=False).eigenvalues
    kscale = float(np.max(np.abs(kw))) if kw.size else 0.0
    p = int(np.sum(kw > tol.zero * max(kscale, 1.0)))
    q = int(np.sum(kw < -tol.zero * max(kscale, 1.0)))
    slack = tol.eig * max(base.norm + k.norm, 1.0)
    violations = outliers = 0
    lo_hull, hi_hull = lam[0], lam[-1]
    for i in range(n):
        lo = lam[i - q] if i - q >= 0 else -np.inf
        hi = lam[i + p] if i + p < n else np.inf
        if mu[i] < lo - slack or mu[i] > hi + slack:
            violations += 1
        if mu[i] < lo_hull - slack or mu[i] > hi_hull + slack:
            outliers += 1
    same = essential_spectrum(pert).essential_points == essential_spectrum(op).essential_points
    shift = float(np.max(np.abs(mu - lam))) if n else 0.0
    holds = violations == 0 and outliers <= rank and same
    return WeylReport(holds, rank, n, int(seed), p, q, violations, outliers, shift, same,
                      tuple(lam.tolist()), tuple(mu.tolist()))


@dataclass(frozen=True)
class NumericCoreReport:
    dimension: int
    symbolic_count: Optional[int]  # |{k <= n in the symbolic core}| for block-free ops
    agrees: Optional[bool]
    subspace: Subspace = field(repr=False)
    eps: object = None
    n: int = 0


def numeric_epsilon_core(ops: Sequence[ModelOperator], eps, n: int,
                         tol: Tolerances = DEFAULT_TOLERANCES) -> NumericCoreReport:
    """``H_eps`` of the ``n``-truncations via spectral projections and intersection."""
    if not ops:
        raise ValueError("need at least one operator")
    eps_exact = Fraction(eps)
    subs = [spectral_projection(truncate(op, n), (-eps_exact, eps_exact), tol) for op in ops]
    inter = subspace_intersection(subs, tol)
    sym = None
    if all(op.block is None for op in ops):
        core = epsilon_core(ops, eps_exact).core_indices
        sym = sum(1 for k in range(1, n + 1) if k in core)
    return NumericCoreReport(inter.dim, sym, None if sym is None else sym == inter.dim,
                             inter, eps, n)
