"""Dense Hermitian linear algebra built on Jacobi rotations.

The eigensolver is a cyclic Jacobi method with complex rotations visited in
round-robin (parallel) order: a sweep is ``n - 1`` rounds of ``n/2`` disjoint
pairs.  The order is fixed, which makes results bit-reproducible.  The
rotation loops are compiled with numba.  Singular values come from one-sided (Hestenes) Jacobi,
which resolves small singular values without squaring them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numba
import numpy as np

from .errors import AmbiguousBoundary, ConvergenceFailure, NotAProjection


@dataclass(frozen=True)
class Tolerances:
    """Every numeric threshold used by the package, in one place."""

    orth: float = 1e-12  # scaled by sqrt(ambient dimension)
    eig: float = 1e-10  # residual / failure threshold relative to ||A||
    offdiag: float = 1e-14  # Jacobi convergence target relative to ||A||_F
    sweeps: int = 30
    gap: float = 1e-8  # eigenvalue-to-endpoint separation relative to ||A||
    rank: float = 1e-8  # relative singular value cutoff
    projection: float = 1e-10  # ||P^2 - P||, ||P - P*|| residual
    zero: float = 1e-8  # eigenvalues at or below this count as zero
    unit: float = 1e-9  # Gram eigenvalues within this of 1 count as 1
    match: float = 1e-9  # spectra and sampled inequalities agree within this
    subspace: float = 1e-7  # containment residual for comparing column spaces

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


DEFAULT_TOLERANCES = Tolerances()


# -- exact Gaussian rationals ------------------------------------------------
@dataclass(frozen=True)
class QComplex:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, x) -> "QComplex":
        if isinstance(x, QComplex):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other) -> "QComplex":
        other = QComplex.of(other)
        return QComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other) -> "QComplex":
        o = QComplex.of(other)
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def conj(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im = "" if abs(self.im) == 1 else str(abs(self.im))
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{im}i"
        return f"{self.re}{'-' if self.im < 0 else '+'}{im}i"


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QComplex)) and not isinstance(x, bool)


class HermitianMatrix:
    """Dense Hermitian matrix; the upper triangle defines the entries.

    Matrices built from exact scalars (ints, Fractions, QComplex) keep an
    exact sparse copy of their upper triangle alongside the float array.
    """

    __slots__ = ("_array", "_exact")

    def __init__(self, entries):
        if isinstance(entries, HermitianMatrix):
            self._array, self._exact = entries._array, entries._exact
            return
        exact = None
        if not isinstance(entries, np.ndarray):
            rows = [list(r) for r in entries]
            if all(_is_exact_scalar(x) for r in rows for x in r):
                exact = {}
                n = len(rows)
                if any(len(r) != n for r in rows):
                    raise ValueError("matrix must be square")
                for i in range(n):
                    for j in range(i, n):
                        v = QComplex.of(rows[i][j])
                        if i == j:
                            v = QComplex(v.re)
                        if v:
                            exact[(i, j)] = v
                arr = np.zeros((n, n), dtype=complex)
                for (i, j), v in exact.items():
                    arr[i, j] = complex(v)
                    arr[j, i] = complex(v).conjugate()
                self._array, self._exact = arr, exact
                self._array.setflags(write=False)
                return
            entries = np.array(rows, dtype=complex)
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        upper = np.triu(m, 1)
        arr = upper + upper.conj().T + np.diag(m.diagonal().real).astype(complex)
        arr.setflags(write=False)
        self._array, self._exact = arr, None

    @classmethod
    def diagonal(cls, values: Sequence) -> "HermitianMatrix":
        values = list(values)
        if all(_is_exact_scalar(v) for v in values):
            out = cls.__new__(cls)
            n = len(values)
            out._exact = {(i, i): QComplex.of(v) for i, v in enumerate(values) if v}
            arr = np.zeros((n, n), dtype=complex)
            arr[np.arange(n), np.arange(n)] = [float(Fraction(v)) for v in values] if n else []
            arr.setflags(write=False)
            out._array = arr
            return out
        return cls(np.diag(np.asarray(values, dtype=float)))

    @classmethod
    def zeros(cls, n: int) -> "HermitianMatrix":
        return cls.diagonal([0] * n)

    @property
    def n(self) -> int:
        return self._array.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def exact(self) -> Optional[dict]:
        return None if self._exact is None else dict(self._exact)

    @property
    def is_exact(self) -> bool:
        return self._exact is not None

    def exact_diagonal(self) -> Optional[list]:
        """Exact real diagonal when the matrix is exact and diagonal, else None."""
        if self._exact is None or any(i != j for i, j in self._exact):
            return None
        return [self._exact[(i, i)].re if (i, i) in self._exact else Fraction(0)
                for i in range(self.n)]

    def exact_entry(self, i: int, j: int) -> QComplex:
        if self._exact is None:
            raise ValueError("matrix has no exact entries")
        if i <= j:
            return self._exact.get((i, j), QComplex())
        return self._exact.get((j, i), QComplex()).conj()

    def padded(self, n: int) -> "HermitianMatrix":
        if n < self.n:
            raise ValueError("cannot pad to a smaller size")
        if n == self.n:
            return self
        if self._exact is not None:
            return HermitianMatrix([[self.exact_entry(i, j) if i < self.n and j < self.n else 0
                                     for j in range(n)] for i in range(n)]) \
                if n <= 64 else self._padded_exact_sparse(n)
        out = np.zeros((n, n), dtype=complex)
        out[: self.n, : self.n] = self._array
        return HermitianMatrix(out)

    def _padded_exact_sparse(self, n: int) -> "HermitianMatrix":
        out = HermitianMatrix.__new__(HermitianMatrix)
        arr = np.zeros((n, n), dtype=complex)
        arr[: self.n, : self.n] = self._array
        arr.setflags(write=False)
        out._array, out._exact = arr, dict(self._exact)
        return out

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        n = max(self.n, other.n)
        a, b = self.padded(n), other.padded(n)
        if a._exact is not None and b._exact is not None:
            exact = dict(a._exact)
            for key, v in b._exact.items():
                s = exact.get(key, QComplex()) + v
                if s:
                    exact[key] = s
                else:
                    exact.pop(key, None)
            out = HermitianMatrix.__new__(HermitianMatrix)
            arr = np.zeros((n, n), dtype=complex)
            for (i, j), v in exact.items():
                arr[i, j] = complex(v)
                arr[j, i] = complex(v).conjugate()
            arr.setflags(write=False)
            out._array, out._exact = arr, exact
            return out
        return HermitianMatrix(a._array + b._array)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermitianMatrix) or other.n != self.n:
            return False
        if self._exact is not None and other._exact is not None:
            return self._exact == other._exact
        return bool(np.array_equal(self._array, other._array))

    def __hash__(self):
        return hash((self.n, tuple(sorted(self._exact.items(), key=lambda t: t[0])))
                    if self._exact is not None else self._array.tobytes())

    @property
    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self._array))

    def rows_text(self) -> list:
        """Row lists of ``a+bi`` strings (exact) or float reprs."""
        if self._exact is not None:
            return [[str(self.exact_entry(i, j)) for j in range(self.n)] for i in range(self.n)]
        return [[_complex_text(x) for x in row] for row in self._array]

    def __repr__(self) -> str:
        return f"HermitianMatrix(n={self.n}, exact={self.is_exact})"


def _complex_text(z: complex) -> str:
    if z.imag == 0:
        return repr(float(z.real))
    return f"{float(z.real)!r}{'+' if z.imag >= 0 else '-'}{abs(float(z.imag))!r}i"


def as_hermitian(x) -> HermitianMatrix:
    return x if isinstance(x, HermitianMatrix) else HermitianMatrix(x)


def as_array(x) -> np.ndarray:
    return x.array if isinstance(x, HermitianMatrix) else np.asarray(x, dtype=complex)


# -- subspaces -----------------------------------------------------------------
class Subspace:
    """Subspace given by an orthonormal frame (columns of ``frame``)."""

    __slots__ = ("frame",)

    def __init__(self, frame, tol: Tolerances = DEFAULT_TOLERANCES):
        f = np.asarray(frame, dtype=complex)
        if f.ndim != 2:
            raise ValueError("frame must be a 2-D array of column vectors")
        if f.shape[1]:
            err = np.max(np.abs(f.conj().T @ f - np.eye(f.shape[1])))
            if err > tol.orth * np.sqrt(max(f.shape[0], 1)):
                raise ValueError(f"frame is not orthonormal (error {err:.3e})")
        f.setflags(write=False)
        self.frame = f

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(np.zeros((n, 0), dtype=complex))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(np.eye(n, dtype=complex))

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns, aligned with eigenvalues
    sweeps: int = 0
    off_norm: float = 0.0


@lru_cache(maxsize=64)
def _rounds(n: int) -> tuple:
    """Round-robin schedule: each round pairs every index with a distinct partner."""
    m = n + (n % 2)
    players = list(range(m))
    out = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        out.append((np.array(p, dtype=np.intp), np.array(q, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(out)


@lru_cache(maxsize=64)
def _schedule(n: int) -> tuple:
    """Flattened round-robin schedule as two index arrays."""
    rounds = _rounds(n)
    if not rounds:
        return np.zeros(0, dtype=np.intp), np.zeros(0, dtype=np.intp)
    return (np.concatenate([p for p, _ in rounds]), np.concatenate([q for _, q in rounds]))


@numba.njit(cache=True)
def _rotation(app, aqq, apq):
    """Complex Jacobi rotation annihilating ``apq`` in ``[[app, apq], [conj(apq), aqq]]``."""
    mag = abs(apq)
    ph = apq / mag
    theta = (aqq - app) / (2.0 * mag)
    if theta == 0.0:
        t = 1.0
    else:
        t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    return c, s * ph, s * np.conj(ph)


@numba.njit(cache=True)
def _offnorm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j].real ** 2 + a[i, j].imag ** 2
    return np.sqrt(acc)


@numba.njit(cache=True)
def _jacobi(a, vt, ps, qs, target, budget, vectors):
    # rows p, q are rotated in place and mirrored into the columns, so only
    # the upper-left pair block needs the closed-form update.  Entries below
    # target / n are flushed to zero: all of them together stay under target.
    n = a.shape[0]
    sweeps = 0
    flush = target / max(n, 1)
    off = _offnorm(a)
    while off > target and sweeps < budget:
        for r in range(ps.shape[0]):
            p = ps[r]
            q = qs[r]
            apq = a[p, q]
            if apq == 0:
                continue
            app = a[p, p].real
            aqq = a[q, q].real
            mag = abs(apq)
            if mag <= flush or mag <= 1e-17 * np.sqrt(abs(app * aqq)):
                a[p, q] = 0
                a[q, p] = 0
                continue
            c, sph, sphc = _rotation(app, aqq, apq)
            tm = (sph * np.conj(apq)).real / c
            for k in range(n):
                if k == p or k == q:
                    continue
                x = a[p, k]
                y = a[q, k]
                xn = c * x - sph * y
                yn = sphc * x + c * y
                a[p, k] = xn
                a[q, k] = yn
                a[k, p] = np.conj(xn)
                a[k, q] = np.conj(yn)
            a[p, p] = app - tm
            a[q, q] = aqq + tm
            a[p, q] = 0
            a[q, p] = 0
            if not vectors:
                continue
            for k in range(n):
                x = vt[p, k]
                y = vt[q, k]
                vt[p, k] = c * x - sphc * y
                vt[q, k] = sph * x + c * y
        sweeps += 1
        off = _offnorm(a)
    return sweeps, off


def eigh(A, tol: Tolerances = DEFAULT_TOLERANCES, vectors: bool = True) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    With ``vectors=False`` the rotations are not accumulated and the
    eigenvector slot holds an empty ``(n, 0)`` array.
    """
    a = np.array(as_hermitian(A).array, dtype=np.complex128)
    n = a.shape[0]
    vt = np.eye(n, dtype=np.complex128)
    if n == 0:
        return EigenDecomposition(np.zeros(0), vt)
    norm = float(np.linalg.norm(a))
    ps, qs = _schedule(n)
    sweeps, off = _jacobi(a, vt, ps, qs, tol.offdiag * norm, tol.sweeps, vectors)
    v = vt.T if vectors else np.zeros((n, 0), dtype=np.complex128)
    if off > tol.eig * norm:
        raise ConvergenceFailure(f"off-diagonal norm {off:.3e} after {sweeps} sweeps")
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order] if vectors else v, int(sweeps), float(off))


@dataclass(frozen=True)
class SVD:
    singular_values: np.ndarray  # descending
    left: np.ndarray  # columns for the nonzero singular values
    right: np.ndarray  # all right singular vectors (columns), aligned


@numba.njit(cache=True)
def _hestenes(ut, vt, ps, qs, thresh, budget, floor):
    # ut holds the columns of the working matrix as rows; columns with squared
    # norm at or below floor are rounding debris and take no part
    m = ut.shape[1]
    n = vt.shape[1]
    worst = 0.0
    for _ in range(budget):
        worst = 0.0
        for r in range(ps.shape[0]):
            p = ps[r]
            q = qs[r]
            alpha = 0.0
            beta = 0.0
            gamma = 0j
            for k in range(m):
                x = ut[p, k]
                y = ut[q, k]
                alpha += x.real ** 2 + x.imag ** 2
                beta += y.real ** 2 + y.imag ** 2
                gamma += np.conj(x) * y
            if alpha <= floor or beta <= floor or gamma == 0:
                continue
            rel = abs(gamma) / np.sqrt(alpha * beta)
            if rel <= thresh:
                continue
            worst = max(worst, rel)
            c, sph, sphc = _rotation(alpha, beta, gamma)
            for k in range(m):
                x = ut[p, k]
                y = ut[q, k]
                ut[p, k] = c * x - sphc * y
                ut[q, k] = sph * x + c * y
            for k in range(n):
                x = vt[p, k]
                y = vt[q, k]
                vt[p, k] = c * x - sphc * y
                vt[q, k] = sph * x + c * y
        if worst == 0.0:
            break
    return worst


def svd(M, tol: Tolerances = DEFAULT_TOLERANCES) -> SVD:
    """One-sided Jacobi SVD of a (possibly rectangular) complex matrix."""
    m = np.asarray(as_array(M), dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("svd expects a matrix")
    n = m.shape[1]
    ut = np.ascontiguousarray(m.T)
    vt = np.eye(n, dtype=np.complex128)
    ps, qs = _schedule(n)
    fro = float(np.linalg.norm(m))
    floor = (4 * np.finfo(float).eps * fro) ** 2 * max(n, 1)
    worst = _hestenes(ut, vt, ps, qs, tol.offdiag, tol.sweeps, floor)
    if worst > tol.eig:
        raise ConvergenceFailure(f"one-sided Jacobi left column coherence {worst:.3e}")
    sigma = np.linalg.norm(ut, axis=1)
    order = np.argsort(-sigma, kind="stable")
    sigma, ut, vt = sigma[order], ut[order], vt[order]
    nz = sigma > 0
    left = ut[nz].T / sigma[nz]
    return SVD(sigma, left, vt.T)


def spectral_projection(A, interval, tol: Tolerances = DEFAULT_TOLERANCES,
                        complement: bool = False) -> Subspace:
    """Range of the spectral projection of ``A`` onto the closed ``interval``.

    With ``complement=True`` the range of ``E_A(R minus [lo, hi])`` is returned.
    Exact diagonal matrices are decided exactly; otherwise an eigenvalue within
    ``tol.gap * ||A||`` of an endpoint raises AmbiguousBoundary.
    """
    A = as_hermitian(A)
    lo, hi = interval
    n = A.n
    diag = A.exact_diagonal()
    if diag is not None:
        lo_q, hi_q = Fraction(lo), Fraction(hi)
        idx = [i for i, x in enumerate(diag) if (lo_q <= x <= hi_q) != complement]
        frame = np.zeros((n, len(idx)), dtype=complex)
        frame[idx, np.arange(len(idx))] = 1.0
        return Subspace(frame, tol)
    ed = eigh(A, tol)
    w = ed.eigenvalues
    scale = float(np.max(np.abs(w))) if n else 0.0
    sep = tol.gap * scale
    for x in w:
        for end in (float(lo), float(hi)):
            if abs(x - end) <= sep:
                raise AmbiguousBoundary(f"eigenvalue {x!r} within {sep:.1e} of endpoint {end!r}")
    idx = [i for i, x in enumerate(w) if (float(lo) <= x <= float(hi)) != complement]
    return Subspace(ed.eigenvectors[:, idx], tol)


def _coordinate_support(frame: np.ndarray):
    """Index set when every frame column is a standard basis vector, else None."""
    nz = frame != 0
    if not np.all(nz.sum(axis=0) == 1):
        return None
    rows = np.argmax(nz, axis=0)
    if not np.all(frame[rows, np.arange(frame.shape[1])] == 1):
        return None
    return set(rows.tolist())


def subspace_intersection(subs: Sequence[Subspace], tol: Tolerances = DEFAULT_TOLERANCES) -> Subspace:
    """Intersection as the near-kernel of the stacked complement projections."""
    if not subs:
        raise ValueError("need at least one subspace")
    n = subs[0].ambient_dim
    if any(s.ambient_dim != n for s in subs):
        raise ValueError("subspaces live in different ambient spaces")
    if any(s.dim == 0 for s in subs):
        return Subspace.zero(n)
    coords = [_coordinate_support(s.frame) for s in subs]
    if all(c is not None for c in coords):
        common = sorted(set.intersection(*coords))
        frame = np.zeros((n, len(common)), dtype=complex)
        frame[common, np.arange(len(common))] = 1.0
        return Subspace(frame, tol)
    eye = np.eye(n, dtype=complex)
    stacked = np.vstack([eye - s.projector() for s in subs])
    dec = svd(stacked, tol)
    smax = dec.singular_values[0] if n else 0.0
    keep = dec.singular_values <= tol.rank * smax if smax > 0 else np.ones(n, dtype=bool)
    basis = dec.right[:, keep]
    return Subspace(basis, tol)


def principal_angles(U: Subspace, V: Subspace, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Cosines of the principal angles, descending."""
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    if U.dim == 0 or V.dim == 0:
        raise ValueError("principal angles need nonzero subspaces")
    g = U.frame.conj().T @ V.frame
    if g.shape[0] < g.shape[1]:
        g = g.conj().T
    s = svd(g, tol).singular_values[: min(U.dim, V.dim)]
    return np.clip(s, 0.0, 1.0)


def check_projection(P, index: int = 0, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
    a = as_array(P)
    res = max(float(np.linalg.norm(a @ a - a)), float(np.linalg.norm(a - a.conj().T)))
    if res > tol.projection:
        raise NotAProjection(index, res)


def range_frame(M, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Orthonormal basis of the column space by pivoted Gram-Schmidt.

    Columns are taken largest-residual first and orthogonalized twice; the
    sweep stops once every residual column is below ``tol.rank`` times the
    largest original column norm.
    """
    a = np.array(as_array(M), dtype=np.complex128)
    n = a.shape[0]
    norms = np.linalg.norm(a, axis=0)
    scale = float(norms.max()) if norms.size else 0.0
    basis = np.zeros((n, 0), dtype=np.complex128)
    if scale == 0.0:
        return basis
    cols = []
    for _ in range(min(a.shape)):
        norms = np.linalg.norm(a, axis=0)
        j = int(np.argmax(norms))
        if norms[j] <= tol.rank * scale:
            break
        v = a[:, j] / norms[j]
        if cols:
            basis = np.column_stack(cols)
            v = v - basis @ (basis.conj().T @ v)
            v = v / np.linalg.norm(v)
        cols.append(v)
        a -= np.outer(v, v.conj() @ a)
    return np.column_stack(cols) if cols else basis


def projection_range(P, tol: Tolerances = DEFAULT_TOLERANCES) -> Subspace:
    """Orthonormal frame of the range of an orthogonal projection."""
    P = as_hermitian(P)
    diag = P.exact_diagonal()
    if diag is not None:
        return spectral_projection(P, (Fraction(1, 2), Fraction(3, 2)), tol)
    return Subspace(range_frame(P, tol), tol)


def gram_embedding(projections: Sequence, tol: Tolerances = DEFAULT_TOLERANCES) -> HermitianMatrix:
    """Block matrix of ``Gamma Gamma*`` on ``K_1 + ... + K_n`` (``K_i = Ran P_i``)."""
    frames = []
    for i, P in enumerate(projections):
        check_projection(P, i, tol)
        frames.append(projection_range(as_hermitian(P), tol).frame)
    dims = [f.shape[1] for f in frames]
    total = sum(dims)
    g = np.zeros((total, total), dtype=complex)
    offs = np.cumsum([0] + dims)
    for i, fi in enumerate(frames):
        for j, fj in enumerate(frames):
            if j < i:
                continue
            block = np.eye(dims[i], dtype=complex) if i == j else fi.conj().T @ fj
            g[offs[i]:offs[i + 1], offs[j]:offs[j + 1]] = block
    return HermitianMatrix(g)


def lambda_min(A, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Least eigenvalue."""
    A = as_hermitian(A)
    diag = A.exact_diagonal()
    if diag is not None:
        return float(min(diag)) if diag else float("nan")
    return float(eigh(A, tol, vectors=False).eigenvalues[0])


def spectral_gap_above_zero(A, zero_tol: float = DEFAULT_TOLERANCES.zero,
                            tol: Tolerances = DEFAULT_TOLERANCES) -> Optional[float]:
    """Least eigenvalue exceeding ``zero_tol``; None when there is none."""
    w = eigh(A, tol, vectors=False).eigenvalues
    above = w[w > zero_tol]
    return float(above[0]) if above.size else None
