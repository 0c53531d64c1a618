"""Decision procedures for the sum-of-operators criteria, each with a certificate.

Symbolic checks work on block-free model operators and are exact.  The
matrix checks (coercivity, range equality, Gram gaps) are numeric and report
the tolerances they used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import (ExhaustedWitness, HypothesisViolation, InfiniteCore,
                     OracleMismatch)
from .linalg import (DEFAULT_TOLERANCES, HermitianMatrix, Subspace, Tolerances,
                     as_array, as_hermitian, check_projection, eigh,
                     gram_embedding, lambda_min, svd)
from .operators import (ModelOperator, _require_block_free, epsilon_core,
                        essential_spectrum, kernel_core, op_sum,
                        product_is_compact, truncate)
from .radicals import Surd, compare
from .sequences import (SCAN_BUDGET, IndexSet, SymbolicSequence, StrandExpr,
                        joint_below_set, joint_zero_set, refine_common, seq_add,
                        seq_mul, seq_value)


def _abs_max(values) -> object:
    """Exact ``max |v|`` over Fractions and Surds."""
    best = Fraction(0)
    for v in values:
        a = -v if compare(v, 0) < 0 else v
        if compare(a, best) > 0:
            best = a
    return best


def _rational_below(x) -> Fraction:
    """A positive rational not exceeding the positive value ``x``."""
    return x if isinstance(x, Fraction) else x.abs_lower()


# -- hypotheses -------------------------------------------------------------
@dataclass(frozen=True)
class HypothesisReport:
    holds: bool
    failing_pairs: tuple  # 1-based operator positions
    labels: tuple


def check_hypotheses(ops: Sequence[ModelOperator]) -> HypothesisReport:
    """Pairwise compactness of the products ``A_i A_j``."""
    bad = tuple((i + 1, j + 1) for i, j in combinations(range(len(ops)), 2)
                if not product_is_compact(ops[i], ops[j]))
    return HypothesisReport(not bad, bad, tuple(op.label for op in ops))


def _require_hypotheses(ops: Sequence[ModelOperator]) -> None:
    rep = check_hypotheses(ops)
    if not rep.holds:
        i, j = rep.failing_pairs[0]
        raise HypothesisViolation(
            f"product {ops[i - 1].label}*{ops[j - 1].label} is not compact")


# -- additivity of essential spectra --------------------------------------------------------------
@dataclass(frozen=True)
class TheoremAReport:
    holds: bool
    sum_points: frozenset  # sigma_e(sum) minus 0
    union_points: frozenset  # union of sigma_e(A_i) minus 0


def check_theorem_a(ops: Sequence[ModelOperator]) -> TheoremAReport:
    _require_hypotheses(ops)
    lhs = essential_spectrum(op_sum(ops)).without_zero()
    rhs = frozenset().union(*(essential_spectrum(op).without_zero() for op in ops))
    return TheoremAReport(lhs == rhs, lhs, rhs)


# -- zero in the essential spectrum of the sum -------------------------------------------------------------
def _strand_max_limits(ops: Sequence[ModelOperator]) -> tuple[int, list]:
    seqs = refine_common([op.diag for op in ops])
    m = seqs[0].modulus
    return m, [max(abs(s.strands[r].limit) for s in seqs) for r in range(m)]


def _certificate_eps(maxima: list) -> Optional[Fraction]:
    nonzero = [x for x in maxima if x]
    return min(nonzero) / 2 if nonzero else None


@dataclass(frozen=True)
class ZeroEssentialVerdict:
    in_essential: bool
    modulus: int
    witness_strand: Optional[int]  # strand with every limit 0
    eps: Optional[Fraction]  # dim H_eps is finite
    core: Optional[IndexSet]  # H_eps for the certificate eps
    strand_max_limits: tuple
    oracle: bool  # 0 in sigma_e(sum), computed directly


def check_zero_essential(ops: Sequence[ModelOperator]) -> ZeroEssentialVerdict:
    """Decide ``0 in sigma_e(sum A_i)`` through the epsilon-cores."""
    _require_block_free(ops)
    _require_hypotheses(ops)
    m, maxima = _strand_max_limits(ops)
    oracle = 0 in essential_spectrum(op_sum(ops)).essential_points
    zero_strands = [r for r, x in enumerate(maxima) if x == 0]
    if zero_strands:
        verdict = ZeroEssentialVerdict(True, m, zero_strands[0], None, None, tuple(maxima), oracle)
    else:
        eps = _certificate_eps(maxima)
        core = epsilon_core(ops, eps)
        if not core.is_finite:
            raise OracleMismatch(f"H_eps is infinite at the certificate eps={eps}")
        verdict = ZeroEssentialVerdict(False, m, None, eps, core.core_indices, tuple(maxima), oracle)
    if verdict.in_essential != oracle:
        raise OracleMismatch(f"epsilon-core verdict {verdict.in_essential} disagrees with "
                             f"the essential spectrum of the sum ({oracle})")
    return verdict


@dataclass(frozen=True)
class SingularSchedule:
    index_schedule: tuple  # k_1 < k_2 < ...
    bound_constant: int  # N, the number of operators
    witness_strand: int
    modulus: int
    diagonals: tuple = field(default=(), repr=False, compare=False)

    def verify(self) -> bool:
        """Exact check of ``|d_i(k_m)| <= 1/m`` and ``|sum_i d_i(k_m)| <= N/m``."""
        ks = self.index_schedule
        if any(a >= b for a, b in zip(ks, ks[1:])):
            return False
        for m, k in enumerate(ks, start=1):
            vals = [seq_value(d, k) for d in self.diagonals]
            if any(compare(_abs_max([v]), Fraction(1, m)) > 0 for v in vals):
                return False
            total = reduce(lambda a, b: Surd.of(a) + b, vals, Surd.of(0))
            if compare(_abs_max([total]), Fraction(self.bound_constant, m)) > 0:
                return False
        return True


def _strand_schedule(diags: Sequence[SymbolicSequence], strand: int, modulus: int,
                     target, length: int, budget: int) -> list:
    """Smallest increasing local indices on ``strand`` with ``|d_i - target| <= 1/m``."""
    seqs = refine_common(list(diags))
    shifted = [s.strands[strand] - StrandExpr.constant(target) for s in seqs]
    diffs = [seq_add(d, SymbolicSequence.constant(-target)) for d in diags]
    exc = {k for d in diags for k, _ in d.exceptions if (k - 1) % modulus == strand}
    out, j = [], 0
    for m in range(1, length + 1):
        tol = Fraction(1, m)
        bound = max(st.eventually_within(tol)[1] for st in shifted)
        limit = max(bound, j + 1) + len(exc)
        while True:
            j += 1
            if j > limit:
                raise OracleMismatch(f"no index found on strand {strand} below j={limit}")
            if j > budget:
                raise ExhaustedWitness(f"schedule entry {m} needs a scan past j={budget}")
            k = (j - 1) * modulus + strand + 1
            if all(compare(_abs_max([seq_value(d, k)]), tol) <= 0 for d in diffs):
                out.append(k)
                break
    return out


def build_singular_schedule(ops: Sequence[ModelOperator], length: int,
                            budget: int = SCAN_BUDGET) -> SingularSchedule:
    """Constructive singular sequence ``e_{k_m}`` for ``sum A_i`` at 0."""
    if length < 1:
        raise ValueError("schedule length must be positive")
    v = check_zero_essential(ops)
    if not v.in_essential:
        raise HypothesisViolation(f"0 is not in the essential spectrum (eps={v.eps} certifies it)")
    diags = tuple(op.diag for op in ops)
    ks = _strand_schedule(diags, v.witness_strand, v.modulus, 0, length, budget)
    return SingularSchedule(tuple(ks), len(ops), v.witness_strand, v.modulus, diags)


def lambda_schedule(op: ModelOperator, lam, length: int,
                    budget: int = SCAN_BUDGET) -> SingularSchedule:
    """Indices with ``|d(k_m) - lam| <= 1/m`` on a strand whose limit is ``lam``."""
    lam = Fraction(lam)
    (seq,) = refine_common([op.diag])
    strands = [r for r, st in enumerate(seq.strands) if st.limit == lam]
    if not strands:
        raise HypothesisViolation(f"{lam} is not a strand limit of {op.label}")
    ks = _strand_schedule((op.diag,), strands[0], seq.modulus, lam, length, budget)
    return SingularSchedule(tuple(ks), 1, strands[0], seq.modulus,
                            (seq_add(op.diag, SymbolicSequence.constant(-lam)),))


# -- closedness of the sum of ranges ----------------------------------------------------------------
@dataclass(frozen=True)
class ClosednessVerdict:
    closed: bool
    modulus: int
    eps: Optional[Fraction] = None  # H_eps = H_0 exactly
    core: Optional[IndexSet] = None  # H_eps
    kernel: Optional[IndexSet] = None  # H_0
    range_closure: Optional[IndexSet] = None  # coordinates spanning the closed range
    candidate_eps: Optional[Fraction] = None  # half the least nonzero strand max-limit
    candidate_excess: tuple = ()  # H_candidate minus H_0, always finite when closed
    witness_strand: Optional[int] = None


def check_sum_ranges_closed(ops: Sequence[ModelOperator]) -> ClosednessVerdict:
    """Is ``Ran A_1 + ... + Ran A_n`` closed?  Decided through ``H_eps = H_0``."""
    _require_block_free(ops)
    seqs = refine_common([op.diag for op in ops])
    m = seqs[0].modulus
    maxima = [max(abs(s.strands[r].limit) for s in seqs) for r in range(m)]
    for r, x in enumerate(maxima):
        if x == 0 and not all(s.strands[r].is_zero() for s in seqs):
            return ClosednessVerdict(False, m, witness_strand=r)
    kernel = kernel_core(ops).core_indices
    candidate = _certificate_eps(maxima) or Fraction(1)
    core = epsilon_core(ops, candidate).core_indices
    excess = core.symmetric_difference(kernel)
    if excess is None:
        raise OracleMismatch("candidate core differs from the kernel on a whole strand")
    eps = candidate
    if excess:
        smallest = min(_rational_below(_abs_max(seq_value(op.diag, k) for op in ops))
                       for k in excess)
        eps = min(candidate, smallest / 2)
        core = epsilon_core(ops, eps).core_indices
        if core.symmetric_difference(kernel) != ():
            raise OracleMismatch(f"shrunken eps={eps} still leaves an excess")
    return ClosednessVerdict(True, m, eps, core, kernel, kernel.complement(),
                             candidate, excess)


def revalidate_closedness(ops: Sequence[ModelOperator], v: ClosednessVerdict) -> bool:
    """Independent re-check of a closedness certificate."""
    if v.closed:
        core = epsilon_core(ops, v.eps).core_indices
        kern = kernel_core(ops).core_indices
        return core.symmetric_difference(kern) == () and v.eps > 0
    seqs = refine_common([op.diag for op in ops])
    strands = [s.strands[v.witness_strand] for s in seqs]
    return all(st.limit == 0 for st in strands) and any(not st.is_zero() for st in strands)


def check_range_closed_single(op: ModelOperator) -> ClosednessVerdict:
    """Closed range of one operator: a spectral gap at 0."""
    _require_block_free([op])
    v = check_sum_ranges_closed([op])
    if v.closed == essential_spectrum(op).zero_accumulation:
        raise OracleMismatch("gap analysis disagrees with the accumulation flag")
    return v


# -- finite-dimensional range statements ------------------------------------------
def _stack(mats) -> list:
    arrs = [as_array(b) for b in mats]
    if not arrs:
        raise ValueError("need at least one matrix")
    n = arrs[0].shape[0]
    if any(a.shape[0] != n for a in arrs):
        raise ValueError("matrices must share the row dimension")
    return arrs


@dataclass(frozen=True)
class CoercivityReport:
    constant: float  # lambda_min(sum B_i B_i*)
    samples: int
    worst_slack: float  # min over samples of sum ||B_i* x||^2 - lambda_min
    holds: bool  # every sample satisfies the inequality within tolerance
    tolerances: dict


def coercivity_constant(mats, samples: int = 100, seed: int = 0,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> CoercivityReport:
    arrs = _stack(mats)
    n = arrs[0].shape[0]
    gram = HermitianMatrix(sum(a @ a.conj().T for a in arrs))
    lam = lambda_min(gram, tol)
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, samples)) + 1j * rng.normal(size=(n, samples))
    x /= np.linalg.norm(x, axis=0)
    energy = sum(np.linalg.norm(a.conj().T @ x, axis=0) ** 2 for a in arrs)
    slack = float(np.min(energy - lam))
    return CoercivityReport(lam, samples, slack, slack >= -tol.match, tol.as_dict())


@dataclass(frozen=True)
class RangesVerdict:
    equal: bool
    rank_stacked: int
    rank_gram: int
    residual: float  # worst containment residual
    violating_vector: Optional[np.ndarray] = field(default=None, compare=False)
    tolerances: dict = field(default_factory=dict)


def _column_space(a: np.ndarray, tol: Tolerances) -> np.ndarray:
    dec = svd(a, tol)
    s = dec.singular_values
    if not s.size or s[0] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    keep = int(np.sum(s > tol.rank * s[0]))
    return dec.left[:, :keep]


def _containment(u: np.ndarray, v: np.ndarray):
    """Worst residual of the columns of ``u`` against the span of ``v``."""
    if u.shape[1] == 0:
        return 0.0, None
    res = u - v @ (v.conj().T @ u)
    norms = np.linalg.norm(res, axis=0)
    i = int(np.argmax(norms))
    return float(norms[i]), u[:, i]


def corollary_ranges_eq(mats, tol: Tolerances = DEFAULT_TOLERANCES) -> RangesVerdict:
    """``sum Ran B_i`` against ``Ran(sum B_i B_i*)`` by mutual containment."""
    arrs = _stack(mats)
    stacked = np.hstack(arrs)
    gram = sum(a @ a.conj().T for a in arrs)
    u = _column_space(stacked, tol)
    ed = eigh(HermitianMatrix(gram), tol)
    w = ed.eigenvalues
    top = float(np.max(np.abs(w))) if w.size else 0.0
    v = ed.eigenvectors[:, w > tol.rank * top] if top > 0 else ed.eigenvectors[:, :0]
    r1, x1 = _containment(u, v)
    r2, x2 = _containment(v, u)
    worst, vec = (r1, x1) if r1 >= r2 else (r2, x2)
    equal = u.shape[1] == v.shape[1] and worst <= tol.subspace
    return RangesVerdict(equal, u.shape[1], v.shape[1], worst, None if equal else vec,
                         tol.as_dict())


# -- joint exceedance of two diagonals -----------------------------------------------------------------
@dataclass(frozen=True)
class ProjectionProductReport:
    finite: bool
    count: Optional[int]
    indices: tuple  # {k : |b(k)| > eps and |c(k)| > delta}
    eps: Fraction
    delta: Fraction


def exceedance_set(b: ModelOperator, c: ModelOperator, eps, delta) -> IndexSet:
    eps, delta = Fraction(eps), Fraction(delta)
    above_b = joint_below_set([b.diag], eps).complement()
    above_c = joint_below_set([c.diag], delta).complement()
    return above_b.intersection(above_c)


def check_projection_product_compact(b: ModelOperator, c: ModelOperator, eps, delta
                                     ) -> ProjectionProductReport:
    """Rank of ``E_B(R - [-eps, eps]) E_C(R - [-delta, delta])`` for diagonal B, C."""
    _require_block_free([b, c])
    if not product_is_compact(b, c):
        raise HypothesisViolation(f"product {b.label}*{c.label} is not compact")
    s = exceedance_set(b, c, eps, delta)
    if s.cofinal:
        raise OracleMismatch(f"exceedance set is cofinal on strand {s.cofinal[0][0]}")
    return ProjectionProductReport(True, len(s.finite), s.finite, Fraction(eps), Fraction(delta))


# -- Gram embedding and spectral gap -------------------------------------------------------------------
@dataclass(frozen=True)
class GapCertificate:
    eps: Optional[float]  # least eigenvalue of sum P_i above zero_tol
    delta: Optional[float]
    mu: Optional[Fraction] = None  # eps^2 * delta, set by the ranges inequality check
    sum_spectrum: tuple = ()  # nonzero eigenvalues of sum P_i, ascending
    gram_spectrum: tuple = ()  # nonzero eigenvalues of the Gram embedding, ascending
    spectra_mismatch: Optional[float] = None
    gram_outliers: Optional[int] = None  # eigenvalues off 1 by more than tol.unit
    exact_delta: Optional[Fraction] = None
    tolerances: dict = field(default_factory=dict)


def _sum_matrices(mats) -> HermitianMatrix:
    return reduce(lambda a, b: a + b, (as_hermitian(p) for p in mats))


def gram_gap(projections, tol: Tolerances = DEFAULT_TOLERANCES,
             embed: bool = True) -> GapCertificate:
    """Gap of ``sum P_i`` above zero, cross-checked against the Gram embedding."""
    if not projections:
        raise ValueError("need at least one projection")
    for i, p in enumerate(projections):
        check_projection(p, i, tol)
    total = _sum_matrices(projections)
    diag = total.exact_diagonal()
    if diag is not None:
        w = np.array(sorted(float(x) for x in diag))
        nz_exact = sorted(x for x in diag if x != 0)
        exact = nz_exact[0] if nz_exact else None
    else:
        w = eigh(total, tol, vectors=False).eigenvalues
        exact = None
    nz = w[w > tol.zero]
    gap = float(nz[0]) if nz.size else None
    cert = dict(eps=gap, delta=gap, sum_spectrum=tuple(float(x) for x in nz),
                exact_delta=exact, tolerances=tol.as_dict())
    if embed:
        g = gram_embedding(projections, tol)
        gw = eigh(g, tol, vectors=False).eigenvalues if g.n else np.zeros(0)
        gnz = gw[gw > tol.zero]
        mismatch = (float(np.max(np.abs(gnz - nz))) if gnz.size else 0.0) \
            if gnz.size == nz.size else float("inf")
        cert.update(gram_spectrum=tuple(float(x) for x in gnz), spectra_mismatch=mismatch,
                    gram_outliers=int(np.sum(np.abs(gw - 1) > tol.unit)))
    return GapCertificate(**cert)


def outside_projection(op: ModelOperator, eps, n: int) -> HermitianMatrix:
    """Exact truncation of ``E_A(R - [-eps, eps])`` for a diagonal operator."""
    eps = Fraction(eps)
    below = joint_below_set([op.diag], eps)
    return HermitianMatrix.diagonal([0 if k in below else 1 for k in range(1, n + 1)])


@dataclass(frozen=True)
class Inequality41Report:
    holds: bool
    eps: Fraction
    delta: Fraction
    mu: Fraction
    core: IndexSet  # H_eps, where the inequality is trivial
    failing: tuple  # off-core indices with sum d_i(k)^2 < mu
    truncation: int
    numeric_assisted: bool = True


def verify_inequality_41(ops: Sequence[ModelOperator], eps, trunc: int = 500,
                         tol: Tolerances = DEFAULT_TOLERANCES,
                         allow_infinite_core: bool = False) -> Inequality41Report:
    """``sum A_i^2 + mu Q >= mu I`` with ``mu = eps^2 delta``, checked index by index.

    An infinite ``H_eps`` is refused unless ``allow_infinite_core`` is set: the
    inequality still makes sense then, but ``Q`` is no longer finite rank.
    """
    _require_block_free(ops)
    eps = Fraction(eps)
    core = epsilon_core(ops, eps)
    if not core.is_finite and not allow_infinite_core:
        raise InfiniteCore(f"H_eps is infinite at eps={eps} (witness strand "
                           f"{core.dimension.witness_strand})")
    cert = gram_gap([outside_projection(op, eps, trunc) for op in ops], tol, embed=False)
    if cert.exact_delta is not None:
        delta = Fraction(cert.exact_delta)
    elif cert.delta is not None:
        delta = Fraction(cert.delta)
    else:
        delta = Fraction(1)
    delta = min(delta, Fraction(1))
    mu = eps * eps * delta
    squares = reduce(seq_add, (seq_mul(op.diag, op.diag) for op in ops))
    low = joint_below_set([squares], mu)
    off_core_low = low.difference(core.core_indices)
    if off_core_low.cofinal:
        return Inequality41Report(False, eps, delta, mu, core.core_indices,
                                  ("strand", off_core_low.cofinal[0][0]), trunc)
    failing = tuple(k for k in off_core_low.finite
                    if compare(seq_value(squares, k), mu) < 0)
    return Inequality41Report(not failing, eps, delta, mu, core.core_indices, failing, trunc)


# -- grouped sums -----------------------------------------------------------------
@dataclass(frozen=True)
class GroupedVerdict:
    closed: bool
    stage: str  # "complete" or the failing stage
    eps: Optional[Fraction] = None  # common gap of the B_p
    group_verdicts: tuple = ()
    reduced: tuple = ()  # the operators B_p
    core: Optional[IndexSet] = None  # H_{eps/2}(B_1..B_m)
    kernel: Optional[IndexSet] = None


def reduced_operator(group: Sequence[ModelOperator], label: str) -> ModelOperator:
    """``B = sum_i A_i A_i^*``, which is ``sum_i A_i^2`` for diagonal operators."""
    return ModelOperator(reduce(seq_add, (seq_mul(op.diag, op.diag) for op in group)), None, label)


def check_grouped_closed(groups: Sequence[Sequence[ModelOperator]]) -> GroupedVerdict:
    if not groups or any(not g for g in groups):
        raise ValueError("need nonempty groups")
    for g in groups:
        _require_block_free(g)
    for p, q in combinations(range(len(groups)), 2):
        for a in groups[p]:
            for b in groups[q]:
                if not product_is_compact(a, b):
                    raise HypothesisViolation(
                        f"cross-group product {a.label}*{b.label} (groups {p + 1}, {q + 1}) "
                        "is not compact")
    verdicts = []
    for p, g in enumerate(groups):
        v = check_sum_ranges_closed(g)
        if not v.closed:
            raise HypothesisViolation(f"group {p + 1}: sum of ranges is not closed "
                                      f"(witness strand {v.witness_strand})")
        verdicts.append(v)
    reduced = [reduced_operator(g, f"B{p + 1}") for p, g in enumerate(groups)]
    gaps = []
    for b in reduced:
        v = check_range_closed_single(b)
        if not v.closed:
            return GroupedVerdict(False, f"gap:{b.label}", None, tuple(verdicts), tuple(reduced))
        gaps.append(v.eps)
    eps = min(gaps)
    for b in reduced:
        if epsilon_core([b], eps / 2).core_indices.symmetric_difference(
                kernel_core([b]).core_indices) != ():
            return GroupedVerdict(False, f"kernel:{b.label}", eps, tuple(verdicts), tuple(reduced))
    core = epsilon_core(reduced, eps / 2).core_indices
    kernel = kernel_core(reduced).core_indices
    closed = core.symmetric_difference(kernel) == ()
    return GroupedVerdict(closed, "complete" if closed else "criterion", eps,
                          tuple(verdicts), tuple(reduced), core, kernel)


# -- transfer of singular sequences -------------------------------------------------------------------
@dataclass(frozen=True)
class TransferReport:
    holds: bool
    norms: tuple  # ||B_1 e_{k_m}|| along the schedule
    first_quarter_max: float
    last_quarter_max: float


def transfer_singular(b1: ModelOperator, b2: ModelOperator, lam, schedule, n: int) -> TransferReport:
    """A singular sequence of ``B_2`` at ``lam != 0`` is singular for ``B_1`` at 0."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if not product_is_compact(b1, b2):
        raise HypothesisViolation(f"product {b1.label}*{b2.label} is not compact")
    ks = tuple(schedule.index_schedule if isinstance(schedule, SingularSchedule) else schedule)
    if not ks or max(ks) > n:
        raise HypothesisViolation("schedule indices must lie within the truncation")
    for m, k in enumerate(ks, start=1):
        gap = Surd.of(seq_value(b2.diag, k)) - lam
        if compare(_abs_max([gap]), Fraction(1, m)) > 0:
            raise HypothesisViolation(f"schedule entry {m} (k={k}) is not within 1/{m} of {lam}")
    mat = truncate(b1, n).array
    norms = tuple(float(np.linalg.norm(mat[:, k - 1])) for k in ks)
    q = max(1, len(norms) // 4)
    first, last = max(norms[:q]), max(norms[-q:])
    return TransferReport(last <= first, norms, first, last)


def effective_delta(eps, n_ops: int) -> Fraction:
    """``delta^2 = eps / (2N)``, kept squared so it stays rational."""
    eps = Fraction(eps)
    if eps <= 0 or n_ops < 1:
        raise ValueError("need eps > 0 and at least one operator")
    return eps / (2 * n_ops)
