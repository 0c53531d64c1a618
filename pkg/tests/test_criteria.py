from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from conftest import INV_K, diag, direct_value, raw, strand
from sumspec import criteria as cr
from sumspec.errors import HypothesisViolation, InfiniteCore
from sumspec.linalg import HermitianMatrix
from sumspec.operators import ModelOperator
from sumspec.sequences import seq_eval

F = Fraction
ONE_PLUS = strand((1, 0), (1, 1))  # 1 + 1/j


def rank_one(v):
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return HermitianMatrix(np.outer(v, v.conj()))


# -- hypotheses and additivity ------------------------------------------------------------
def test_hypotheses_examples():
    assert cr.check_hypotheses([diag(1, 0), diag(0, 1)]).holds
    r = cr.check_hypotheses([diag(1), diag(1)])
    assert not r.holds and r.failing_pairs == ((1, 2),)
    assert cr.check_hypotheses([diag(ONE_PLUS, 0), diag(strand((1, 2)), 1)]).holds


@pytest.mark.parametrize("ops, points", [
    ([diag(ONE_PLUS, 0), diag(0, 1)], {1}),
    ([diag(INV_K), diag([(1, 2)])], set()),
    ([diag(2, 0), diag(0, -3)], {2, -3}),
])
def test_theorem_a_examples(ops, points):
    r = cr.check_theorem_a(ops)
    assert r.holds and r.sum_points == r.union_points == frozenset(F(x) for x in points)


def test_theorem_a_refuses_noncompact_pair():
    with pytest.raises(HypothesisViolation):
        cr.check_theorem_a([diag(1), diag(1)])


# -- zero in the essential spectrum ---------------------------------------------------------------------------
def test_zero_essential_examples():
    v = cr.check_zero_essential([diag(INV_K), diag([(1, 2)])])
    assert v.in_essential and v.witness_strand == 0
    v = cr.check_zero_essential([diag(ONE_PLUS, 0), diag(0, 1)])
    assert not v.in_essential and v.eps == F(1, 2)
    assert cr.check_zero_essential([ModelOperator.zero(), ModelOperator.zero()]).in_essential


@pytest.mark.parametrize("ops, length, want", [
    ([diag(INV_K)], 3, (1, 2, 3)),
    ([ModelOperator.zero()], 5, (1, 2, 3, 4, 5)),
    ([diag(INV_K), diag([(F(1, 2), 1)])], 2, (1, 2)),
])
def test_schedule_examples(ops, length, want):
    s = cr.build_singular_schedule(ops, length)
    assert s.index_schedule == want and s.verify()


def test_schedule_bound_by_direct_formula():
    ops = [diag(strand((1, 1), (-3, 2)), 2), diag(strand((F(1, 2), 1)), 0)]
    s = cr.build_singular_schedule(ops, 30)
    data = [raw(op) for op in ops]
    for m, k in enumerate(s.index_schedule, start=1):
        assert abs(sum(direct_value(d, k) for d in data)) <= F(len(ops), m)
    assert list(s.index_schedule) == sorted(set(s.index_schedule))


def test_schedule_refused_when_not_essential():
    with pytest.raises(HypothesisViolation):
        cr.build_singular_schedule([diag(1)], 3)


# -- closedness --------------------------------------------------------------------------------
def test_closedness_examples():
    v = cr.check_sum_ranges_closed([diag(INV_K)])
    assert not v.closed and v.witness_strand == 0
    v = cr.check_sum_ranges_closed([diag(1, 0)])
    assert v.closed and v.eps == F(1, 2)
    assert v.core.cofinal_strands == (1,) and v.kernel.cofinal_strands == (1,)
    v = cr.check_sum_ranges_closed([diag(1, 0), diag(0, [(1, 1)])])
    assert not v.closed and v.witness_strand == 1
    for ops in ([diag(INV_K)], [diag(1, 0)], [diag(1, 0), diag(0, [(1, 1)])]):
        assert cr.revalidate_closedness(ops, cr.check_sum_ranges_closed(ops))


def test_closedness_shrinks_eps_past_small_values():
    # value 1/10 at k = 1 sits below the candidate eps 1/2 but is not in the kernel
    op = diag(1, exceptions={1: F(1, 10)})
    v = cr.check_sum_ranges_closed([op])
    assert v.closed and v.candidate_excess == (1,) and v.eps == F(1, 20)
    assert cr.revalidate_closedness([op], v)


@pytest.mark.parametrize("op, closed", [
    (diag(INV_K), False),
    (diag(1, 0), True),
    (diag(strand((2, 0), (-1, 1))), True),
])
def test_single_range_examples(op, closed):
    assert cr.check_range_closed_single(op).closed == closed


# -- finite-dimensional statements ----------------------------------------------------------------
def test_coercivity_examples():
    assert np.isclose(cr.coercivity_constant([np.eye(3)]).constant, 1)
    r = cr.coercivity_constant([np.diag([1.0, 0.0]), np.diag([0.0, 2.0])])
    assert np.isclose(r.constant, 1) and r.holds
    r = cr.coercivity_constant([np.diag([1.0, 0.0]), np.zeros((2, 2))])
    assert abs(r.constant) < 1e-12


def test_corollary_examples():
    assert cr.corollary_ranges_eq([np.array([[2.0, 1.0], [0.0, 1.0]])]).equal
    assert cr.corollary_ranges_eq([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]).equal
    r = cr.corollary_ranges_eq([np.array([[1.0, 1.0], [1.0, 1.0]]) / 2])
    assert r.equal and r.rank_stacked == r.rank_gram == 1


def test_corollary_rectangular():
    rng = np.random.default_rng(3)
    mats = [rng.normal(size=(6, 2)), rng.normal(size=(6, 1)) @ rng.normal(size=(1, 4))]
    r = cr.corollary_ranges_eq(mats)
    assert r.equal and r.rank_stacked == 3


# -- joint exceedance -----------------------------------------------------------------------------------
def test_projection_product_examples():
    r = cr.check_projection_product_compact(diag(INV_K), diag(1), F(1, 10), F(1, 2))
    assert r.finite and r.count <= 9
    z = ModelOperator.zero()
    assert cr.check_projection_product_compact(z, z, F(1, 2), F(1, 2)).count == 0
    b, c = diag(1, [(1, 1)]), diag([(1, 2)], 1)
    r = cr.check_projection_product_compact(b, c, F(1, 2), F(1, 2))
    assert r.finite
    found = [k for k in range(1, 10_001)
             if abs(seq_eval(b.diag, k)) > F(1, 2) and abs(seq_eval(c.diag, k)) > F(1, 2)]
    assert tuple(found) == r.indices


# -- Gram embedding -----------------------------------------------------------------------------------
def test_gram_gap_examples():
    g = cr.gram_gap([rank_one([1, 0]), rank_one([0, 1])])
    assert np.isclose(g.eps, 1)
    p = rank_one([1, 1])
    g = cr.gram_gap([p, p])
    assert np.isclose(g.eps, 2) and np.allclose(g.sum_spectrum, [2])
    g = cr.gram_gap([rank_one([1, 0]), rank_one([3, 4])])
    assert np.isclose(g.eps, 0.4) and np.allclose(g.sum_spectrum, [0.4, 1.6])
    assert g.spectra_mismatch < 1e-12


def test_gram_gap_exact_diagonal():
    g = cr.gram_gap([HermitianMatrix.diagonal([1, 0, 1]), HermitianMatrix.diagonal([0, 0, 1])])
    assert g.exact_delta == 1 and g.eps == 1


# -- ranges inequality ------------------------------------------------------------------------------
def test_ineq41_examples():
    r = cr.verify_inequality_41([diag(1, 0)], F(1, 2), allow_infinite_core=True)
    assert r.holds and r.delta == 1 and r.mu == F(1, 4)
    with pytest.raises(InfiniteCore):
        cr.verify_inequality_41([diag(1, 0)], F(1, 2))
    with pytest.raises(InfiniteCore):
        cr.verify_inequality_41([ModelOperator.zero(), ModelOperator.zero()], F(1, 2))
    r = cr.verify_inequality_41([diag(ONE_PLUS, 0), diag(0, 1)], F(1, 3))
    assert r.holds and r.delta == 1 and r.mu == F(1, 9)


def test_ineq41_truncation_stable():
    ops = [diag(strand((1, 0), (-1, 1)), 0), diag(strand((1, 2)), strand((F(-1, 2), 0), (1, 1)))]
    a = cr.verify_inequality_41(ops, F(1, 5), 500)
    b = cr.verify_inequality_41(ops, F(1, 5), 250)
    assert a.holds == b.holds is True


# -- grouped sums and transfer ------------------------------------------------------------
def test_grouped_examples():
    assert cr.check_grouped_closed([[diag(1, 0)], [diag(0, 1)]]).closed
    assert cr.check_grouped_closed([[diag(1, 0)]]).closed
    g1, g2 = [diag(1, 0, 0)], [diag(0, strand((1, 0), (F(-1, 2), 1)), 0)]
    v = cr.check_grouped_closed([g1, g2])
    assert v.closed and v.stage == "complete"
    ops = g1 + g2
    for k in range(1, 10_001):
        inside = all(abs(seq_eval(op.diag, k)) ** 2 <= v.eps / 2 for op in ops)
        assert inside == (k in v.core) == (k in v.kernel)


def test_grouped_refuses_not_closed_group():
    with pytest.raises(HypothesisViolation):
        cr.check_grouped_closed([[diag(INV_K)]])


def test_transfer_examples():
    b1, b2 = diag(INV_K), diag(strand((1, 0), (-1, 1)))
    r = cr.transfer_singular(b1, b2, 1, list(range(1, 21)), 20)
    assert r.holds and np.allclose(r.norms, [1 / m for m in range(1, 21)])
    b1, b2 = diag(0, 1), diag(strand((1, 0), (1, 1)), 0)
    sched = cr.lambda_schedule(b2, 1, 10)
    assert all(x == 0 for x in cr.transfer_singular(b1, b2, 1, sched, 40).norms)
    b1, b2 = diag(1, [(1, 1)]), diag([(1, 1)], 1)
    sched = cr.lambda_schedule(b2, 1, 10)
    assert sched.witness_strand == 1
    r = cr.transfer_singular(b1, b2, 1, sched, 40)
    js = [(k - 1) // 2 + 1 for k in sched.index_schedule]
    assert np.allclose(r.norms, [1 / j for j in js]) and r.holds


@pytest.mark.parametrize("eps, n, want", [(1, 2, F(1, 4)), (2, 1, F(1)), (F(1, 2), 4, F(1, 16))])
def test_effective_delta(eps, n, want):
    assert cr.effective_delta(eps, n) == want
