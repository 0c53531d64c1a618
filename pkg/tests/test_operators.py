from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from conftest import INV_K, diag, strand
from sumspec.errors import BlockNotSupported, IrrationalValue
from sumspec.linalg import HermitianMatrix
from sumspec.operators import (ModelOperator, epsilon_core, essential_spectrum, is_compact,
                               kernel_core, op_sum, product_is_compact, truncate)
from sumspec.sequences import seq_eval

F = Fraction
SWAP = HermitianMatrix([[0, 1], [1, 0]])


def test_op_sum_examples():
    a = diag(INV_K)
    assert op_sum([a]) is a
    z = op_sum([diag(INV_K), diag([(-1, 1)])])
    assert all(s.is_zero() for s in z.diag.strands)
    one = op_sum([diag(1, 0), diag(0, 1)])
    assert all(seq_eval(one.diag, k) == 1 for k in range(1, 101))


def test_op_sum_adds_blocks():
    s = op_sum([diag(0, block=SWAP), diag(0, block=HermitianMatrix([[1]]))])
    assert s.block == HermitianMatrix([[1, 1], [1, 0]])


def test_compactness():
    assert is_compact(diag(INV_K))
    assert not is_compact(diag(1))
    assert is_compact(diag(INV_K, block=HermitianMatrix([[10]])))


def test_product_compactness():
    assert product_is_compact(diag(1, 0), diag(0, 1))
    assert not product_is_compact(diag(1), diag(1))
    a = diag(strand((1, 0), (1, 1)), strand((1, 1)))
    b = diag(strand((1, 2)), 1)
    assert product_is_compact(a, b)


def test_essential_spectrum_examples():
    assert essential_spectrum(diag(INV_K)).essential_points == {0}
    assert essential_spectrum(diag(1, 0)).essential_points == {0, 1}
    big = HermitianMatrix([[10]])
    assert essential_spectrum(diag(INV_K, block=big)).essential_points == {0}


def test_epsilon_core_examples():
    assert not epsilon_core([diag(INV_K)], 1).is_finite
    r = epsilon_core([diag(strand((1, 0), (1, 1)), 0), diag(0, 1)], F(1, 3))
    assert r.is_finite and r.dimension.count == 0
    for eps in (F(1), F(1, 7), F(1, 1000)):
        assert not epsilon_core([diag(INV_K), diag([(1, 2)])], eps).is_finite


def test_epsilon_core_scan():
    ops = [diag(strand((1, 0), (1, 1)), 0), diag(0, 1)]
    core = epsilon_core(ops, F(1, 3)).core_indices
    for k in range(1, 10_001):
        inside = all(abs(seq_eval(op.diag, k)) <= F(1, 3) for op in ops)
        assert inside == (k in core)


def test_kernel_core_examples():
    assert not kernel_core([ModelOperator.zero()]).is_finite
    r = kernel_core([diag(INV_K)])
    assert r.is_finite and r.dimension.count == 0
    r = kernel_core([diag(1, 0), diag([(1, 1)], 0)])
    assert not r.is_finite and r.dimension.witness_strand == 1


def test_blocks_refused_by_symbolic_cores():
    with pytest.raises(BlockNotSupported):
        epsilon_core([diag(INV_K, block=SWAP)], F(1, 2))


def test_truncate_examples():
    assert truncate(diag(INV_K), 3).exact_diagonal() == [1, F(1, 2), F(1, 3)]
    z = truncate(ModelOperator.zero(), 5)
    assert np.all(z.array == 0)
    m = truncate(diag(INV_K, block=SWAP), 3)
    want = [[1, 1, 0], [1, F(1, 2), 0], [0, 0, F(1, 3)]]
    assert m == HermitianMatrix(want)


def test_truncate_irrational():
    op = diag([(1, F(1, 2))])
    m = truncate(op, 3)
    assert np.allclose(np.diag(m.array).real, [1, 2 ** -0.5, 3 ** -0.5])
    with pytest.raises(IrrationalValue):
        truncate(op, 3, exact=True)
