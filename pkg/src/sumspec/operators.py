"""Model self-adjoint operators: a symbolic diagonal plus an optional finite block."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .errors import BlockNotSupported, IrrationalValue
from .linalg import HermitianMatrix, as_hermitian
from .radicals import Surd
from .sequences import (CountResult, IndexSet, SymbolicSequence, joint_below_set,
                        joint_zero_set, seq_add, seq_limit_points, seq_mul,
                        seq_tends_to_zero, seq_value)


@dataclass(frozen=True)
class ModelOperator:
    """``A = diag(d) + block``, the block acting on coordinates ``1..n``."""

    diag: SymbolicSequence
    block: Optional[HermitianMatrix] = None
    label: str = "A"

    def __post_init__(self):
        if not isinstance(self.diag, SymbolicSequence):
            raise TypeError("diag must be a SymbolicSequence")
        if self.block is not None:
            object.__setattr__(self, "block", as_hermitian(self.block))

    @classmethod
    def from_strands(cls, strands, label: str = "A", exceptions=None, block=None) -> "ModelOperator":
        return cls(SymbolicSequence.from_strands(strands, exceptions), block, label)

    @classmethod
    def zero(cls, label: str = "0") -> "ModelOperator":
        return cls(SymbolicSequence.zero(), None, label)

    @property
    def has_block(self) -> bool:
        return self.block is not None

    def without_block(self) -> "ModelOperator":
        return ModelOperator(self.diag, None, self.label)

    def __str__(self) -> str:
        tail = f" block {self.block.n}" if self.block is not None else ""
        return f"{self.label} = diag {self.diag}{tail}"


def op_sum(ops: Sequence[ModelOperator], label: Optional[str] = None) -> ModelOperator:
    """Sum of operators: diagonals added pointwise, blocks padded and added."""
    if not ops:
        raise ValueError("op_sum needs at least one operator")
    if len(ops) == 1 and label is None:
        return ops[0]
    diag = reduce(seq_add, (op.diag for op in ops))
    blocks = [op.block for op in ops if op.block is not None]
    block = reduce(lambda a, b: a + b, blocks) if blocks else None
    return ModelOperator(diag, block, label or "+".join(op.label for op in ops))


def is_compact(op: ModelOperator) -> bool:
    """Diagonal entries tend to zero; a finite block never matters."""
    return seq_tends_to_zero(op.diag)


def product_is_compact(a: ModelOperator, b: ModelOperator) -> bool:
    return seq_tends_to_zero(seq_mul(a.diag, b.diag))


@dataclass(frozen=True)
class SpectrumInfo:
    essential_points: frozenset
    strand_laws: tuple  # per-strand value law, as text
    exceptions: tuple  # (index, value) pairs
    zero_accumulation: bool  # 0 is a limit of nonzero attained values

    def without_zero(self) -> frozenset:
        return frozenset(x for x in self.essential_points if x != 0)


def essential_spectrum(op: ModelOperator) -> SpectrumInfo:
    """Essential spectrum of ``op``; the block is never read (Weyl)."""
    d = op.diag
    zero_acc = any(st.limit == 0 and not st.is_zero() for st in d.strands)
    return SpectrumInfo(seq_limit_points(d), tuple(str(st) for st in d.strands),
                        d.exceptions, zero_acc)


@dataclass(frozen=True)
class EpsilonCoreReport:
    eps: Fraction  # 0 for the kernel
    dimension: CountResult
    core_indices: IndexSet = field(repr=False)

    @property
    def is_finite(self) -> bool:
        return self.dimension.finite


def _require_block_free(ops: Sequence[ModelOperator]) -> None:
    if not ops:
        raise ValueError("need at least one operator")
    for op in ops:
        if op.block is not None:
            raise BlockNotSupported(f"operator {op.label} carries a block; use the truncation lab")


def epsilon_core(ops: Sequence[ModelOperator], eps) -> EpsilonCoreReport:
    """``H_eps``: indices where every diagonal satisfies ``|d_i(k)| <= eps``."""
    _require_block_free(ops)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    idx = joint_below_set([op.diag for op in ops], eps)
    return EpsilonCoreReport(eps, CountResult.of(idx), idx)


def kernel_core(ops: Sequence[ModelOperator]) -> EpsilonCoreReport:
    """``H_0``: the joint kernel."""
    _require_block_free(ops)
    idx = joint_zero_set([op.diag for op in ops])
    return EpsilonCoreReport(Fraction(0), CountResult.of(idx), idx)


def diagonal_values(op: ModelOperator, n: int, exact: bool = True) -> list:
    """Diagonal entries ``d(1..n)``: Fractions, or floats for irrational values.

    With ``exact=True`` an irrational entry raises IrrationalValue.
    """
    out = []
    for k in range(1, n + 1):
        v = seq_value(op.diag, k)
        if isinstance(v, Surd):
            if exact:
                raise IrrationalValue(f"{op.label}: value at k={k} is irrational ({v})")
            v = float(v)
        out.append(v)
    return out


def truncate(op: ModelOperator, n: int, exact: bool = False) -> HermitianMatrix:
    """The ``n x n`` corner: diagonal values plus the block.

    The result is exact whenever every entry is rational.  Irrational diagonal
    values are rounded from certified enclosures unless ``exact`` is set, in
    which case IrrationalValue is raised.
    """
    if n < 1:
        raise ValueError("truncation size must be positive")
    if op.block is not None and op.block.n > n:
        raise ValueError(f"truncation size {n} is smaller than the block ({op.block.n})")
    values = diagonal_values(op, n, exact)
    if all(isinstance(v, Fraction) for v in values):
        m = HermitianMatrix.diagonal(values)
    else:
        m = HermitianMatrix(np.diag(np.array([float(v) for v in values])))
    if op.block is not None:
        m = m + op.block.padded(n)
    return m
