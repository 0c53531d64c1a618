"""Built-in invariant suites behind ``sumspec selftest``.

Each suite is small enough to finish in seconds; the full-size versions live
in the acceptance tests.
"""
from __future__ import annotations

import time
from fractions import Fraction
from importlib import resources

import numpy as np

from . import criteria as cr
from .errors import ParseError
from .generate import closed_tuple, not_closed_tuple, projection_family, random_tuple
from .linalg import HermitianMatrix, eigh
from .operators import essential_spectrum, op_sum
from .runner import emit, run
from .scenario import parse_scenario, serialize_scenario
from .sequences import seq_value


def corpus_texts() -> dict:
    root = resources.files("sumspec") / "corpus"
    return {p.name: p.read_text(encoding="utf-8")
            for p in sorted(root.iterdir(), key=lambda p: p.name) if p.name.endswith(".scn")}


def suite_corpus_roundtrip() -> str:
    texts = corpus_texts()
    for name, text in texts.items():
        if serialize_scenario(parse_scenario(text)) != text:
            raise AssertionError(f"{name} does not round-trip")
    return f"{len(texts)} scenarios"


def suite_oracle(count: int = 100) -> str:
    rng = np.random.default_rng(2024)
    for _ in range(count):
        ops = random_tuple(rng)
        v = cr.check_zero_essential(ops)  # raises OracleMismatch on disagreement
        if not cr.check_theorem_a(ops).holds:
            raise AssertionError("essential spectra do not add up")
        if v.in_essential:
            s = cr.build_singular_schedule(ops, 10)
            if not s.verify():
                raise AssertionError("singular schedule exceeds its bound")
    return f"{count} tuples"


def suite_closedness(count: int = 40) -> str:
    rng = np.random.default_rng(7)
    for want, make in ((True, closed_tuple), (False, not_closed_tuple)):
        for _ in range(count):
            ops = make(rng)
            v = cr.check_sum_ranges_closed(ops)
            if v.closed != want or not cr.revalidate_closedness(ops, v):
                raise AssertionError(f"closedness verdict {v.closed}, expected {want}")
    return f"{2 * count} tuples"


def suite_eigh(count: int = 10) -> str:
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 40))
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = HermitianMatrix(g + g.conj().T)
        d = eigh(a)
        resid = np.linalg.norm(a.array @ d.eigenvectors - d.eigenvectors * d.eigenvalues)
        orth = np.linalg.norm(d.eigenvectors.conj().T @ d.eigenvectors - np.eye(n))
        worst = max(worst, resid / max(a.norm, 1.0), orth)
    if worst > 1e-10:
        raise AssertionError(f"eigh residual {worst:.2e}")
    return f"worst residual {worst:.1e}"


def suite_gram(count: int = 3) -> str:
    rng = np.random.default_rng(5)
    for _ in range(count):
        projs, bound = projection_family(rng, dim=60)
        g = cr.gram_gap(projs)
        if g.spectra_mismatch > 1e-9 or g.gram_outliers > bound:
            raise AssertionError("Gram embedding spectrum disagrees with the sum")
    return f"{count} families"


def suite_exact_values() -> str:
    rng = np.random.default_rng(9)
    for _ in range(20):
        ops = random_tuple(rng)
        total = op_sum(ops)
        for k in (1, 2, 7, 30):
            lhs = seq_value(total.diag, k)
            rhs = sum(Fraction(seq_value(op.diag, k)) for op in ops)
            if lhs != rhs:
                raise AssertionError(f"sum value mismatch at k={k}")
        essential_spectrum(total)
    return "20 sums"


def suite_parser_fuzz(count: int = 2000) -> str:
    rng = np.random.default_rng(11)
    alphabet = list(b"operator diag seq mod strand except block matrix check set group "
                    b"{}[]();:,=*^+-#0123456789/ijAB\n\t") + list(range(256))
    for _ in range(count):
        n = int(rng.integers(0, 80))
        data = bytes(int(rng.choice(alphabet)) for _ in range(n))
        try:
            parse_scenario(data)
        except ParseError:
            pass
    return f"{count} inputs"


def suite_determinism() -> str:
    text = corpus_texts()["18_weyl.scn"]
    spec = parse_scenario(text)
    a, b = emit(run(spec)), emit(run(spec))
    if a != b:
        raise AssertionError("repeated runs differ")
    return "byte-identical"


SUITES = (
    ("corpus round-trip", suite_corpus_roundtrip),
    ("zero-in-essential oracle", suite_oracle),
    ("closedness verdicts", suite_closedness),
    ("jacobi eigensolver", suite_eigh),
    ("gram embedding", suite_gram),
    ("exact sums", suite_exact_values),
    ("parser fuzz", suite_parser_fuzz),
    ("report determinism", suite_determinism),
)


def run_selftest(verbose: bool = True) -> int:
    failed = 0
    for name, fn in SUITES:
        start = time.perf_counter()
        try:
            detail, ok = fn(), True
        except Exception as exc:  # a suite failure is reported, not raised
            detail, ok = f"{type(exc).__name__}: {exc}", False
        failed += not ok
        if verbose:
            status = "PASS" if ok else "FAIL"
            print(f"{status}  {name:<26} {detail} ({time.perf_counter() - start:.1f}s)")
    return 1 if failed else 0
