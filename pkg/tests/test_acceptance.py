"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (the lines appear in the verbose output) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import INV_K, diag, direct_limit, direct_value, direct_values_float, raw, strand  # noqa: E402

from sumspec import criteria as cr  # noqa: E402
from sumspec.errors import ParseError  # noqa: E402
from sumspec.generate import (closed_tuple, finite_core_tuple, matrix_family,  # noqa: E402
                              not_closed_tuple, projection_family, random_tuple)
from sumspec.operators import essential_spectrum, op_sum, product_is_compact  # noqa: E402
from sumspec.runner import emit, run  # noqa: E402
from sumspec.scenario import parse_scenario, serialize_scenario  # noqa: E402
from sumspec.selftest import corpus_texts  # noqa: E402
from sumspec.truncation import truncated_spectrum, truncation_spectrum_convergence  # noqa: E402

F = Fraction
POPULATION = 1000
SEED = 20260


def _emit_line(capsys, n: int, ok: bool, text: str) -> None:
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {text}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


@lru_cache(maxsize=1)
def population() -> tuple:
    rng = np.random.default_rng(SEED)
    return tuple(tuple(random_tuple(rng)) for _ in range(POPULATION))


def oracle_zero_essential(ops) -> bool:
    """0 is essential iff some residue of the common modulus has sum-limit 0."""
    data = [raw(op) for op in ops]
    big = math.lcm(*(d[0] for d in data))
    return any(sum(direct_limit(d, r) for d in data) == 0 for r in range(big))


def oracle_points(data_list, big: int) -> tuple:
    sum_pts = {sum(direct_limit(d, r) for d in data_list) for r in range(big)} - {0}
    union = {direct_limit(d, r) for d in data_list for r in range(d[0])} - {0}
    return sum_pts, union


# -- 1 --------------------------------------------------------------------------------
def criterion_1(capsys=None) -> bool:
    pop = population()
    start = time.perf_counter()
    verdicts = [cr.check_zero_essential(list(ops)) for ops in pop]
    elapsed = time.perf_counter() - start
    agree = sum(v.in_essential == (0 in essential_spectrum(op_sum(list(ops))).essential_points)
                == oracle_zero_essential(ops) for v, ops in zip(verdicts, pop))
    ok = agree == len(pop) and elapsed < 60
    _emit_line(capsys, 1, ok, f"zero-in-essential oracle equivalence: {agree}/{len(pop)} agree, "
                              f"{elapsed:.1f} s (< 60 s)")
    return ok


# -- 2 --------------------------------------------------------------------------------
def criterion_2(capsys=None) -> bool:
    pop = population()
    good = 0
    for ops in pop:
        r = cr.check_theorem_a(list(ops))
        data = [raw(op) for op in ops]
        s, u = oracle_points(data, math.lcm(*(d[0] for d in data)))
        good += r.holds and r.sum_points == s and r.union_points == u
    ok = good == len(pop)
    _emit_line(capsys, 2, ok, f"additivity of essential spectra, exact sets: {good}/{len(pop)}")
    return ok


# -- 3 --------------------------------------------------------------------------------
def _witness_is_valid(ops, strand_id: int) -> bool:
    data = [raw(op) for op in ops]
    big = math.lcm(*(d[0] for d in data))
    limits_zero = all(direct_limit(d, strand_id) == 0 for d in data)
    # nonvanishing: some operator is nonzero at infinitely many indices of that residue
    ks = [strand_id + 1 + big * t for t in range(20, 40)]
    return limits_zero and any(direct_value(d, k) != 0 for d in data for k in ks)


def criterion_3(capsys=None, count: int = 200) -> bool:
    rng = np.random.default_rng(SEED + 3)
    right = revalid = 0
    for want, make in ((True, closed_tuple), (False, not_closed_tuple)):
        for _ in range(count):
            ops = make(rng)
            v = cr.check_sum_ranges_closed(ops)
            right += v.closed == want
            if v.closed:
                revalid += cr.revalidate_closedness(ops, v)
            else:
                revalid += cr.revalidate_closedness(ops, v) and _witness_is_valid(ops, v.witness_strand)
    ok = right == revalid == 2 * count
    _emit_line(capsys, 3, ok, f"closedness verdicts {right}/{2 * count}, "
                              f"certificates re-validated {revalid}/{2 * count}")
    return ok


# -- 4 --------------------------------------------------------------------------------
def criterion_4(capsys=None, length: int = 50) -> bool:
    checked = bad = 0
    for ops in population():
        ops = list(ops)
        if not oracle_zero_essential(ops):
            continue
        s = cr.build_singular_schedule(ops, length)
        data = [raw(op) for op in ops]
        n = len(ops)
        checked += 1
        if len(s.index_schedule) != length or not s.verify():
            bad += 1
            continue
        if any(abs(sum(direct_value(d, k) for d in data)) > F(n, m)
               for m, k in enumerate(s.index_schedule, start=1)):
            bad += 1
    ok = bad == 0 and checked > 0
    _emit_line(capsys, 4, ok, f"singular schedules (length {length}) exact bound N/m: "
                              f"{checked - bad}/{checked} in-essential tuples")
    return ok


# -- 5 --------------------------------------------------------------------------------
def _exceeds(data, vals: np.ndarray, thr: Fraction) -> np.ndarray:
    """``|v_k| > thr`` with exact re-evaluation near the threshold."""
    out = np.abs(vals) > float(thr)
    near = np.nonzero(np.abs(np.abs(vals) - float(thr)) < 1e-9)[0]
    for i in near:
        out[i] = abs(direct_value(data, int(i) + 1)) > thr
    return out


def criterion_5(capsys=None, count: int = 200, scan: int = 100_000) -> bool:
    rng = np.random.default_rng(SEED + 5)
    thresholds = (F(1, 2), F(1, 10), F(1, 100))
    cases = bad = 0
    pairs = 0
    while pairs < count:
        b, c = random_tuple(rng, n_ops=2)
        if not product_is_compact(b, c):
            continue
        pairs += 1
        db, dc = raw(b), raw(c)
        vb, vc = direct_values_float(db, scan), direct_values_float(dc, scan)
        for eps in thresholds:
            eb = _exceeds(db, vb, eps)
            for delta in thresholds:
                cases += 1
                r = cr.check_projection_product_compact(b, c, eps, delta)
                found = set((np.nonzero(eb & _exceeds(dc, vc, delta))[0] + 1).tolist())
                if not r.finite or not found <= set(r.indices) or \
                        {k for k in r.indices if k <= scan} != found:
                    bad += 1
    ok = bad == 0
    _emit_line(capsys, 5, ok, f"joint exceedance sets: {cases - bad}/{cases} cases "
                              f"({pairs} pairs x 9) finite and confirmed by scan to {scan}")
    return ok


# -- 6 --------------------------------------------------------------------------------
def criterion_6(capsys=None, count: int = 100) -> bool:
    rng = np.random.default_rng(SEED + 6)
    worst, bad = 0.0, 0
    for _ in range(count):
        projs, bound = projection_family(rng, dim=200)
        g = cr.gram_gap(projs)
        worst = max(worst, g.spectra_mismatch)
        bad += g.spectra_mismatch > 1e-9 or g.gram_outliers > bound
    ok = bad == 0
    _emit_line(capsys, 6, ok, f"gram embedding vs sum of projections (dim 200): {count - bad}/{count}, "
                              f"worst spectral mismatch {worst:.1e} (<= 1e-9)")
    return ok


# -- 7 --------------------------------------------------------------------------------
def criterion_7(capsys=None, count: int = 100) -> bool:
    rng = np.random.default_rng(SEED + 7)
    bad = 0
    least = math.inf
    for i in range(count):
        mats = matrix_family(rng, n=50)
        c = cr.coercivity_constant(mats, samples=100, seed=i)
        r = cr.corollary_ranges_eq(mats)
        least = min(least, c.constant)
        bad += not (c.constant > 1e-8 and c.worst_slack >= -1e-9 and r.equal)
    ok = bad == 0
    _emit_line(capsys, 7, ok, f"coercivity and range equality (n = 50): {count - bad}/{count}, "
                              f"least constant {least:.2e}")
    return ok


# -- 8 --------------------------------------------------------------------------------
def criterion_8(capsys=None, count: int = 50) -> bool:
    rng = np.random.default_rng(SEED + 8)
    good = 0
    for _ in range(count):
        ops, eps = finite_core_tuple(rng)
        a = cr.verify_inequality_41(ops, eps, 500)
        b = cr.verify_inequality_41(ops, eps, 250)
        good += a.holds and b.holds
    ok = good == count
    _emit_line(capsys, 8, ok, f"ranges inequality on finite cores: {good}/{count} hold at "
                              f"truncation 500 and 250")
    return ok


# -- 9 --------------------------------------------------------------------------------
def criterion_9(capsys=None) -> bool:
    k = diag(INV_K)
    checks = {
        "diag(1/k) not closed": not cr.check_range_closed_single(k).closed,
        "diag(1/k) sigma_e = {0}": essential_spectrum(k).essential_points == {0},
        "diagonal projection closed": all(
            cr.check_range_closed_single(diag(*p)).closed
            for p in ((1, 0), (0, 1, 1), (1,), (1, 0, 0, 1, 0))),
        "theorem B scenario closed": run(parse_scenario(
            corpus_texts()["04_theorem_b.scn"])).results[-1]["verdict"] == "Closed",
        "grouped projections closed": cr.check_grouped_closed(
            [[diag(1, 0, 0)], [diag(0, 1, 0), diag(0, 1, 0)], [diag(0, 0, 1)]]).closed,
    }
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    _emit_line(capsys, 9, ok, "classical anchors: " + ("all exact" if ok else f"failed {failed}"))
    return ok


# -- 10 -------------------------------------------------------------------------------
def criterion_10(capsys=None) -> bool:
    op = diag(strand((1, 0), (1, 1)), -1)
    r = truncation_spectrum_convergence(op, (100, 200, 400))
    h = r.hausdorff_to_essential[-1]
    n = 50
    spec = truncated_spectrum(diag(INV_K), n)
    exact = all(isinstance(x, Fraction) for x in spec) and set(spec) == {F(1, j) for j in range(1, n + 1)}
    ok = h <= 0.02 and exact
    _emit_line(capsys, 10, ok, f"truncation lab: Hausdorff to {{1, -1}} at n = 400 is {h:.4f} "
                               f"(<= 0.02); diag(1/k) spectra exact: {exact}")
    return ok


# -- 11 -------------------------------------------------------------------------------
def _fuzz_inputs(rng, count: int):
    pieces = [b"operator ", b"diag ", b"seq ", b"mod ", b"strand ", b"except ", b"block ",
              b"matrix ", b"check ", b"set ", b"group ", b"{", b"}", b"[", b"]", b"(", b")",
              b";", b":", b",", b"=", b"*", b"^", b"+", b"-", b"->", b"#", b"\n", b" ", b"j",
              b"i", b"A", b"B", b"1", b"2", b"0", b"/", b"1/2", b"main", b"weyl", b"seed",
              b"\xff", b"\r\n", b"1e5", b"2j-1"]
    for t in range(count):
        if t % 2:
            yield rng.integers(0, 256, size=int(rng.integers(0, 64)), dtype=np.uint8).tobytes()
        else:
            idx = rng.integers(0, len(pieces), size=int(rng.integers(0, 40)))
            yield b"".join(pieces[i] for i in idx)


def criterion_11(capsys=None, fuzz: int = 100_000) -> bool:
    texts = corpus_texts()
    roundtrip = sum(serialize_scenario(parse_scenario(t)) == t for t in texts.values())
    rng = np.random.default_rng(SEED + 11)
    crashes, slowest = 0, 0.0
    for data in _fuzz_inputs(rng, fuzz):
        t0 = time.perf_counter()
        try:
            parse_scenario(data)
        except ParseError:
            pass
        except Exception:  # anything else is a crash
            crashes += 1
        slowest = max(slowest, time.perf_counter() - t0)
    same = 0
    for t in texts.values():
        spec = parse_scenario(t)
        same += emit(run(spec, seed=7)) == emit(run(spec, seed=7, workers=2))
    ok = roundtrip == len(texts) == 20 and crashes == 0 and slowest < 1.0 and same == len(texts)
    _emit_line(capsys, 11, ok, f"corpus round-trip {roundtrip}/20; fuzz {fuzz} inputs, "
                               f"{crashes} crashes, slowest {slowest * 1e3:.1f} ms; "
                               f"serial == parallel JSON {same}/{len(texts)}")
    return ok


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_acceptance(criterion, capsys):
    assert criterion(capsys)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
