"""Acceptance criteria, one test each.

Every test prints a single ``CRITERION k PASS|FAIL`` line (visible with
``-s``); the lines are also repeated in the terminal summary.
"""
import time

import numpy as np
import pytest

from boundmagic.codes import catalog, get_code, is_trivial, make_code, random_code, random_trivial_code
from boundmagic.engine import coset_sums, dense_oracle, dense_oracle_vector, distill, iterate
from boundmagic.errors import ZeroSuccessError
from boundmagic.scan import find_threshold
from boundmagic.states import AXIS_H, AXIS_T, BlochState, octahedron_test, surface_fidelity
from boundmagic.witness import build_witness, epsilon_bisect

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


def report(k: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print(line)


def _deviation(a, b) -> float:
    return max(
        abs(a.success_prob - b.success_prob),
        float(np.max(np.abs(np.subtract(a.out_bloch, b.out_bloch)))),
        abs(a.out_fidelity - b.out_fidelity),
    )


def _random_pairs(rng, count):
    for _ in range(count):
        yield float(rng.uniform(0.5, 1.0)), rng.normal(size=3)


def test_1_oracle_equivalence():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst, evaluated, skipped = 0.0, 0, 0
    codes = [get_code("five_qubit"), get_code("steane")]
    codes += [random_code(int(rng.integers(1, 7)), rng, nontrivial=False) for _ in range(200)]
    for code in codes:
        for f, axis in _random_pairs(rng, 50):
            state = BlochState(f, axis)
            try:
                fast = distill(code, state)
            except ZeroSuccessError:
                # both paths must agree that postselection fails
                with pytest.raises(ZeroSuccessError):
                    dense_oracle(code, state)
                skipped += 1
                continue
            worst = max(worst, _deviation(fast, dense_oracle(code, state)))
            evaluated += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 60
    report(1, ok, f"max deviation {worst:.2e} over {evaluated} pairs ({skipped} zero-success) "
                  f"on {len(codes)} codes in {elapsed:.1f}s")
    assert ok


def test_2_steane_tight():
    value = find_threshold(get_code("steane"), AXIS_H)
    target = 0.5 * (1 + 1 / np.sqrt(2))
    ok = value is not None and abs(value - target) <= 1e-6
    report(2, ok, f"threshold {value} vs {target:.10f}")
    assert ok


def test_3_five_qubit_gap():
    code = get_code("five_qubit")
    fs = surface_fidelity(AXIS_T)
    fast = find_threshold(code, AXIS_T)
    dense = find_threshold(code, AXIS_T, engine=dense_oracle_vector)
    ok = (
        abs(fs - 0.5 * (1 + 1 / np.sqrt(3))) < 1e-15
        and fast is not None and dense is not None
        and fast - fs >= 1e-3
        and abs(fast - dense) <= 1e-8
    )
    report(3, ok, f"threshold {fast:.10f}, gap {fast - fs:.6f}, |engine - dense| {abs(fast - dense):.1e}")
    assert ok


def test_4_below_surface_window():
    code = get_code("five_qubit")
    fs = surface_fidelity(AXIS_T)
    at_surface = distill(code, BlochState(fs, AXIS_T))
    eps = epsilon_bisect(code, AXIS_T)
    f = fs + eps.epsilon / 2
    inside = distill(code, BlochState(f, AXIS_T))
    ok = (
        at_surface.verdict.interior and at_surface.verdict.margin < -1e-6
        and eps.epsilon > 1e-6
        and octahedron_test(BlochState(f, AXIS_T).bloch).location == "exterior"
        and inside.verdict.interior
    )
    report(4, ok, f"surface margin {at_surface.verdict.margin:.4f}, epsilon {eps.epsilon:.6f}, "
                  f"witness f {f:.6f} -> {inside.verdict.location}")
    assert ok


def test_5_witness_universal():
    rng = np.random.default_rng(5)
    start = time.perf_counter()
    codes = [c for c in catalog() if not is_trivial(c)]
    codes += [random_code(int(rng.integers(2, 8)), rng) for _ in range(200)]
    failures = []
    for code in codes:
        w = build_witness(code)
        if not w.holds:
            failures.append(f"{code}: witness")
            continue
        for _ in range(3):
            axis = rng.uniform(1e-3, 1.0, size=3)
            out = distill(code, BlochState.at_surface(axis))
            if not out.verdict.interior:
                failures.append(f"{code}: axis {axis} -> {out.verdict.location}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    report(5, ok, f"{len(codes)} codes, {len(failures)} failures, {elapsed:.1f}s")
    assert ok, failures[:5]


def test_6_trivial_codes():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(20):
        code = random_trivial_code(int(rng.integers(2, 8)), rng)
        assert is_trivial(code)
        axis = rng.normal(size=3)
        for f in (0.5, 0.6, 0.75, 0.9, 1.0):
            state = BlochState(f, axis)
            worst = max(worst, float(np.max(np.abs(np.subtract(distill(code, state).out_bloch, state.bloch)))))
    ok = worst <= 1e-12
    report(6, ok, f"max |out - in| {worst:.1e} over 20 codes x 5 fidelities")
    assert ok


def test_7_iteration_inherits():
    code = make_code(["XX"], name="two_qubit_xx")
    eps = epsilon_bisect(code, AXIS_T)
    f = surface_fidelity(AXIS_T) + eps.epsilon / 2
    rounds = iterate(code, BlochState(f, AXIS_T), 3)
    verdicts = [o.verdict.location for o in rounds]
    ok = len(rounds) == 3 and all(o.verdict.interior for o in rounds)
    report(7, ok, f"epsilon {eps.epsilon:.6f}, f {f:.6f}, rounds {verdicts}")
    assert ok


def test_8_polynomial_structure():
    rng = np.random.default_rng(8)
    worst = 0.0
    for code in catalog():
        n = code.n
        for axis in (AXIS_T, AXIS_H, rng.normal(size=3)):
            a = np.asarray(axis) / np.linalg.norm(axis)
            # n + 1 Chebyshev nodes in t = 2f - 1, held-out points elsewhere
            nodes = np.cos((2 * np.arange(n + 1) + 1) * np.pi / (2 * (n + 1)))
            values = np.array([coset_sums(code, t * a) for t in nodes])
            coeffs = np.polynomial.polynomial.polyfit(nodes, values, n)
            for t in rng.uniform(-1, 1, size=5):
                predicted = np.polynomial.polynomial.polyval(t, coeffs)
                worst = max(worst, float(np.max(np.abs(predicted - coset_sums(code, t * a)))))
    ok = worst <= 1e-10
    report(8, ok, f"max held-out error {worst:.1e} across {len(catalog())} catalog codes")
    assert ok
