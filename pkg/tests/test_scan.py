import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundmagic.codes import get_code, make_code
from boundmagic.engine import dense_oracle_vector
from boundmagic.scan import (
    RegionSample,
    curve_to_csv,
    fidelity_curve,
    find_threshold,
    octant_axes,
    planar_threshold,
    region_scan,
    region_to_csv,
    threshold_planes,
)
from boundmagic.states import AXIS_H, AXIS_T, surface_fidelity

FS_T = surface_fidelity(AXIS_T)
FS_H = surface_fidelity(AXIS_H)
FIVE_T_THRESHOLD = 0.8273268353540064


@pytest.fixture(scope="module")
def scan():
    codes = [get_code("five_qubit"), get_code("steane")]
    return region_scan(codes, resolution=9, axes=None)


def test_curve_examples():
    five = get_code("five_qubit")
    pts = fidelity_curve(five, AXIS_T, [1.0, FS_T])
    assert [p.f_in for p in pts] == [FS_T, 1.0]
    assert pts[0].f_out < FS_T
    assert pts[1].f_out == pytest.approx(1.0, abs=1e-13)
    steane = get_code("steane")
    (p,) = fidelity_curve(steane, AXIS_H, [FS_H + 1e-3])
    assert p.f_out > p.f_in


def test_curve_rejects_out_of_range():
    with pytest.raises(ValueError):
        fidelity_curve(get_code("steane"), AXIS_H, [0.4])


def test_curve_flags_zero_success():
    code = make_code(["ZI"], "IX", "IZ")
    (p,) = fidelity_curve(code, (0, 0, -1), [1.0])
    assert p.verdict == "zero-success" and math.isnan(p.f_out)


def test_curve_continuity():
    five = get_code("five_qubit")
    gaps = []
    for num in (51, 501, 5001):
        grid = np.linspace(0.5, 1.0, num)
        f_out = np.array([p.f_out for p in fidelity_curve(five, AXIS_T, grid)])
        gaps.append(np.max(np.abs(np.diff(f_out))))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_five_qubit_threshold():
    five = get_code("five_qubit")
    t = find_threshold(five, AXIS_T)
    assert t == pytest.approx(FIVE_T_THRESHOLD, abs=1e-10)
    assert t - FS_T >= 1e-3
    dense = find_threshold(five, AXIS_T, engine=dense_oracle_vector)
    assert abs(t - dense) < 1e-8


def test_steane_threshold_tight():
    t = find_threshold(get_code("steane"), AXIS_H)
    assert abs(t - FS_H) <= 1e-6


def test_trivial_code_has_no_threshold():
    assert find_threshold(make_code(["XXI", "ZZI"]), AXIS_T) is None


def test_threshold_planes():
    planes = threshold_planes(get_code("five_qubit"))
    assert len(planes) == 1
    assert planar_threshold(planes, AXIS_T) == pytest.approx(FIVE_T_THRESHOLD, abs=1e-10)
    # Steane has no threshold along T; its three H planes still reach the T axis
    assert find_threshold(get_code("steane"), AXIS_T) is None
    steane = threshold_planes(get_code("steane"))
    assert len(steane) == 3
    assert planar_threshold(steane, AXIS_H) == pytest.approx(FS_H, abs=1e-6)
    assert planar_threshold(steane, AXIS_T) == pytest.approx(0.5 * (1 + np.sqrt(3) / 2), abs=1e-6)


def test_octant_axes():
    axes = octant_axes(5)
    assert len(axes) == 25
    for a in axes:
        assert np.all(a > 0) and np.linalg.norm(a) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        octant_axes(0)


def test_scan_t_axis_uses_five_qubit():
    codes = [get_code("five_qubit"), get_code("steane")]
    (s,) = region_scan(codes, axes=[AXIS_T])
    assert s.f_threshold == pytest.approx(s.thresholds["five_qubit"])
    assert s.thresholds["five_qubit"] < s.thresholds["steane"]


def test_scan_drops_edge_axes():
    codes = [get_code("steane")]
    assert region_scan(codes, axes=[(1, 0, 1), (0, 0, 1)]) == []


def test_scan_invariants(scan):
    assert len(scan) == 81
    for s in scan:
        assert s.f_surface <= s.f_threshold + 1e-12 <= 1 + 1e-12
        for eps in s.epsilons.values():
            assert eps is not None and eps > 0
        # combined window never exceeds the combined threshold gap
        assert s.epsilon <= s.f_threshold - s.f_surface + 1e-9
        assert not s.errors


def test_adding_codes_never_raises_threshold():
    axes = octant_axes(7)
    alone = region_scan([get_code("steane")], axes=axes)
    both = region_scan([get_code("steane"), get_code("five_qubit")], axes=axes)
    for a, b in zip(alone, both):
        assert a.axis == b.axis
        assert b.f_threshold <= a.f_threshold


def test_region_csv(scan):
    text = region_to_csv(scan, ["five_qubit", "steane"])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == [
        "ax", "ay", "az", "f_surface",
        "f_threshold_five_qubit", "f_threshold_steane", "f_combined",
        "epsilon_five_qubit", "epsilon_steane",
    ]
    assert len(rows) == 82
    assert region_to_csv(scan, ["five_qubit", "steane"]) == text


def test_curve_csv():
    pts = fidelity_curve(get_code("five_qubit"), AXIS_T, [0.5, 1.0])
    lines = curve_to_csv(pts).splitlines()
    assert lines[0] == "f_in,f_out,success_prob,verdict"
    assert lines[2].startswith("1,1,")


def test_region_sample_empty():
    s = RegionSample((1, 0, 0), 1.0, {"a": None}, {"a": None})
    assert s.f_threshold is None and s.epsilon is None


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_planar_threshold_above_surface(x, y, z):
    planes = threshold_planes(get_code("five_qubit")) + threshold_planes(get_code("steane"))
    t = planar_threshold(planes, (x, y, z))
    assert t is not None
    assert t >= surface_fidelity((x, y, z)) - 1e-9
