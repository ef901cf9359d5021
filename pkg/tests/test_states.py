import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundmagic.errors import DomainError
from boundmagic.states import (
    AXIS_H,
    AXIS_T,
    BlochState,
    as_axis,
    clifford_orbit,
    clifford_rotations,
    in_convex_hull,
    not_an_improvement,
    octahedron_test,
    retwirl,
    surface_fidelity,
    twirl_H,
    twirl_T,
    unique_vectors,
)

vectors = st.lists(st.floats(-1, 1, allow_nan=False), min_size=3, max_size=3).map(np.array)
positive_axes = st.lists(st.floats(0.01, 1), min_size=3, max_size=3).map(as_axis)


def test_surface_fidelities():
    assert surface_fidelity(AXIS_T) == pytest.approx(0.5 * (1 + 1 / np.sqrt(3)))
    assert surface_fidelity(AXIS_T) == pytest.approx(0.7886751345948129)
    assert surface_fidelity(AXIS_H) == pytest.approx(0.8535533905932737)
    assert surface_fidelity((0, 0, 1)) == 1.0


def test_as_axis_specs():
    np.testing.assert_allclose(as_axis("t"), AXIS_T)
    np.testing.assert_allclose(as_axis("1,0,1"), AXIS_H)
    with pytest.raises(DomainError):
        as_axis((0, 0, 0))
    with pytest.raises(DomainError):
        as_axis("up")
    with pytest.raises(DomainError):
        as_axis((1, 2))


def test_bloch_state_range():
    assert BlochState(1.0, "T").bloch == pytest.approx(AXIS_T)
    assert np.all(BlochState(0.5, "H").bloch == 0)
    for bad in (0.49, 1.01):
        with pytest.raises(DomainError):
            BlochState(bad, "T")


def test_octahedron_locations():
    assert octahedron_test((0.2, 0.2, 0.2)).location == "interior"
    assert octahedron_test((1, 0, 0)).location == "surface"
    assert octahedron_test(AXIS_T).location == "exterior"
    assert octahedron_test(BlochState.at_surface("T").bloch).location == "surface"
    with pytest.raises(DomainError):
        octahedron_test((1, 1, 0))


def test_twirls_hit_axes():
    r = np.array([0.3, -0.1, 0.5])
    np.testing.assert_allclose(twirl_T(r), [0.7 / 3] * 3)
    np.testing.assert_allclose(twirl_H(r), [0.4, 0, 0.4])


@given(vectors)
def test_twirls_idempotent(r):
    for tw in (twirl_T, twirl_H):
        np.testing.assert_allclose(tw(tw(r)), tw(r), atol=1e-15)


@given(vectors, st.sampled_from([AXIS_T, AXIS_H]))
def test_twirl_preserves_fidelity_and_contracts(r, axis):
    out = retwirl(r, axis)
    assert np.dot(out, axis) == pytest.approx(np.dot(r, axis), abs=1e-12)
    assert np.linalg.norm(out) <= np.linalg.norm(r) + 1e-12


def test_clifford_group():
    mats = clifford_rotations()
    assert mats.shape == (24, 3, 3)
    assert len(unique_vectors(mats.reshape(24, 9))) == 24
    for m in mats:
        np.testing.assert_allclose(m @ m.T, np.eye(3))


def test_orbit_sizes():
    assert len(unique_vectors(clifford_orbit(AXIS_T))) == 8
    assert len(unique_vectors(clifford_orbit((1, 0, 0)))) == 6
    assert len(unique_vectors(clifford_orbit(AXIS_H))) == 12


def test_not_an_improvement_examples():
    s = BlochState(0.9, "T")
    assert not_an_improvement(s.bloch, s)
    assert not_an_improvement((0.1, 0.1, 0.1), s)
    assert not_an_improvement(-s.bloch, s)  # the orbit contains -T images
    assert not not_an_improvement(BlochState(0.95, "T").bloch, s)
    assert not not_an_improvement(0.99 * AXIS_T, BlochState(0.99, "T"))


@settings(max_examples=50)
@given(st.floats(0.5, 1.0), st.floats(0.5, 1.0))
def test_not_an_improvement_along_axis(f1, f2):
    lo, hi = sorted((f1, f2))
    assert not_an_improvement(BlochState(lo, "T").bloch, BlochState(hi, "T"))
    if hi - lo > 1e-6 and hi > surface_fidelity(AXIS_T) + 1e-6:
        assert not not_an_improvement(BlochState(hi, "T").bloch, BlochState(lo, "T"))


@given(positive_axes)
def test_hull_contains_octahedron(axis):
    # anything of l1 norm at most one is a mixture of stabilizer states
    r = 0.999 * axis / np.abs(axis).sum()
    assert in_convex_hull(np.vstack([np.eye(3), -np.eye(3)]), r)
    assert octahedron_test(r).interior


@given(positive_axes)
def test_surface_state_on_boundary(axis):
    v = octahedron_test(BlochState.at_surface(axis).bloch)
    assert v.location == "surface"
