"""Single-qubit Bloch states and stabilizer-octahedron geometry."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import nnls

from .errors import DomainError

AXIS_T = np.ones(3) / np.sqrt(3.0)
AXIS_H = np.array([1.0, 0.0, 1.0]) / np.sqrt(2.0)
NAMED_AXES = {"T": AXIS_T, "H": AXIS_H}

OCTAHEDRON_VERTICES = np.vstack([np.eye(3), -np.eye(3)])

INTERIOR, SURFACE, EXTERIOR = "interior", "surface", "exterior"
SURFACE_TOL = 1e-9


def as_axis(axis) -> np.ndarray:
    """Normalize an axis given as ``"T"``, ``"H"``, ``"x,y,z"`` or a 3-vector."""
    if isinstance(axis, str):
        key = axis.strip()
        if key.upper() in NAMED_AXES:
            return NAMED_AXES[key.upper()].copy()
        try:
            axis = [float(v) for v in key.split(",")]
        except ValueError:
            raise DomainError(f"bad axis spec {key!r}") from None
    a = np.asarray(axis, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise DomainError(f"axis must be a 3-vector, got {axis!r}")
    norm = np.linalg.norm(a)
    if norm == 0:
        raise DomainError("zero axis")
    return a / norm


@dataclass(frozen=True)
class BlochState:
    """``rho(f, a) = (I + (2f - 1) a.sigma) / 2`` with unit axis ``a`` and ``f >= 1/2``."""

    f: float
    axis: tuple

    def __init__(self, f: float, axis):
        a = as_axis(axis)
        if not 0.5 <= f <= 1.0:
            raise DomainError(f"fidelity must lie in [1/2, 1], got {f}")
        object.__setattr__(self, "f", float(f))
        object.__setattr__(self, "axis", tuple(a))

    @property
    def axis_vector(self) -> np.ndarray:
        return np.array(self.axis)

    @property
    def bloch(self) -> np.ndarray:
        return (2 * self.f - 1) * self.axis_vector

    @classmethod
    def at_surface(cls, axis) -> BlochState:
        a = as_axis(axis)
        return cls(surface_fidelity(a), a)


@dataclass(frozen=True)
class OctahedronVerdict:
    l1: float
    location: str
    margin: float

    @property
    def interior(self) -> bool:
        return self.location == INTERIOR


def octahedron_test(r, tol: float = SURFACE_TOL) -> OctahedronVerdict:
    """Locate a Bloch vector relative to the stabilizer octahedron ``|x|+|y|+|z| <= 1``."""
    r = np.asarray(r, dtype=float)
    if np.linalg.norm(r) > 1 + max(tol, 1e-10):
        raise DomainError(f"Bloch vector {r} outside the unit ball")
    l1 = float(np.abs(r).sum())
    margin = l1 - 1.0
    if abs(margin) <= tol:
        location = SURFACE
    elif margin < 0:
        location = INTERIOR
    else:
        location = EXTERIOR
    return OctahedronVerdict(l1, location, margin)


def surface_fidelity(axis) -> float:
    """Fidelity at which ``rho(f, axis)`` touches the octahedron boundary."""
    a = as_axis(axis)
    return 0.5 * (1.0 + 1.0 / np.abs(a).sum())


def fidelity(r, axis) -> float:
    return 0.5 * (1.0 + float(np.dot(r, as_axis(axis))))


def twirl_T(r) -> np.ndarray:
    x, y, z = np.asarray(r, dtype=float)
    return np.full(3, (x + y + z) / 3.0)


def twirl_H(r) -> np.ndarray:
    x, _, z = np.asarray(r, dtype=float)
    c = (x + z) / 2.0
    return np.array([c, 0.0, c])


def project_onto_axis(r, axis) -> np.ndarray:
    a = as_axis(axis)
    return float(np.dot(r, a)) * a


def retwirl(r, axis) -> np.ndarray:
    """Twirl onto ``axis``; exact maps for the T and H axes, projection otherwise."""
    a = as_axis(axis)
    if np.allclose(a, AXIS_T, atol=1e-14):
        return twirl_T(r)
    if np.allclose(a, AXIS_H, atol=1e-14):
        return twirl_H(r)
    return project_onto_axis(r, a)


@lru_cache(maxsize=None)
def clifford_rotations() -> np.ndarray:
    """The 24 signed permutation matrices with determinant +1, shape (24, 3, 3)."""
    mats = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3))
            for row, (col, s) in enumerate(zip(perm, signs)):
                m[row, col] = s
            if np.linalg.det(m) > 0:
                mats.append(m)
    out = np.array(mats)
    out.setflags(write=False)
    return out


def clifford_orbit(r) -> np.ndarray:
    """All 24 images of ``r`` under single-qubit Clifford rotations (with repeats)."""
    return clifford_rotations() @ np.asarray(r, dtype=float)


def unique_vectors(vs, decimals: int = 12) -> np.ndarray:
    return np.unique(np.round(np.asarray(vs), decimals) + 0.0, axis=0)


def in_convex_hull(points, x, tol: float = 1e-9) -> bool:
    """Decide whether ``x`` is a convex combination of the rows of ``points``."""
    points = np.asarray(points, dtype=float)
    # append a row of ones so that nonnegative weights also sum to one
    A = np.r_[points.T, np.ones((1, len(points)))]
    b = np.r_[np.asarray(x, dtype=float), 1.0]
    _, residual = nnls(A, b)
    return residual <= tol


def not_an_improvement(r_out, state: BlochState, tol: float = 1e-9) -> bool:
    """True if ``r_out`` mixes Clifford images of ``state`` with stabilizer states."""
    points = np.vstack([clifford_orbit(state.bloch), OCTAHEDRON_VERTICES])
    return in_convex_hull(points, r_out, tol)
