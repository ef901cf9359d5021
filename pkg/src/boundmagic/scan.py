"""Fidelity curves, distillation thresholds and positive-octant region scans."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .codes.stabilizer import StabilizerCode, is_trivial
from .engine import distill_vector
from .errors import BoundMagicError, ZeroSuccessError
from .states import as_axis, surface_fidelity
from .witness import Engine, epsilon_bisect

IMPROVEMENT_TOL = 1e-13
THRESHOLD_GRID = 64
ZERO_SUCCESS = "zero-success"


@dataclass(frozen=True)
class CurvePoint:
    f_in: float
    f_out: float
    success_prob: float
    verdict: str


def fidelity_curve(code: StabilizerCode, axis, grid: Sequence[float], engine: Engine = distill_vector) -> list[CurvePoint]:
    """One-round output fidelity along ``axis`` for each input fidelity in ``grid``."""
    a = as_axis(axis)
    points = []
    for f in sorted(float(f) for f in grid):
        if not 0.5 <= f <= 1.0:
            raise ValueError(f"grid value {f} outside [1/2, 1]")
        try:
            out = engine(code, (2 * f - 1) * a, a)
        except ZeroSuccessError:
            points.append(CurvePoint(f, math.nan, 0.0, ZERO_SUCCESS))
            continue
        points.append(CurvePoint(f, out.out_fidelity, out.success_prob, out.verdict.location))
    return points


def _gain(code, a, f, engine) -> float:
    try:
        return engine(code, (2 * f - 1) * a, a).out_fidelity - f
    except ZeroSuccessError:
        return -math.inf


def find_threshold(code: StabilizerCode, axis, tol: float = 1e-12, engine: Engine = distill_vector) -> float | None:
    """Smallest input fidelity above which one round improves fidelity along ``axis``.

    Searches ``[f^S, 1]``: the sign of ``f_out - f_in`` is sampled on a grid
    (linear plus points accumulating at 1) and the topmost crossing is
    bisected to ``tol``.  Returns ``f^S`` when every sampled point above the
    surface improves, and ``None`` when no point improves at all (e.g. for
    trivial codes).
    """
    a = as_axis(axis)
    fs = surface_fidelity(a)
    if is_trivial(code):
        return None
    span = 1.0 - fs
    grid = np.concatenate([
        fs + span * np.arange(THRESHOLD_GRID) / THRESHOLD_GRID,
        1.0 - span * 2.0 ** -np.arange(7, 31),
    ])
    grid = np.unique(grid[grid < 1.0])
    improving = np.array([_gain(code, a, f, engine) > IMPROVEMENT_TOL for f in grid])
    if not improving.any():
        return None
    flat = np.flatnonzero(~improving)
    if len(flat) == 0:
        return fs
    i = flat[-1]
    if i == len(grid) - 1:
        return None
    lo, hi = grid[i], grid[i + 1]
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _gain(code, a, mid, engine) > IMPROVEMENT_TOL:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# region scan -----------------------------------------------------------------

# positive-octant images of the T and H twirl axes under Clifford rotations
TWIRL_FAMILIES = {
    "T": [np.ones(3) / np.sqrt(3.0)],
    "H": [np.array(v) / np.sqrt(2.0) for v in ((1.0, 0.0, 1.0), (1.0, 1.0, 0.0), (0.0, 1.0, 1.0))],
}


@dataclass(frozen=True)
class ThresholdPlane:
    """States with ``r . normal >= offset`` are distilled after twirling onto ``normal``."""

    normal: tuple
    offset: float


def threshold_planes(code: StabilizerCode, tol: float = 1e-12, engine: Engine = distill_vector) -> list[ThresholdPlane]:
    """Threshold planes of ``code`` for every twirl axis on which it distills.

    A threshold found along the T or H axis carries over to every Clifford
    image of that axis (apply the Clifford before the protocol).
    """
    planes = []
    for family, axes in TWIRL_FAMILIES.items():
        f_t = find_threshold(code, axes[0], tol=tol, engine=engine)
        if f_t is None:
            continue
        planes.extend(ThresholdPlane(tuple(a), 2 * f_t - 1) for a in axes)
    return planes


def planar_threshold(planes: Sequence[ThresholdPlane], axis) -> float | None:
    """Lowest fidelity along ``axis`` that clears one of the ``planes``."""
    a = as_axis(axis)
    best = None
    for plane in planes:
        proj = float(np.dot(a, plane.normal))
        if proj <= 0:
            continue
        f = 0.5 * (1.0 + plane.offset / proj)
        if f <= 1.0 and (best is None or f < best):
            best = f
    return best

@dataclass(frozen=True)
class RegionSample:
    axis: tuple
    f_surface: float
    thresholds: dict = field(default_factory=dict)
    epsilons: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    @property
    def f_threshold(self) -> float | None:
        """Combined threshold: the best (lowest) over the scanned codes."""
        values = [t for t in self.thresholds.values() if t is not None]
        return min(values) if values else None

    @property
    def epsilon(self) -> float | None:
        values = [e for e in self.epsilons.values() if e is not None]
        return min(values) if values else None


def octant_axes(resolution: int = 33) -> list[np.ndarray]:
    """Uniform open (theta, phi) grid over the strictly positive octant."""
    if resolution < 1:
        raise ValueError("resolution must be positive")
    angles = (np.arange(resolution) + 0.5) / resolution * (np.pi / 2)
    axes = []
    for theta in angles:
        for phi in angles:
            axes.append(np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]))
    return axes


def _label(code: StabilizerCode, index: int) -> str:
    return code.name or f"code{index}"


def region_scan(
    codes: Sequence[StabilizerCode],
    resolution: int = 33,
    axes: Sequence | None = None,
    tol: float = 1e-10,
    engine: Engine = distill_vector,
) -> list[RegionSample]:
    """Per-axis surface fidelity, per-code thresholds and epsilon windows.

    Thresholds come from each code's twirl planes (see :func:`threshold_planes`).
    Axes with a zero or negative component are dropped.  Failures of a single
    (axis, code) evaluation are stored in ``RegionSample.errors``.
    """
    candidates = octant_axes(resolution) if axes is None else [as_axis(a) for a in axes]
    planes = {}
    for i, code in enumerate(codes):
        try:
            planes[_label(code, i)] = threshold_planes(code, engine=engine)
        except BoundMagicError:
            planes[_label(code, i)] = []
    samples = []
    for a in candidates:
        if np.any(a <= 0):
            continue
        thresholds, epsilons, errors = {}, {}, {}
        for i, code in enumerate(codes):
            label = _label(code, i)
            try:
                thresholds[label] = planar_threshold(planes[label], a)
                if is_trivial(code):
                    epsilons[label] = None
                else:
                    epsilons[label] = epsilon_bisect(code, a, tol=tol, engine=engine).epsilon
            except BoundMagicError as exc:
                thresholds.setdefault(label, None)
                epsilons.setdefault(label, None)
                errors[label] = str(exc)
        samples.append(RegionSample(tuple(a), surface_fidelity(a), thresholds, epsilons, errors))
    samples.sort(key=lambda s: s.axis)
    return samples


def _fmt(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    return format(float(value), ".12g")


def curve_to_csv(points: Sequence[CurvePoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["f_in", "f_out", "success_prob", "verdict"])
    for p in points:
        writer.writerow([_fmt(p.f_in), _fmt(p.f_out), _fmt(p.success_prob), p.verdict])
    return buf.getvalue()


def region_to_csv(samples: Sequence[RegionSample], labels: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["ax", "ay", "az", "f_surface"]
        + [f"f_threshold_{c}" for c in labels]
        + ["f_combined"]
        + [f"epsilon_{c}" for c in labels]
    )
    for s in samples:
        writer.writerow(
            [_fmt(v) for v in s.axis]
            + [_fmt(s.f_surface)]
            + [_fmt(s.thresholds.get(c)) for c in labels]
            + [_fmt(s.f_threshold)]
            + [_fmt(s.epsilons.get(c)) for c in labels]
        )
    return buf.getvalue()
