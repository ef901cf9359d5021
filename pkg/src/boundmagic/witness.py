"""Constructive certificates that a stabilizer reduction has bound states.

For a non-trivial code, :func:`build_witness` reads a logical ``Z_L`` off the
canonical form together with two product eigenstates ``g`` and ``g'`` that
survive the projection and land on orthogonal logical states.  Their presence
forces the decoded output of surface states strictly inside the octahedron.
:func:`epsilon_bisect` then measures how far above the surface this persists.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .codes.canonical import CanonicalForm, canonical_form
from .codes.stabilizer import StabilizerCode, group_elements
from .engine import DistillationOutcome, distill_vector
from .errors import DomainError, WitnessError, ZeroSuccessError
from .pauli import PauliString, commutes, mul
from .states import AXIS_T, as_axis, octahedron_test, surface_fidelity

BISECT_MAX_ITER = 60
SCAN_POINTS = 64
VERDICT_TOL = 1e-9


def _solve_gf2(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Unique solution of ``matrix @ x = rhs`` over GF(2); raises otherwise."""
    rows, cols = matrix.shape
    aug = np.concatenate([matrix % 2, (rhs % 2)[:, None]], axis=1).astype(np.uint8)
    pivots = []
    r = 0
    for c in range(cols):
        hit = np.flatnonzero(aug[r:, c])
        if len(hit) == 0:
            continue
        p = r + hit[0]
        aug[[r, p]] = aug[[p, r]]
        for other in range(rows):
            if other != r and aug[other, c]:
                aug[other] ^= aug[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if np.any(aug[r:, -1]):
        raise WitnessError("commutation system for zeta is inconsistent")
    if len(pivots) != cols:
        raise WitnessError("commutation system for zeta is underdetermined")
    x = np.zeros(cols, dtype=np.uint8)
    for i, c in enumerate(pivots):
        x[c] = aug[i, -1]
    return x


def stabilized_by(p: PauliString, g: Sequence[str]) -> int:
    """+1 if ``p`` is in the group generated by the letters ``g`` (one per
    qubit, all with sign +), -1 if ``-p`` is, 0 otherwise."""
    for j in range(p.n):
        letter = p.letter(j)
        if letter != "I" and letter != g[j]:
            return 0
    if p.k == 0:
        return 1
    if p.k == 2:
        return -1
    return 0


def projected_overlap(g: Sequence[str], code: StabilizerCode) -> float:
    """``<Psi_g| P |Psi_g>`` for the +1 product eigenstate of the letters ``g``."""
    total = 0
    for s in group_elements(code):
        hit = stabilized_by(s, g)
        if hit == -1:
            return 0.0
        total += hit
    return total / 2 ** (code.n - 1)


def verify_nonvanishing(g: Sequence[str], code: StabilizerCode) -> bool:
    """True unless some ``-s`` with ``s`` in the code stabilizes ``|Psi_g>``."""
    if len(g) != code.n or any(c not in "XYZ" for c in g):
        raise DomainError(f"letter vector {g!r} must have {code.n} letters from X, Y, Z")
    return all(stabilized_by(s, g) != -1 for s in group_elements(code))


def surface_weight(g: Sequence[str], axis) -> float:
    a = as_axis(axis)
    probs = dict(zip("XYZ", a / np.abs(a).sum()))
    return float(np.prod([probs[c] for c in g]))


@dataclass(frozen=True)
class WitnessReport:
    """All letter/phase data use the code's original qubit labels."""

    zL: PauliString
    s_pivot: PauliString
    minus_s_zL: PauliString
    gamma_n: int
    zeta: tuple[int, ...]
    g: str
    g_prime: str
    cond_orthogonal: bool
    cond_nonvanishing: bool
    q_g_prime_weight: float
    q_gprime_prime_weight: float
    axis: tuple = (0.0, 0.0, 0.0)
    canonical: CanonicalForm | None = field(default=None, repr=False, compare=False)

    @property
    def holds(self) -> bool:
        return self.cond_orthogonal and self.cond_nonvanishing

    def to_dict(self) -> dict:
        cf = self.canonical
        out = {
            "zL": str(self.zL),
            "s_pivot": str(self.s_pivot),
            "minus_s_zL": str(self.minus_s_zL),
            "gamma_n": self.gamma_n,
            "zeta": list(self.zeta),
            "g": self.g,
            "g_prime": self.g_prime,
            "cond_orthogonal": self.cond_orthogonal,
            "cond_nonvanishing": self.cond_nonvanishing,
            "q_g_prime_weight": self.q_g_prime_weight,
            "q_gprime_prime_weight": self.q_gprime_prime_weight,
            "axis": list(self.axis),
        }
        if cf is not None:
            out["canonical"] = {
                "permutation": list(cf.permutation),
                "rows": [str(r) for r in cf.rows],
                "A": list(cf.A),
                "B": list(cf.B),
                "C": list(cf.C),
                "gamma": list(cf.gamma),
                "alpha": list(cf.alpha),
                "beta": [list(b) for b in cf.beta],
                "T_col": list(cf.T_col),
            }
        return out

    def to_text(self) -> str:
        lines = []
        cf = self.canonical
        if cf is not None:
            lines.append(f"permutation      {' '.join(map(str, cf.permutation))}")
            for row in cf.rows:
                lines.append(f"canonical row    {row}")
            lines.append(f"A                {''.join(cf.A)}")
            lines.append(f"B                {''.join(cf.B)}")
            lines.append(f"C                {''.join(cf.C)}")
            lines.append(f"alpha            {''.join(map(str, cf.alpha))}")
            lines.append(f"gamma            {''.join(map(str, cf.gamma))}")
        lines += [
            f"gamma_n          {self.gamma_n}",
            f"zeta             {''.join(map(str, self.zeta)) or '-'}",
            f"Z_L              {self.zL}",
            f"s_pivot          {self.s_pivot}",
            f"-s_pivot Z_L     {self.minus_s_zL}",
            f"g                {self.g}",
            f"g'               {self.g_prime}",
            f"orthogonal       {self.cond_orthogonal}",
            f"nonvanishing     {self.cond_nonvanishing}",
            f"q'_g             {self.q_g_prime_weight:.12g}",
            f"q'_g'            {self.q_gprime_prime_weight:.12g}",
        ]
        return "\n".join(lines)


def build_witness(cf: CanonicalForm | StabilizerCode, axis=AXIS_T) -> WitnessReport:
    """Construct ``Z_L``, ``g`` and ``g'`` and verify both overlap conditions.

    Accepts a canonical form or a code (canonicalized with defaults).  The
    projected weights are evaluated for surface states along ``axis``.
    """
    if isinstance(cf, StabilizerCode):
        cf = canonical_form(cf)
    n = cf.n
    p = n - 2  # canonical index of the pivot generator s_{n-1}
    last = n - 1
    gamma_n = (cf.alpha[p] + cf.gamma[p]) % 2
    b_n, c_n = cf.last_column_letters(gamma_n)

    def z_logical(zeta) -> PauliString:
        letters = ["I"] * n
        for k in range(p):
            if zeta[k]:
                letters[k] = cf.B[k]
        letters[p] = cf.B[p]
        letters[last] = b_n
        return PauliString.from_letters(letters)

    # zeta solves symplectic(Z_L(zeta), s_j) = 0 for every canonical row j
    base = z_logical([0] * p)
    matrix = np.zeros((n - 1, p), dtype=np.uint8)
    rhs = np.zeros(n - 1, dtype=np.uint8)
    for j, row in enumerate(cf.rows):
        rhs[j] = 0 if commutes(base, row) else 1
        for k in range(p):
            unit = PauliString.single(n, k, cf.B[k])
            matrix[j, k] = 0 if commutes(unit, row) else 1
    zeta = tuple(int(v) for v in _solve_gf2(matrix, rhs)) if p else ()
    if not p and rhs.any():
        raise WitnessError("Z_L fails to commute with the pivot generator")
    zl = z_logical(zeta)

    s_pivot = cf.rows[p]
    minus = -mul(s_pivot, zl)
    expected = [cf.B[k] if (cf.beta[k][p] + zeta[k]) % 2 else "I" for k in range(p)]
    expected += [cf.C[p], c_n]
    if minus.letters != "".join(expected) or minus.k != 0:
        raise WitnessError(f"-s Z_L = {minus}, expected +{''.join(expected)}")

    g = [cf.B[k] for k in range(p + 1)] + [b_n]
    g_prime = [cf.B[k] for k in range(p)] + [cf.C[p], c_n]

    # back to the original labels
    inverse = [0] * n
    for c, q in enumerate(cf.permutation):
        inverse[q] = c
    zl_o = zl.permuted(inverse)
    minus_o = minus.permuted(inverse)
    s_o = s_pivot.permuted(inverse)
    g_o = "".join(g[inverse[q]] for q in range(n))
    gp_o = "".join(g_prime[inverse[q]] for q in range(n))

    code = cf.code
    orthogonal = stabilized_by(zl_o, g_o) == 1 and stabilized_by(minus_o, gp_o) == 1
    qg = surface_weight(g_o, axis) * projected_overlap(g_o, code)
    qgp = surface_weight(gp_o, axis) * projected_overlap(gp_o, code)
    nonvanishing = (
        verify_nonvanishing(g_o, code) and verify_nonvanishing(gp_o, code) and qg > 0 and qgp > 0
    )
    return WitnessReport(
        zL=zl_o,
        s_pivot=s_o,
        minus_s_zL=minus_o,
        gamma_n=gamma_n,
        zeta=zeta,
        g=g_o,
        g_prime=gp_o,
        cond_orthogonal=orthogonal,
        cond_nonvanishing=nonvanishing,
        q_g_prime_weight=qg,
        q_gprime_prime_weight=qgp,
        axis=tuple(as_axis(axis)),
        canonical=cf,
    )


# epsilon region ----------------------------------------------------------------

Engine = Callable[[StabilizerCode, np.ndarray, np.ndarray], DistillationOutcome]


@dataclass(frozen=True)
class EpsilonResult:
    axis: tuple
    f_surface: float
    f_crossing: float
    epsilon: float
    certified: bool
    crossed: bool = True
    surface_margin: float = 0.0


def _interior(code, axis, f, engine) -> bool:
    try:
        out = engine(code, (2 * f - 1) * axis, axis)
    except ZeroSuccessError:
        return False
    return octahedron_test(out.out_bloch, VERDICT_TOL).interior


def epsilon_bisect(code: StabilizerCode, axis, tol: float = 1e-10, engine: Engine = distill_vector) -> EpsilonResult:
    """Width of the fidelity window above the surface whose outputs stay interior.

    A coarse scan from ``f^S`` upward finds the first fidelity with a
    non-interior output, then bisection narrows the crossing to ``tol``.
    """
    a = as_axis(axis)
    if np.any(a <= 0):
        raise DomainError(f"axis {a} must have strictly positive components")
    fs = surface_fidelity(a)
    start = engine(code, (2 * fs - 1) * a, a)
    verdict = octahedron_test(start.out_bloch, VERDICT_TOL)
    if not verdict.interior:
        raise WitnessError(
            f"surface input maps to {verdict.location} (margin {verdict.margin:.3g}); "
            "expected interior for a non-trivial code"
        )
    certified = verdict.margin < -10 * tol
    grid = np.linspace(fs, 1.0, SCAN_POINTS + 1)
    lo = fs
    hi = None
    for f in grid[1:]:
        if _interior(code, a, f, engine):
            lo = f
        else:
            hi = f
            break
    if hi is None:
        return EpsilonResult(tuple(a), fs, 1.0, 1.0 - fs, certified, crossed=False,
                             surface_margin=verdict.margin)
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _interior(code, a, mid, engine):
            lo = mid
        else:
            hi = mid
    return EpsilonResult(tuple(a), fs, hi, hi - fs, certified and hi - fs > 0,
                         surface_margin=verdict.margin)
