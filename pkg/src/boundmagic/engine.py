"""Exact postselected output of a stabilizer reduction on ``rho(f, a)^{(x) n}``.

Measuring the generators and keeping the all-+1 outcome applies the
projector ``P = sum_s s / 2**(n-1)``.  For i.i.d. inputs with Bloch vector
``r`` every Pauli expectation is a monomial ``+- r_x**a r_y**b r_z**c``, so
the four sums

    N   = sum_s <s>,        N b_L = sum_s <L s>,   L in (X_L, Y_L, Z_L)

are fixed integer polynomials of ``r``.  :func:`coset_polynomials` builds the
coefficients once per code by enumerating the group; every later evaluation
costs one small dot product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian

import numpy as np

from . import _kernels
from .codes.stabilizer import MAX_GROUP_QUBITS, StabilizerCode, decode_map
from .errors import DomainError, ResourceError, ZeroSuccessError
from .pauli import PAULI_MATRICES, PauliString
from .states import BlochState, OctahedronVerdict, as_axis, octahedron_test, retwirl

DENSE_MAX_QUBITS = 12
ENSEMBLE_MAX_QUBITS = 12
ZERO_SUCCESS_TOL = 1e-14


@dataclass(frozen=True)
class DistillationOutcome:
    success_prob: float
    out_bloch: tuple
    out_fidelity: float
    verdict: OctahedronVerdict
    target_axis: tuple = field(repr=False, default=(0.0, 0.0, 1.0))

    def to_dict(self) -> dict:
        return {
            "success_prob": self.success_prob,
            "out_bloch": list(self.out_bloch),
            "out_fidelity": self.out_fidelity,
            "verdict": {
                "l1": self.verdict.l1,
                "location": self.verdict.location,
                "margin": self.verdict.margin,
            },
            "target_axis": list(self.target_axis),
        }


@dataclass(frozen=True)
class CosetPolynomials:
    """Sparse integer coefficients of ``(N, N b_X, N b_Y, N b_Z)`` in ``r``."""

    n: int
    exponents: np.ndarray  # (K, 3) powers of (r_x, r_y, r_z)
    coefficients: np.ndarray  # (4, K) signed integers

    def evaluate(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        monomials = np.prod(r[None, :] ** self.exponents, axis=1)
        return self.coefficients @ monomials

    def in_t(self, axis) -> np.ndarray:
        """Coefficients in ``t = 2f - 1`` for ``r = t * axis``; shape (4, n+1)."""
        a = as_axis(axis)
        degree = self.exponents.sum(axis=1)
        weight = np.prod(a[None, :] ** self.exponents, axis=1)
        out = np.zeros((4, self.n + 1))
        for d in range(self.n + 1):
            sel = degree == d
            out[:, d] = self.coefficients[:, sel] @ weight[sel]
        return out


def _logical_masks(code: StabilizerCode):
    ops = (PauliString.identity(code.n),) + decode_map(code).as_tuple()
    return [p.x for p in ops], [p.z for p in ops], [p.k for p in ops]


@lru_cache(maxsize=64)
def coset_polynomials(code: StabilizerCode) -> CosetPolynomials:
    if code.n > MAX_GROUP_QUBITS:
        raise ResourceError(f"n={code.n} exceeds the enumeration cap {MAX_GROUP_QUBITS}")
    gens = code.generators
    lx, lz, lk = _logical_masks(code)
    counts = _kernels.coset_counts(
        [g.x for g in gens], [g.z for g in gens], [g.k for g in gens], lx, lz, lk, code.n
    )
    flat = counts.reshape(4, -1)
    keep = np.flatnonzero(np.any(flat != 0, axis=0))
    exps = np.array(np.unravel_index(keep, counts.shape[1:])).T.astype(np.int64)
    coeffs = flat[:, keep]
    exps.setflags(write=False)
    coeffs.setflags(write=False)
    return CosetPolynomials(code.n, exps, coeffs)


def coset_sums(code: StabilizerCode, r) -> np.ndarray:
    """``(N, N b_X, N b_Y, N b_Z)`` for i.i.d. Bloch vector ``r``."""
    return coset_polynomials(code).evaluate(r)


def _outcome(code, sums, target) -> DistillationOutcome:
    norm = sums[0]
    if norm <= ZERO_SUCCESS_TOL:
        raise ZeroSuccessError(f"postselection on {code.name or 'code'} never succeeds (N={norm:.3g})")
    bloch = sums[1:] / norm
    success = float(np.clip(norm / 2.0 ** (code.n - 1), 0.0, 1.0))
    return DistillationOutcome(
        success_prob=success,
        out_bloch=tuple(float(b) for b in bloch),
        out_fidelity=0.5 * (1.0 + float(np.dot(bloch, target))),
        verdict=octahedron_test(bloch),
        target_axis=tuple(target),
    )


def distill_vector(code: StabilizerCode, r, target_axis) -> DistillationOutcome:
    """Like :func:`distill` for a raw input Bloch vector ``r``."""
    r = np.asarray(r, dtype=float)
    if np.linalg.norm(r) > 1 + 1e-12:
        raise DomainError(f"input Bloch vector {r} outside the unit ball")
    return _outcome(code, coset_sums(code, r), as_axis(target_axis))


def distill(code: StabilizerCode, state: BlochState, target_axis=None) -> DistillationOutcome:
    """Postselected, decoded output of the code acting on ``state``'s n copies.

    The output fidelity is taken along ``target_axis`` (default: the input axis).
    """
    target = state.axis_vector if target_axis is None else as_axis(target_axis)
    return distill_vector(code, state.bloch, target)


# independent dense path ------------------------------------------------------

def _dense_pauli(p: PauliString) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for letter in p.letters:
        out = np.kron(out, PAULI_MATRICES[letter])
    return (1j ** p.k) * out


def dense_oracle_vector(code: StabilizerCode, r, target_axis) -> DistillationOutcome:
    n = code.n
    if n > DENSE_MAX_QUBITS:
        raise ResourceError(f"dense oracle limited to n <= {DENSE_MAX_QUBITS}, got {n}")
    r = np.asarray(r, dtype=float)
    one = 0.5 * (PAULI_MATRICES["I"] + r[0] * PAULI_MATRICES["X"]
                 + r[1] * PAULI_MATRICES["Y"] + r[2] * PAULI_MATRICES["Z"])
    rho = np.array([[1.0 + 0j]])
    for _ in range(n):
        rho = np.kron(rho, one)
    dim = 2 ** n
    proj = np.eye(dim, dtype=complex)
    for g in code.generators:
        proj = proj @ (0.5 * (np.eye(dim) + _dense_pauli(g)))
    xl = _dense_pauli(code.logical_x)
    zl = _dense_pauli(code.logical_z)
    yl = 1j * xl @ zl
    out = proj @ rho @ proj
    norm = np.trace(out).real
    sums = np.array([norm] + [np.trace(out @ op).real for op in (xl, yl, zl)])
    # tr[P rho P] = tr[P rho]; the engine's N carries an extra 2**(n-1)
    sums *= 2.0 ** (n - 1)
    return _outcome(code, sums, as_axis(target_axis))


def dense_oracle(code: StabilizerCode, state: BlochState, target_axis=None) -> DistillationOutcome:
    """Same contract as :func:`distill`, computed with explicit 2**n matrices."""
    target = state.axis_vector if target_axis is None else as_axis(target_axis)
    return dense_oracle_vector(code, state.bloch, target)


# ensemble decomposition --------------------------------------------------------

@dataclass(frozen=True)
class EnsembleTerm:
    g: str
    weight: float
    projected_weight: float


def ensemble_weights(code: StabilizerCode, axis) -> list[EnsembleTerm]:
    """Surface-state ensemble terms ``q_g`` and unnormalized projected ``q'_g``.

    At ``f = f^S`` each qubit is the mixture of the +1 eigenstates of X, Y, Z
    with weights ``a_P / sum(a)``; ``q'_g = q_g <Psi_g|P|Psi_g>``.
    """
    n = code.n
    if n > ENSEMBLE_MAX_QUBITS:
        raise ResourceError(f"ensemble enumeration limited to n <= {ENSEMBLE_MAX_QUBITS}")
    a = as_axis(axis)
    if np.any(a < 0):
        raise DomainError("ensemble decomposition needs a nonnegative axis")
    probs = dict(zip("XYZ", a / a.sum()))
    words = ["".join(w) for w in cartesian("XYZ", repeat=n)]
    strings = [PauliString.from_letters(w) for w in words]
    gx = np.array([p.x for p in strings], dtype=np.int64)
    gz = np.array([p.z for p in strings], dtype=np.int64)
    gens = code.generators
    ex, ez, ek = _kernels.group_arrays([g.x for g in gens], [g.z for g in gens], [g.k for g in gens])
    overlaps = _kernels.projection_overlaps(ex, ez, ek, gx, gz)
    terms = []
    for w, ov in zip(words, overlaps):
        q = float(np.prod([probs[c] for c in w]))
        terms.append(EnsembleTerm(w, q, q * float(ov)))
    return terms


# iteration ----------------------------------------------------------------------

def iterate(code: StabilizerCode, state: BlochState, rounds: int, retwirl_axis=None) -> list[DistillationOutcome]:
    """Run ``rounds`` rounds, re-twirling each output onto ``retwirl_axis``.

    Returns the per-round outcomes; outcome fidelities are along the twirl axis.
    """
    if rounds < 0:
        raise DomainError("rounds must be nonnegative")
    axis = state.axis_vector if retwirl_axis is None else as_axis(retwirl_axis)
    r = retwirl(state.bloch, axis)
    outcomes = []
    for _ in range(rounds):
        outcome = distill_vector(code, r, axis)
        outcomes.append(outcome)
        r = retwirl(np.array(outcome.out_bloch), axis)
    return outcomes
