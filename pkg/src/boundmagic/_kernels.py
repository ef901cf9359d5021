"""Hot enumeration kernels.

Each kernel has a numba implementation and a vectorized numpy implementation
with identical integer results.  Numba is used when importable unless the
environment variable ``BOUNDMAGIC_DISABLE_NUMBA`` is set to a true value;
``set_backend`` switches at runtime (used by tests and the benchmark).

Pauli strings enter as int64 bit masks (qubit j <-> bit j) with a phase
exponent of i.  Only codes with n <= 24 reach these kernels.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None
_DISABLED = os.environ.get("BOUNDMAGIC_DISABLE_NUMBA", "").lower() in ("1", "true", "yes", "on")
_backend = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


# numpy path ------------------------------------------------------------------

def _np_phase(x1, z1, x2, z2):
    xa, ya, za = x1 & ~z1, x1 & z1, z1 & ~x1
    xb, yb, zb = x2 & ~z2, x2 & z2, z2 & ~x2
    plus = (xa & yb) | (ya & zb) | (za & xb)
    minus = (ya & xb) | (za & yb) | (xa & zb)
    return np.bitwise_count(plus).astype(np.int64) - np.bitwise_count(minus).astype(np.int64)


def group_arrays(gen_x, gen_z, gen_k):
    """All group elements, in Gray-code order, as ``(x, z, k)`` int64 arrays."""
    m = len(gen_x)
    size = 1 << m
    ex = np.zeros(size, dtype=np.int64)
    ez = np.zeros(size, dtype=np.int64)
    ek = np.zeros(size, dtype=np.int64)
    # reflected Gray code: element idx is the product of generators in gray(idx)
    filled = 1
    for t in range(m):
        gx, gz, gk = np.int64(gen_x[t]), np.int64(gen_z[t]), np.int64(gen_k[t])
        src = slice(0, filled)
        dst = slice(2 * filled - 1, filled - 1, -1)
        ex[dst] = ex[src] ^ gx
        ez[dst] = ez[src] ^ gz
        # right-multiply by the generator: element * g
        ek[dst] = (ek[src] + gk + _np_phase(ex[src], ez[src], gx, gz)) & 3
        filled *= 2
    return ex, ez, ek


def _coset_counts_numpy(gen_x, gen_z, gen_k, log_x, log_z, log_k, n):
    ex, ez, ek = group_arrays(gen_x, gen_z, gen_k)
    counts = np.zeros((4, n + 1, n + 1, n + 1), dtype=np.int64)
    for c in range(4):
        lx, lz, lk = np.int64(log_x[c]), np.int64(log_z[c]), np.int64(log_k[c])
        px, pz = ex ^ lx, ez ^ lz
        pk = (ek + lk + _np_phase(lx, lz, ex, ez)) & 3
        sign = 1 - pk  # pk is 0 or 2 for Hermitian products
        nx = np.bitwise_count(px & ~pz)
        ny = np.bitwise_count(px & pz)
        nz = np.bitwise_count(pz & ~px)
        np.add.at(counts[c], (nx, ny, nz), sign)
    return counts


def _overlaps_numpy(ex, ez, ek, gx, gz, chunk=1 << 16):
    out = np.empty(len(gx), dtype=np.float64)
    supp = ex | ez
    step = max(1, chunk // max(1, len(ex)))
    for start in range(0, len(gx), step):
        bx = gx[start:start + step, None]
        bz = gz[start:start + step, None]
        match = (((ex ^ bx) | (ez ^ bz)) & supp) == 0
        hits = match.sum(axis=1)
        bad = (match & (ek == 2)).any(axis=1)
        out[start:start + step] = np.where(bad, 0.0, hits / len(ex))
    return out


# numba path --------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _popcount(v):
        v = v - ((v >> 1) & 0x5555555555555555)
        v = (v & 0x3333333333333333) + ((v >> 2) & 0x3333333333333333)
        v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0F
        return (v * 0x0101010101010101) >> 56 & 0xFF

    @numba.njit(cache=True)
    def _phase(x1, z1, x2, z2):
        xa = x1 & ~z1
        ya = x1 & z1
        za = z1 & ~x1
        xb = x2 & ~z2
        yb = x2 & z2
        zb = z2 & ~x2
        plus = (xa & yb) | (ya & zb) | (za & xb)
        minus = (ya & xb) | (za & yb) | (xa & zb)
        return _popcount(plus) - _popcount(minus)

    @numba.njit(cache=True)
    def _coset_counts_numba(gen_x, gen_z, gen_k, log_x, log_z, log_k, n):
        m = gen_x.shape[0]
        counts = np.zeros((4, n + 1, n + 1, n + 1), dtype=np.int64)
        cx = np.int64(0)
        cz = np.int64(0)
        ck = np.int64(0)
        total = np.int64(1) << m
        for idx in range(total):
            for c in range(4):
                lx = log_x[c]
                lz = log_z[c]
                px = lx ^ cx
                pz = lz ^ cz
                pk = (log_k[c] + ck + _phase(lx, lz, cx, cz)) & 3
                counts[c, _popcount(px & ~pz), _popcount(px & pz), _popcount(pz & ~px)] += 1 - pk
            step = idx + 1
            if step < total:
                t = 0
                while not (step >> t) & 1:
                    t += 1
                ck = (ck + gen_k[t] + _phase(cx, cz, gen_x[t], gen_z[t])) & 3
                cx ^= gen_x[t]
                cz ^= gen_z[t]
        return counts

    @numba.njit(cache=True)
    def _overlaps_numba(ex, ez, ek, gx, gz):
        out = np.empty(gx.shape[0], dtype=np.float64)
        size = ex.shape[0]
        for i in range(gx.shape[0]):
            hits = 0
            bad = False
            for s in range(size):
                supp = ex[s] | ez[s]
                if (((ex[s] ^ gx[i]) | (ez[s] ^ gz[i])) & supp) == 0:
                    if ek[s] == 2:
                        bad = True
                        break
                    hits += 1
            out[i] = 0.0 if bad else hits / size
        return out


def coset_counts(gen_x, gen_z, gen_k, log_x, log_z, log_k, n: int) -> np.ndarray:
    """Signed monomial counts for the four cosets ``L * S``.

    ``counts[c, a, b, d]`` is the signed number of elements ``L_c s`` with
    ``a`` X letters, ``b`` Y letters and ``d`` Z letters, where ``L_0 = I``.
    """
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (gen_x, gen_z, gen_k, log_x, log_z, log_k)]
    if _backend == "numba":
        return _coset_counts_numba(*args, n)
    return _coset_counts_numpy(*args, n)


def projection_overlaps(ex, ez, ek, gx, gz) -> np.ndarray:
    """``<Psi_g| P |Psi_g>`` for each all-plus product eigenstate ``g``.

    ``(ex, ez, ek)`` enumerate the stabilizer group; ``(gx, gz)`` are letter
    masks of fully supported strings ``g``.
    """
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (ex, ez, ek, gx, gz)]
    if _backend == "numba":
        return _overlaps_numba(*args)
    return _overlaps_numpy(*args)
