"""Phased Pauli strings in binary symplectic form.

An n-qubit Pauli string is stored as two n-bit integers ``x`` and ``z`` plus a
phase exponent ``k`` so that the operator equals ``i**k`` times the tensor
product of single-qubit letters.  Bit ``j`` of ``x``/``z`` describes qubit
``j`` (qubit 0 is the leftmost letter in text form)::

    (x, z) = (0, 0) -> I
             (1, 0) -> X
             (1, 1) -> Y
             (0, 1) -> Z

Note that the letter for ``(1, 1)`` is ``Y`` itself, not ``XZ``; products are
tracked with the usual cyclic rule ``XY = iZ``, ``YZ = iX``, ``ZX = iY``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DomainError

MAX_QUBITS = 64

LETTERS = "IXYZ"
# letter -> (x bit, z bit)
LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
# (x bit, z bit) -> letter
BITS_LETTER = {bits: letter for letter, bits in LETTER_BITS.items()}
# Bloch component index addressed by a non-identity letter
BLOCH_INDEX = {"X": 0, "Y": 1, "Z": 2}

_PHASE_TEXT = {0: "", 1: "i", 2: "-", 3: "-i"}


def _mul_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exponent of i picked up by the letter-wise product (x1,z1)*(x2,z2)."""
    xa, ya, za = x1 & ~z1, x1 & z1, z1 & ~x1
    xb, yb, zb = x2 & ~z2, x2 & z2, z2 & ~x2
    plus = (xa & yb) | (ya & zb) | (za & xb)
    minus = (ya & xb) | (za & yb) | (xa & zb)
    return plus.bit_count() - minus.bit_count()


@dataclass(frozen=True)
class PauliString:
    """Immutable phased Pauli operator ``i**k * P_0 (x) ... (x) P_{n-1}``."""

    n: int
    x: int
    z: int
    k: int = 0

    def __post_init__(self):
        if not 0 < self.n <= MAX_QUBITS:
            raise DimensionError(f"qubit count must be in 1..{MAX_QUBITS}, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask or self.x < 0 or self.z < 0:
            raise DimensionError("bit vectors wider than n")
        object.__setattr__(self, "k", self.k % 4)

    # construction -----------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_letters(cls, letters: Sequence[str], k: int = 0) -> PauliString:
        x = z = 0
        for j, letter in enumerate(letters):
            try:
                xb, zb = LETTER_BITS[letter]
            except KeyError:
                raise DomainError(f"bad Pauli letter {letter!r}") from None
            x |= xb << j
            z |= zb << j
        return cls(len(letters), x, z, k)

    @classmethod
    def from_str(cls, text: str) -> PauliString:
        """Parse ``"-XIZZY"``, ``"+XX"``, ``"iZ"`` or ``"-iXY"``."""
        s = text.strip()
        k = 0
        if s[:1] in "+-":
            k = 2 if s[0] == "-" else 0
            s = s[1:]
        if s[:1] == "i":
            k += 1
            s = s[1:]
        if not s:
            raise DomainError(f"empty Pauli string {text!r}")
        return cls.from_letters(s.upper(), k)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        letters = ["I"] * n
        letters[qubit] = letter
        return cls.from_letters(letters)

    # views ------------------------------------------------------------------
    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> j) & 1 for j in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> j) & 1 for j in range(self.n))

    @property
    def letters(self) -> str:
        return "".join(self.letter(j) for j in range(self.n))

    def letter(self, j: int) -> str:
        return BITS_LETTER[((self.x >> j) & 1, (self.z >> j) & 1)]

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    @property
    def is_hermitian(self) -> bool:
        return self.k % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian strings."""
        if not self.is_hermitian:
            raise DomainError(f"{self} is not Hermitian")
        return 1 if self.k == 0 else -1

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def same_letters(self, other: PauliString) -> bool:
        return self.n == other.n and self.x == other.x and self.z == other.z

    def __str__(self) -> str:
        return _PHASE_TEXT[self.k] + self.letters

    def __repr__(self) -> str:
        return f"PauliString({str(self)!r})"

    # algebra ----------------------------------------------------------------
    def _check(self, other: PauliString):
        if self.n != other.n:
            raise DimensionError(f"qubit count mismatch: {self.n} vs {other.n}")

    def __mul__(self, other: PauliString) -> PauliString:
        return mul(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.k + 2)

    def times_i(self, power: int = 1) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.k + power)

    def hermitian(self) -> PauliString:
        """Drop a factor of +-i so the result is Hermitian (keeps +-1 phases)."""
        return PauliString(self.n, self.x, self.z, self.k - (self.k % 2))

    def permuted(self, perm: Sequence[int]) -> PauliString:
        """Return the string whose qubit ``c`` carries this string's qubit ``perm[c]``."""
        return PauliString.from_letters([self.letter(p) for p in perm], self.k)

    def to_matrix(self) -> np.ndarray:
        """Dense ``2**n x 2**n`` matrix; qubit 0 is the most significant factor."""
        out = np.array([[1.0 + 0j]])
        for letter in self.letters:
            out = np.kron(out, PAULI_MATRICES[letter])
        return (1j ** self.k) * out


PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def mul(a: PauliString, b: PauliString) -> PauliString:
    """Operator product ``a @ b`` with exact phase."""
    a._check(b)
    k = a.k + b.k + _mul_phase(a.x, a.z, b.x, b.z)
    return PauliString(a.n, a.x ^ b.x, a.z ^ b.z, k)


def product(paulis: Iterable[PauliString], n: int) -> PauliString:
    out = PauliString.identity(n)
    for p in paulis:
        out = mul(out, p)
    return out


def symplectic(a: PauliString, b: PauliString) -> int:
    """Symplectic inner product mod 2."""
    a._check(b)
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) & 1


def commutes(a: PauliString, b: PauliString) -> bool:
    return symplectic(a, b) == 0


def expectation_product_state(p: PauliString, r) -> float:
    """``tr[rho_1 (x) ... (x) rho_n  p]`` for single-qubit Bloch vectors ``r``.

    ``r`` is an ``(n, 3)`` array-like of Bloch vectors ordered (X, Y, Z).
    """
    if not p.is_hermitian:
        raise DomainError(f"expectation needs a Hermitian Pauli string, got {p}")
    r = np.asarray(r, dtype=float)
    if r.shape != (p.n, 3):
        raise DimensionError(f"expected {p.n} Bloch vectors, got shape {r.shape}")
    if np.any(np.linalg.norm(r, axis=1) > 1 + 1e-12):
        raise DomainError("Bloch vector outside the unit ball")
    value = float(p.sign)
    for j in range(p.n):
        letter = p.letter(j)
        if letter != "I":
            value *= r[j, BLOCH_INDEX[letter]]
    return value
