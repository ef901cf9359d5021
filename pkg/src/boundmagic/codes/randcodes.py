"""Random [[n, 1]] codes for property suites."""
from __future__ import annotations

import numpy as np

from ..pauli import PauliString, commutes
from .stabilizer import StabilizerCode, is_trivial, make_code, reduce_vector, reduced_basis


def _random_pauli(n: int, rng: np.random.Generator) -> PauliString:
    x = int(rng.integers(0, 1 << n))
    z = int(rng.integers(0, 1 << n))
    return PauliString(n, x, z, 2 * int(rng.integers(0, 2)))


def random_generators(n: int, count: int, rng: np.random.Generator) -> list[PauliString]:
    """``count`` independent, mutually commuting Hermitian Pauli strings on ``n`` qubits."""
    gens: list[PauliString] = []
    basis: dict[int, int] = {}
    while len(gens) < count:
        p = _random_pauli(n, rng)
        v = p.x | (p.z << n)
        if not reduce_vector(v, basis):
            continue
        if all(commutes(p, g) for g in gens):
            gens.append(p)
            basis = reduced_basis(list(basis.values()) + [v])
    return gens


def random_code(n: int, rng: np.random.Generator, nontrivial: bool = True) -> StabilizerCode:
    """Uniformly drawn commuting generators; trivial codes rejected on request."""
    while True:
        code = make_code(random_generators(n, n - 1, rng), n=n, name=f"random{n}")
        if not (nontrivial and is_trivial(code)):
            return code


def random_trivial_code(n: int, rng: np.random.Generator) -> StabilizerCode:
    """A random (n-1)-qubit stabilizer state next to an untouched qubit.

    Logicals are the bare X and Z of the untouched qubit.
    """
    free = int(rng.integers(0, n))
    inner = random_generators(n - 1, n - 1, rng) if n > 1 else []
    gens = []
    for g in inner:
        letters = list(g.letters)
        letters.insert(free, "I")
        gens.append(PauliString.from_letters(letters, g.k))
    lx = PauliString.single(n, free, "X")
    lz = PauliString.single(n, free, "Z")
    return make_code(gens, lx, lz, name=f"trivial{n}", n=n)
