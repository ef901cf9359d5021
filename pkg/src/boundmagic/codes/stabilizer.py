"""[[n, 1]] stabilizer codes: validation, group enumeration and logical operators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ..errors import (
    CodeError,
    DependentGeneratorsError,
    LogicalOperatorError,
    MinusIdentityError,
    NonCommutingError,
    ResourceError,
)
from ..pauli import PauliString, commutes, mul, product

MAX_GROUP_QUBITS = 24


# GF(2) helpers on symplectic vectors packed as ``x | z << n`` ------------------

def _pack(p: PauliString) -> int:
    return p.x | (p.z << p.n)


def _pack_swapped(p: PauliString) -> int:
    return p.z | (p.x << p.n)


def _unpack(v: int, n: int, k: int = 0) -> PauliString:
    mask = (1 << n) - 1
    return PauliString(n, v & mask, (v >> n) & mask, k)


def _unpack_swapped(v: int, n: int, k: int = 0) -> PauliString:
    mask = (1 << n) - 1
    return PauliString(n, (v >> n) & mask, v & mask, k)


def reduced_basis(vectors: Sequence[int]) -> dict[int, int]:
    """Fully reduced echelon basis keyed by pivot (highest set bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = reduce_vector(v, basis)
        if not v:
            continue
        pivot = v.bit_length() - 1
        for p, row in basis.items():
            if (row >> pivot) & 1:
                basis[p] = row ^ v
        basis[pivot] = v
    return basis


def reduce_vector(v: int, basis: dict[int, int]) -> int:
    """Smallest element of ``v + span(basis)`` for a fully reduced basis."""
    for pivot in sorted(basis, reverse=True):
        if (v >> pivot) & 1:
            v ^= basis[pivot]
    return v


def nullspace(rows: Sequence[int], width: int) -> list[int]:
    """Basis of ``{v : parity(v & row) == 0 for every row}`` in GF(2)^width."""
    basis = reduced_basis(rows)
    pivots = set(basis)
    out = []
    for free in range(width):
        if free in pivots:
            continue
        v = 1 << free
        for pivot, row in basis.items():
            if (row >> free) & 1:
                v |= 1 << pivot
        out.append(v)
    return out


# the code type ----------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerCode:
    """``n - 1`` commuting, independent generators plus logical X and Z.

    Instances returned by :func:`make_code`/:func:`validate` are checked;
    constructing the dataclass directly skips validation.
    """

    n: int
    generators: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString
    name: str | None = None

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def logical_y(self) -> PauliString:
        return mul(self.logical_x, self.logical_z).times_i()

    def __str__(self) -> str:
        label = self.name or f"[[{self.n},1]]"
        gens = " ".join(str(g) for g in self.generators)
        return f"{label}: {gens} | X_L={self.logical_x} Z_L={self.logical_z}"


def _check_generators(n: int, generators: Sequence[PauliString]) -> None:
    if len(generators) != n - 1:
        raise CodeError(f"an [[{n},1]] code needs {n - 1} generators, got {len(generators)}")
    for g in generators:
        if g.n != n:
            raise CodeError(f"generator {g} does not act on {n} qubits")
        if not g.is_hermitian:
            raise MinusIdentityError(f"generator {g} squares to -I")
    for i, a in enumerate(generators):
        for j in range(i):
            if not commutes(a, generators[j]):
                raise NonCommutingError(f"generators {generators[j]} and {a} anticommute")
    # track which generators combine into each basis row
    basis: dict[int, tuple[int, int]] = {}
    for i, g in enumerate(generators):
        v, combo = _pack(g), 1 << i
        for pivot in sorted(basis, reverse=True):
            if (v >> pivot) & 1:
                v ^= basis[pivot][0]
                combo ^= basis[pivot][1]
        if v == 0:
            members = [generators[j] for j in range(len(generators)) if (combo >> j) & 1]
            prod = product(members, n)
            names = ", ".join(str(m) for m in members)
            if prod.k == 2:
                raise MinusIdentityError(f"-I is in the group: product of {names}")
            raise DependentGeneratorsError(f"dependent generators: {names}")
        basis[v.bit_length() - 1] = (v, combo)


def _check_logicals(generators, lx: PauliString, lz: PauliString, n: int) -> None:
    for name, op in (("X_L", lx), ("Z_L", lz)):
        if op.n != n:
            raise LogicalOperatorError(f"{name}={op} does not act on {n} qubits")
        if not op.is_hermitian:
            raise LogicalOperatorError(f"{name}={op} is not Hermitian")
        for g in generators:
            if not commutes(op, g):
                raise LogicalOperatorError(f"{name}={op} anticommutes with generator {g}")
    if commutes(lx, lz):
        raise LogicalOperatorError(f"X_L={lx} and Z_L={lz} must anticommute")
    span = reduced_basis([_pack(g) for g in generators])
    for name, op in (("X_L", lx), ("Z_L", lz)):
        if reduce_vector(_pack(op), span) == 0:
            raise LogicalOperatorError(f"{name}={op} lies in the stabilizer group")


def find_logicals(n: int, generators: Sequence[PauliString]) -> tuple[PauliString, PauliString]:
    """Pick logical X and Z by solving the commutation system.

    The centralizer modulo the stabilizer has three non-trivial classes.  X_L
    is the class whose coset minimum under the key ``(z bits, x bits)`` is
    smallest (the most X-like), Z_L the remaining class with smallest coset
    minimum under ``(x bits, z bits)``.  Both carry phase +1.
    """
    if n == 1:
        return PauliString.from_str("X"), PauliString.from_str("Z")
    rows = [_pack_swapped(g) for g in generators]
    centralizer = nullspace(rows, 2 * n)
    stab = reduced_basis([_pack(g) for g in generators])
    reps = []
    basis_mod_s: dict[int, int] = dict(stab)
    for v in centralizer:
        w = reduce_vector(v, basis_mod_s)
        if w:
            reps.append(w)
            basis_mod_s = reduced_basis(list(basis_mod_s.values()) + [w])
    if len(reps) != 2:
        raise LogicalOperatorError("could not find a logical qubit")
    classes = [reps[0], reps[1], reps[0] ^ reps[1]]
    stab_swapped = reduced_basis([_pack_swapped(g) for g in generators])

    def x_key(v):
        return reduce_vector(v, stab)

    def z_key(v):
        return reduce_vector(_pack_swapped(_unpack(v, n)), stab_swapped)

    cx = min(classes, key=x_key)
    cz = min((c for c in classes if c != cx), key=z_key)
    return _unpack(x_key(cx), n), _unpack_swapped(z_key(cz), n)


def make_code(
    generators: Sequence[PauliString | str],
    logical_x: PauliString | str | None = None,
    logical_z: PauliString | str | None = None,
    name: str | None = None,
    n: int | None = None,
) -> StabilizerCode:
    """Build and validate a code; missing logicals are computed."""
    gens = tuple(PauliString.from_str(g) if isinstance(g, str) else g for g in generators)
    if n is None:
        if not gens:
            raise CodeError("qubit count unknown for a code without generators")
        n = gens[0].n
    _check_generators(n, gens)
    if (logical_x is None) != (logical_z is None):
        raise LogicalOperatorError("give both X_L and Z_L or neither")
    if logical_x is None:
        lx, lz = find_logicals(n, gens)
    else:
        lx = PauliString.from_str(logical_x) if isinstance(logical_x, str) else logical_x
        lz = PauliString.from_str(logical_z) if isinstance(logical_z, str) else logical_z
        _check_logicals(gens, lx, lz, n)
    return StabilizerCode(n, gens, lx, lz, name)


def validate(code: StabilizerCode) -> StabilizerCode:
    """Re-check every invariant of ``code`` and return it."""
    _check_generators(code.n, code.generators)
    _check_logicals(code.generators, code.logical_x, code.logical_z, code.n)
    return code


def group_elements(code: StabilizerCode, max_qubits: int = MAX_GROUP_QUBITS) -> Iterator[PauliString]:
    """Yield all ``2**(n-1)`` stabilizer elements in Gray-code order."""
    if code.n > max_qubits:
        raise ResourceError(f"n={code.n} exceeds the enumeration cap {max_qubits}")
    cur = PauliString.identity(code.n)
    m = code.num_generators
    for idx in range(1 << m):
        yield cur
        step = idx + 1
        if step < (1 << m):
            cur = mul(cur, code.generators[(step & -step).bit_length() - 1])


def in_group(p: PauliString, code: StabilizerCode) -> int:
    """+1 if ``p`` is in the group, -1 if ``-p`` is, 0 otherwise."""
    basis: dict[int, tuple[int, int]] = {}
    for i, g in enumerate(code.generators):
        v, combo = _pack(g), 1 << i
        for pivot in sorted(basis, reverse=True):
            if (v >> pivot) & 1:
                v ^= basis[pivot][0]
                combo ^= basis[pivot][1]
        basis[v.bit_length() - 1] = (v, combo)
    v, combo = _pack(p), 0
    for pivot in sorted(basis, reverse=True):
        if (v >> pivot) & 1:
            v ^= basis[pivot][0]
            combo ^= basis[pivot][1]
    if v:
        return 0
    members = [g for j, g in enumerate(code.generators) if (combo >> j) & 1]
    element = product(members, code.n)
    if element.k == p.k:
        return 1
    if (element.k - p.k) % 4 == 2:
        return -1
    return 0


def untouched_qubits(code: StabilizerCode) -> list[int]:
    """Qubits on which every generator (hence every element) acts as identity."""
    touched = 0
    for g in code.generators:
        touched |= g.support
    return [q for q in range(code.n) if not (touched >> q) & 1]


def is_trivial(code: StabilizerCode) -> bool:
    """True if some qubit is untouched, i.e. the code is a product state times a bare qubit."""
    return bool(untouched_qubits(code))


@dataclass(frozen=True)
class DecodeMap:
    """Logical operators whose expectations give the decoded Bloch vector."""

    x: PauliString
    y: PauliString
    z: PauliString

    def as_tuple(self) -> tuple[PauliString, PauliString, PauliString]:
        return self.x, self.y, self.z


def decode_map(code: StabilizerCode) -> DecodeMap:
    """Decoding X_L -> X, Z_L -> Z; ``Y_L = i X_L Z_L`` is Hermitian."""
    y = code.logical_y
    assert y.is_hermitian
    return DecodeMap(code.logical_x, y, code.logical_z)
