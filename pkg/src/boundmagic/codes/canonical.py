"""Canonical generators for an [[n, 1]] code.

Row multiplication brings an (n-1) x (n-1) block of the generator matrix into
the form where column ``i`` carries a letter ``A_i`` on the diagonal and only
``I`` or a fixed companion letter ``B_i`` elsewhere.  The remaining column is
relabeled to the last position; its entries ``T_{j,n}`` are unconstrained.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import TrivialCodeError, WitnessError
from ..pauli import PauliString, mul
from .stabilizer import StabilizerCode, in_group, is_trivial

_NEXT = {"X": "Y", "Y": "Z", "Z": "X"}
_PREV = {v: k for k, v in _NEXT.items()}
_ORDER = {"X": 0, "Y": 1, "Z": 2}


def third_letter(a: str, b: str) -> str:
    (c,) = set("XYZ") - {a, b}
    return c


def gamma_of(a: str, b: str) -> int:
    """``gamma`` in ``A B = i (-1)**gamma C``: 0 for cyclic order XY, YZ, ZX."""
    return 0 if _NEXT[a] == b else 1


def companion(a: str, gamma: int) -> str:
    """The letter ``B`` with ``A B = i (-1)**gamma C``."""
    return _NEXT[a] if gamma == 0 else _PREV[a]


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical generators in relabeled qubit order.

    ``permutation[c]`` is the original qubit placed at canonical position
    ``c``.  Lists ``A`` has length n (``A[n-1]`` is ``T_{n-1,n}``); ``B``,
    ``C`` and ``gamma`` cover the first n-1 columns.  ``beta[k][j]`` is 1 when
    row ``j`` carries ``B_k`` on column ``k``.
    """

    code: StabilizerCode
    permutation: tuple[int, ...]
    rows: tuple[PauliString, ...]
    A: tuple[str, ...]
    B: tuple[str, ...]
    C: tuple[str, ...]
    gamma: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[tuple[int, ...], ...]
    T_col: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.code.n

    def rows_original(self) -> tuple[PauliString, ...]:
        """The canonical rows expressed in the code's original qubit labels."""
        inverse = [0] * self.n
        for c, q in enumerate(self.permutation):
            inverse[q] = c
        return tuple(r.permuted(inverse) for r in self.rows)

    def last_column_letters(self, gamma_n: int) -> tuple[str, str]:
        """``(B_n, C_n)`` for the requested ``gamma_n``."""
        a_n = self.A[-1]
        b_n = companion(a_n, gamma_n)
        return b_n, third_letter(a_n, b_n)

    def check(self) -> None:
        """Assert the structural invariants; raises WitnessError on failure."""
        m = self.n - 1
        for j, row in enumerate(self.rows):
            for i in range(m):
                letter = row.letter(i)
                if i == j:
                    ok = letter == self.A[i]
                else:
                    ok = letter in ("I", self.B[i]) and bool(self.beta[i][j]) == (letter != "I")
                if not ok:
                    raise WitnessError(f"row {j} column {i} is {letter}, not canonical")
            if row.letter(m) != self.T_col[j] or row.sign != (-1) ** self.alpha[j]:
                raise WitnessError(f"row {j} bookkeeping mismatch")
        for i in range(m):
            if len({self.A[i], self.B[i], self.C[i]}) != 3:
                raise WitnessError(f"column {i} letters not distinct")
        for r in self.rows_original():
            if in_group(r, self.code) != 1:
                raise WitnessError(f"canonical row {r} not in the stabilizer group")


def _pick_pivot(rows, used, pivoted, n):
    for col in range(n):
        if col in pivoted:
            continue
        best = None
        for r, row in enumerate(rows):
            if r in used:
                continue
            letter = row.letter(col)
            if letter != "I" and (best is None or _ORDER[letter] < _ORDER[best[1]]):
                best = (r, letter)
        if best is not None:
            return best[0], col
    raise WitnessError("no pivot available; generators are dependent")


def canonical_form(code: StabilizerCode, companions: dict[int, str] | None = None) -> CanonicalForm:
    """Bring the generators of a non-trivial code into canonical form.

    ``companions`` optionally fixes ``B`` (keyed by original qubit) for
    columns whose off-diagonal entries are all identity; otherwise the cyclic
    successor of ``A`` is used.
    """
    if is_trivial(code):
        raise TrivialCodeError(
            f"{code.name or 'code'} leaves a qubit untouched; check is_trivial before canonicalizing"
        )
    n, m = code.n, code.n - 1
    rows = list(code.generators)
    used: dict[int, int] = {}  # row -> pivot column
    pivoted: set[int] = set()
    while len(used) < m:
        r, col = _pick_pivot(rows, used, pivoted, n)
        a = rows[r].letter(col)
        b = None
        for r2, row in enumerate(rows):
            letter = row.letter(col)
            if r2 != r and letter not in ("I", a):
                b = letter
                break
        for r2 in range(m):
            if r2 == r:
                continue
            letter = rows[r2].letter(col)
            if letter == a or (letter != "I" and letter != b):
                rows[r2] = mul(rows[r2], rows[r])
        used[r] = col
        pivoted.add(col)

    (leftover,) = set(range(n)) - pivoted
    order = sorted(used, key=lambda r: used[r])
    cols = [used[r] for r in order]
    T = [rows[r].letter(leftover) for r in order]
    nonid = [j for j, t in enumerate(T) if t != "I"]
    if not nonid:
        raise TrivialCodeError("all generators act trivially on the leftover qubit")
    last = nonid[-1]
    order[last], order[-1] = order[-1], order[last]
    cols[last], cols[-1] = cols[-1], cols[last]
    perm = tuple(cols + [leftover])
    canon = tuple(rows[r].permuted(perm) for r in order)

    A, B, C, gamma = [], [], [], []
    for i in range(m):
        a = canon[i].letter(i)
        others = [row.letter(i) for j, row in enumerate(canon) if j != i and row.letter(i) != "I"]
        if others:
            b = others[0]
        else:
            b = (companions or {}).get(perm[i], _NEXT[a])
            if b not in ("X", "Y", "Z") or b == a:
                raise WitnessError(f"companion {b!r} invalid for diagonal {a}")
        A.append(a)
        B.append(b)
        C.append(third_letter(a, b))
        gamma.append(gamma_of(a, b))
    A.append(canon[-1].letter(m))
    beta = tuple(
        tuple(int(j != k and canon[j].letter(k) != "I") for j in range(m)) for k in range(m)
    )
    cf = CanonicalForm(
        code=code,
        permutation=perm,
        rows=canon,
        A=tuple(A),
        B=tuple(B),
        C=tuple(C),
        gamma=tuple(gamma),
        alpha=tuple(0 if row.k == 0 else 1 for row in canon),
        beta=beta,
        T_col=tuple(row.letter(m) for row in canon),
    )
    cf.check()
    return cf
