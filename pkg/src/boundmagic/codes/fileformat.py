"""Line-based text format for stabilizer codes.

::

    # comment
    name=five_qubit
    n=5
    XZZXI
    -IXZZX
    X_L=XXXXX
    Z_L=ZZZZZ

Whitespace inside a line is ignored.  ``X_L``/``Z_L`` are optional and are
computed when absent.
"""
from __future__ import annotations

from pathlib import Path

from ..errors import CodeFormatError, DomainError
from ..pauli import PauliString
from .stabilizer import StabilizerCode, make_code


def parse_code(text: str, name: str | None = None) -> StabilizerCode:
    n = None
    gens: list[PauliString] = []
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = "".join(raw.split("#", 1)[0].split())
        if not line:
            continue
        if "=" in line:
            key, value = line.split("=", 1)
            key = key.lower()
            if key == "n":
                try:
                    n = int(value)
                except ValueError:
                    raise CodeFormatError(f"line {lineno}: bad qubit count {value!r}") from None
            elif key in ("x_l", "z_l", "name"):
                fields[key] = value
            else:
                raise CodeFormatError(f"line {lineno}: unknown field {key!r}")
            continue
        try:
            gens.append(PauliString.from_str(line))
        except DomainError as exc:
            raise CodeFormatError(f"line {lineno}: {exc}") from None
    if n is None:
        raise CodeFormatError("missing 'n=<int>' line")
    for g in gens:
        if g.n != n:
            raise CodeFormatError(f"generator {g} has {g.n} letters, expected {n}")
    return make_code(
        gens,
        fields.get("x_l"),
        fields.get("z_l"),
        name=fields.get("name", name),
        n=n,
    )


def format_code(code: StabilizerCode) -> str:
    lines = []
    if code.name:
        lines.append(f"name={code.name}")
    lines.append(f"n={code.n}")
    lines.extend(str(g) for g in code.generators)
    lines.append(f"X_L={code.logical_x}")
    lines.append(f"Z_L={code.logical_z}")
    return "\n".join(lines) + "\n"


def load_code(path: str | Path) -> StabilizerCode:
    path = Path(path)
    return parse_code(path.read_text(), name=path.stem)


def save_code(code: StabilizerCode, path: str | Path) -> None:
    Path(path).write_text(format_code(code))
