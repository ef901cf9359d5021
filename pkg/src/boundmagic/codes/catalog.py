"""Named codes shipped in the package's ``data`` directory."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..errors import DomainError
from .fileformat import load_code, parse_code
from .stabilizer import StabilizerCode

_SUFFIX = ".code"


def _data_dir():
    return resources.files(__package__).joinpath("data")


def catalog_names() -> list[str]:
    return sorted(p.name[: -len(_SUFFIX)] for p in _data_dir().iterdir() if p.name.endswith(_SUFFIX))


@lru_cache(maxsize=None)
def get_code(name: str) -> StabilizerCode:
    entry = _data_dir().joinpath(name + _SUFFIX)
    if not entry.is_file():
        raise DomainError(f"unknown code {name!r}; known: {', '.join(catalog_names())}")
    return parse_code(entry.read_text(), name=name)


def catalog() -> list[StabilizerCode]:
    return [get_code(name) for name in catalog_names()]


def resolve_code(ref: str) -> StabilizerCode:
    """A catalog name or a path to a code file."""
    if ref in catalog_names():
        return get_code(ref)
    path = Path(ref)
    if path.is_file():
        return load_code(path)
    raise DomainError(f"{ref!r} is neither a catalog code ({', '.join(catalog_names())}) nor a file")
