"""Faces of the n-simplex and the n-cube.

Cube cells are words over ``0``, ``1`` and ``*`` (coordinate fixed at 0, fixed
at 1, or free); simplex cells are ascending vertex tuples drawn from
``1..n+1``. Both are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Any, Union

from . import settings
from .errors import CellParseError, DomainError, SizeGuardError


class Family(str, Enum):
    SIMPLEX = "simplex"
    CUBE = "cube"


@dataclass(frozen=True)
class Ambient:
    family: Family
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1:
            raise DomainError(f"ambient dimension must be >= 1, got {self.n}")

    @classmethod
    def cube(cls, n: int) -> Ambient:
        return cls(Family.CUBE, n)

    @classmethod
    def simplex(cls, n: int) -> Ambient:
        return cls(Family.SIMPLEX, n)

    @property
    def is_cube(self) -> bool:
        return self.family is Family.CUBE

    def __str__(self) -> str:
        return f"{'Q' if self.is_cube else 'Δ'}_{self.n}"


_CUBE_KEY = str.maketrans({"*": "2"})
_CUBE_SYMBOLS = frozenset("01*")


@dataclass(frozen=True)
class CubeCell:
    word: str

    @property
    def dim(self) -> int:
        return self.word.count("*")

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(i for i, ch in enumerate(self.word) if ch == "*")

    def sort_key(self) -> tuple[int, str]:
        # 0 < 1 < *
        return (self.dim, self.word.translate(_CUBE_KEY))

    def replace(self, position: int, symbol: str) -> CubeCell:
        return CubeCell(self.word[:position] + symbol + self.word[position + 1 :])

    def coordinates(self) -> tuple[int, ...]:
        if self.dim:
            raise DomainError(f"{self.word} is not a vertex")
        return tuple(int(ch) for ch in self.word)

    def __str__(self) -> str:
        return self.word


@dataclass(frozen=True)
class SimplexCell:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if not vertices:
            raise DomainError("a simplex cell needs at least one vertex")
        if any(a >= b for a, b in zip(vertices, vertices[1:])):
            raise DomainError(f"vertices must be strictly ascending: {vertices}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.dim, self.vertices)

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.vertices) + "}"


@dataclass(frozen=True)
class EmptyCell:
    """The unique cell of dimension -1."""

    @property
    def dim(self) -> int:
        return -1

    def sort_key(self) -> tuple[int]:
        return (-1,)

    def __str__(self) -> str:
        return "∅"


EMPTY_CELL = EmptyCell()

Cell = Union[CubeCell, SimplexCell, EmptyCell]

_SIMPLEX_TEXT = re.compile(r"^\{(.*)\}$")
_VERTEX_TEXT = re.compile(r"[0-9]+")


def parse_cell(text: str, ambient: Ambient) -> CubeCell | SimplexCell:
    if ambient.is_cube:
        return _parse_cube(text, ambient.n)
    return _parse_simplex(text, ambient.n)


def _parse_cube(text: str, n: int) -> CubeCell:
    for position, ch in enumerate(text, start=1):
        if ch not in "01*":
            raise CellParseError(text, position, f"symbol {ch!r} is not one of 0, 1, *")
    if len(text) != n:
        position = min(len(text), n) + 1
        raise CellParseError(text, position, f"expected a word of length {n}, got {len(text)}")
    return CubeCell(text)


def _parse_simplex(text: str, n: int) -> SimplexCell:
    match = _SIMPLEX_TEXT.match(text)
    if not match:
        raise CellParseError(text, 1, "expected {i1,i2,...}")
    body = match.group(1)
    vertices: list[int] = []
    offset = 2
    for token in body.split(","):
        stripped = token.strip()
        position = offset + (len(token) - len(token.lstrip()))
        if not _VERTEX_TEXT.fullmatch(stripped):
            raise CellParseError(text, position, f"{stripped!r} is not a vertex number")
        vertex = int(stripped)
        if not 1 <= vertex <= n + 1:
            raise CellParseError(text, position, f"vertex {vertex} outside 1..{n + 1}")
        if vertices and vertex <= vertices[-1]:
            raise CellParseError(text, position, "vertices must be strictly ascending")
        vertices.append(vertex)
        offset += len(token) + 1
    return SimplexCell(tuple(vertices))


def format_cell(cell: Cell) -> str:
    return str(cell)


def cell_to_json(cell: Cell) -> Any:
    if isinstance(cell, SimplexCell):
        return list(cell.vertices)
    return str(cell)


def cell_from_json(value: Any, ambient: Ambient) -> CubeCell | SimplexCell:
    if ambient.is_cube:
        if not isinstance(value, str):
            raise DomainError(f"cube cell must be a string, got {value!r}")
        return _parse_cube(value, ambient.n)
    if not isinstance(value, list):
        raise DomainError(f"simplex cell must be a list of integers, got {value!r}")
    return _parse_simplex("{" + ",".join(str(v) for v in value) + "}", ambient.n)


def contains(ambient: Ambient, cell: Cell) -> bool:
    if isinstance(cell, EmptyCell):
        return True
    if ambient.is_cube:
        return isinstance(cell, CubeCell) and cell.n == ambient.n and set(cell.word) <= _CUBE_SYMBOLS
    return isinstance(cell, SimplexCell) and 1 <= cell.vertices[0] and cell.vertices[-1] <= ambient.n + 1


def check_cell(ambient: Ambient, cell: Cell) -> None:
    if not contains(ambient, cell):
        raise DomainError(f"{cell} is not a face of {ambient}")


def faces(cell: Cell, j: int) -> list[Cell]:
    """All j-faces of ``cell`` in canonical order; j = -1 gives the empty cell."""
    d = cell.dim
    if not -1 <= j <= d:
        raise DomainError(f"face dimension {j} outside -1..{d} for {cell}")
    if j == -1:
        return [EMPTY_CELL]
    if isinstance(cell, CubeCell):
        result = []
        for fixed in combinations(cell.free, d - j):
            for values in product("01", repeat=d - j):
                word = list(cell.word)
                for position, value in zip(fixed, values):
                    word[position] = value
                result.append(CubeCell("".join(word)))
        return sorted(result, key=CubeCell.sort_key)
    assert isinstance(cell, SimplexCell)
    return [SimplexCell(vs) for vs in combinations(cell.vertices, j + 1)]


def cofaces(cell: Cell, ambient: Ambient) -> list[Cell]:
    """The (dim+1)-cells of the ambient having ``cell`` as a face."""
    check_cell(ambient, cell)
    if cell.dim > ambient.n - 1:
        raise DomainError(f"{cell} has no cofaces in {ambient}")
    if isinstance(cell, EmptyCell):
        return list(enumerate_cells(ambient, 0))
    if isinstance(cell, CubeCell):
        result = [cell.replace(i, "*") for i, ch in enumerate(cell.word) if ch != "*"]
        return sorted(result, key=CubeCell.sort_key)
    present = set(cell.vertices)
    return [
        SimplexCell(tuple(sorted(cell.vertices + (v,))))
        for v in range(1, ambient.n + 2)
        if v not in present
    ]


def check_size(ambient: Ambient, bound: int | None = None) -> None:
    """Refuse ambients above the size guard; the default bound comes from settings."""
    if bound is None:
        bound = settings.MAX_CUBE_N if ambient.is_cube else settings.MAX_SIMPLEX_N
    if ambient.n > bound:
        raise SizeGuardError("n", ambient.n, bound)


def cell_count(ambient: Ambient, j: int) -> int:
    if ambient.is_cube:
        return comb(ambient.n, j) * 2 ** (ambient.n - j)
    return comb(ambient.n + 1, j + 1)


@lru_cache(maxsize=256)
def enumerate_cells(ambient: Ambient, j: int) -> tuple[Cell, ...]:
    """Every j-cell of the ambient, in canonical order."""
    if not 0 <= j <= ambient.n:
        raise DomainError(f"cell dimension {j} outside 0..{ambient.n}")
    if ambient.is_cube:
        # product() already walks the words in 0 < 1 < * order
        return tuple(
            CubeCell("".join(word))
            for word in product("01*", repeat=ambient.n)
            if word.count("*") == j
        )
    return tuple(SimplexCell(vs) for vs in combinations(range(1, ambient.n + 2), j + 1))


def cube_embed(cell: CubeCell, n: int) -> CubeCell:
    """Place a cell of Q_m inside Q_n by fixing the trailing coordinates at 0."""
    if cell.n > n:
        raise DomainError(f"{cell} does not fit in Q_{n}")
    return CubeCell(cell.word + "0" * (n - cell.n))


def cube_vertex_cycle(cell: CubeCell) -> list[CubeCell]:
    """Vertices of a square in boundary-walk order."""
    if cell.dim != 2:
        raise DomainError(f"{cell} is not a square")
    i, j = cell.free
    corners = []
    for a, b in (("0", "0"), ("1", "0"), ("1", "1"), ("0", "1")):
        corners.append(cell.replace(i, a).replace(j, b))
    return corners
