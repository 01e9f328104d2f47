"""Z2 chains, boundary operators and Betti numbers of skeleta and subcomplexes."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import networkx as nx
import numpy as np

from . import gf2
from .cells import (
    EMPTY_CELL,
    Ambient,
    Cell,
    EmptyCell,
    Family,
    cell_from_json,
    cell_to_json,
    check_cell,
    enumerate_cells,
    faces,
)
from .errors import DomainError


logger = logging.getLogger(__name__)


def _key(cell: Cell) -> Any:
    return cell.sort_key()


def _merge_xor(left: tuple[Cell, ...], right: tuple[Cell, ...]) -> tuple[Cell, ...]:
    """Symmetric difference of two canonically sorted cell tuples."""
    out: list[Cell] = []
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        ka, kb = _key(a), _key(b)
        if ka == kb:
            i += 1
            j += 1
        elif ka < kb:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return tuple(out)


@dataclass(frozen=True)
class Chain:
    """A set of k-cells of one ambient; addition is symmetric difference."""

    ambient: Ambient
    k: int
    cells: tuple[Cell, ...]
    _members: frozenset[Cell] = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.cells))

    @classmethod
    def of(cls, ambient: Ambient, k: int, cells: Iterable[Cell]) -> Chain:
        unique = set(cells)
        for cell in unique:
            check_cell(ambient, cell)
            if cell.dim != k:
                raise DomainError(f"{cell} has dimension {cell.dim}, chain expects {k}")
        return cls(ambient, k, tuple(sorted(unique, key=_key)))

    @classmethod
    def mod2(cls, ambient: Ambient, k: int, cells: Iterable[Cell]) -> Chain:
        """Chain of the cells occurring an odd number of times."""
        counts = Counter(cells)
        return cls.of(ambient, k, (c for c, times in counts.items() if times % 2))

    @classmethod
    def zero(cls, ambient: Ambient, k: int) -> Chain:
        return cls(ambient, k, ())

    def __add__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        if other.ambient != self.ambient or other.k != self.k:
            raise DomainError("cannot add chains of different ambients or dimensions")
        return Chain(self.ambient, self.k, _merge_xor(self.cells, other.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self._members

    def __bool__(self) -> bool:
        return bool(self.cells)

    @property
    def members(self) -> frozenset[Cell]:
        return self._members

    def indicator(self) -> np.ndarray:
        """0/1 vector over the canonical k-cells of the ambient."""
        index = cell_index(self.ambient, self.k)
        vector = np.zeros(len(index), dtype=bool)
        for cell in self.cells:
            vector[index[cell]] = True
        return vector

    @classmethod
    def from_indicator(cls, ambient: Ambient, k: int, vector: np.ndarray) -> Chain:
        universe = enumerate_cells(ambient, k)
        return cls(ambient, k, tuple(universe[i] for i in np.flatnonzero(vector)))

    def to_json(self) -> dict[str, Any]:
        return {
            "family": self.ambient.family.value,
            "n": self.ambient.n,
            "k": self.k,
            "cells": [cell_to_json(c) for c in self.cells],
        }

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> Chain:
        ambient = Ambient(Family(payload["family"]), int(payload["n"]))
        k = int(payload["k"])
        return cls.of(ambient, k, (cell_from_json(c, ambient) for c in payload["cells"]))

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.cells) + "}"


@dataclass(frozen=True)
class SkeletonSpec:
    ambient: Ambient
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.ambient.n:
            raise DomainError(f"skeleton dimension {self.k} outside 0..{self.ambient.n}")


@lru_cache(maxsize=256)
def cell_index(ambient: Ambient, j: int) -> dict[Cell, int]:
    return {cell: i for i, cell in enumerate(enumerate_cells(ambient, j))}


def boundary(z: Chain) -> Chain:
    if z.k < 0:
        raise DomainError("the empty cell has no boundary")
    if z.k == 0:
        return Chain(z.ambient, -1, (EMPTY_CELL,) if len(z) % 2 else ())
    return Chain.mod2(z.ambient, z.k - 1, (f for c in z for f in faces(c, z.k - 1)))


def is_cycle(z: Chain) -> bool:
    return not boundary(z)


def skeleton_chain(spec: SkeletonSpec) -> Chain:
    """All top cells of the skeleton as one chain."""
    return Chain(spec.ambient, spec.k, enumerate_cells(spec.ambient, spec.k))


@dataclass(frozen=True)
class CellComplex:
    """A finite set of cells of one ambient, grouped by dimension."""

    ambient: Ambient
    cells: frozenset[Cell]

    @classmethod
    def of(cls, ambient: Ambient, cells: Iterable[Cell]) -> CellComplex:
        unique = frozenset(c for c in cells if not isinstance(c, EmptyCell))
        for cell in unique:
            check_cell(ambient, cell)
        return cls(ambient, unique)

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def of_dim(self, j: int) -> list[Cell]:
        return sorted((c for c in self.cells if c.dim == j), key=_key)

    def f_vector(self) -> list[int]:
        counts = Counter(c.dim for c in self.cells)
        return [counts[j] for j in range(self.dim + 1)]

    def missing_face(self) -> Cell | None:
        for cell in sorted(self.cells, key=_key):
            if cell.dim == 0:
                continue
            for face in faces(cell, cell.dim - 1):
                if face not in self.cells:
                    return face
        return None

    def is_closed(self) -> bool:
        return self.missing_face() is None

    def is_pure(self) -> bool:
        top = self.dim
        covered = {f for c in self.cells if c.dim == top for j in range(top) for f in faces(c, j)}
        return all(c.dim == top or c in covered for c in self.cells)

    def graph(self) -> nx.Graph:
        """The 1-skeleton as a networkx graph on vertex cells."""
        g = nx.Graph()
        g.add_nodes_from(self.of_dim(0))
        for edge in self.of_dim(1):
            a, b = faces(edge, 0)
            g.add_edge(a, b)
        return g

    def is_connected(self) -> bool:
        g = self.graph()
        return g.number_of_nodes() > 0 and nx.is_connected(g)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells


def closure(z: Chain) -> CellComplex:
    """Smallest face-closed set of cells containing the cells of z."""
    cells: set[Cell] = set()
    for cell in z:
        if isinstance(cell, EmptyCell):
            continue
        for j in range(cell.dim + 1):
            cells.update(faces(cell, j))
    return CellComplex(z.ambient, frozenset(cells))


def euler_characteristic(complex_: CellComplex) -> int:
    missing = complex_.missing_face()
    if missing is not None:
        raise DomainError(f"not a complex: face {missing} is missing")
    return sum((-1) ** j * count for j, count in enumerate(complex_.f_vector()))


def boundary_matrix_between(rows: list[Cell] | tuple[Cell, ...], cols: list[Cell] | tuple[Cell, ...]) -> gf2.Gf2Matrix:
    """Matrix of the boundary map from the span of ``cols`` to the span of ``rows``."""
    row_index = {cell: i for i, cell in enumerate(rows)}
    supports = []
    for cell in cols:
        support = [row_index[f] for f in faces(cell, cell.dim - 1) if f in row_index]
        supports.append(support)
    return gf2.Gf2Matrix.from_columns(len(rows), supports)


@lru_cache(maxsize=128)
def boundary_matrix(ambient: Ambient, ell: int) -> gf2.Gf2Matrix:
    """∂_ell of the ambient: rows are (ell-1)-cells, columns ell-cells, canonical order."""
    if not 1 <= ell <= ambient.n:
        raise DomainError(f"boundary degree {ell} outside 1..{ambient.n}")
    matrix = boundary_matrix_between(enumerate_cells(ambient, ell - 1), enumerate_cells(ambient, ell))
    logger.debug("built ∂_%d of %s: %dx%d", ell, ambient, matrix.rows, matrix.cols)
    return matrix


@lru_cache(maxsize=128)
def _boundary_rank(ambient: Ambient, ell: int) -> int:
    if ell == 0:
        return 0
    return gf2.rank(boundary_matrix(ambient, ell))


def betti(spec: SkeletonSpec, ell: int) -> int:
    """Unreduced Z2 Betti number b_ell of the k-skeleton."""
    if not 0 <= ell <= spec.k:
        raise DomainError(f"homology degree {ell} outside 0..{spec.k}")
    ambient = spec.ambient
    cycles = len(enumerate_cells(ambient, ell)) - _boundary_rank(ambient, ell)
    boundaries = _boundary_rank(ambient, ell + 1) if ell < spec.k else 0
    return cycles - boundaries


def betti_profile(complex_: CellComplex) -> tuple[int, ...]:
    """Unreduced Z2 Betti numbers (b_0, ..., b_dim) of a face-closed cell set."""
    missing = complex_.missing_face()
    if missing is not None:
        raise DomainError(f"not a complex: face {missing} is missing")
    by_dim = defaultdict(list)
    for cell in complex_.cells:
        by_dim[cell.dim].append(cell)
    for cells in by_dim.values():
        cells.sort(key=_key)
    top = complex_.dim
    ranks = [0] * (top + 2)
    for ell in range(1, top + 1):
        ranks[ell] = gf2.rank(boundary_matrix_between(by_dim[ell - 1], by_dim[ell]))
    return tuple(len(by_dim[ell]) - ranks[ell] - ranks[ell + 1] for ell in range(top + 1))


def odd_faces(z: Chain) -> Chain:
    """The (k-1)-faces lying in an odd number of cells of z."""
    return boundary(z)
