"""Canonical sphere bases B(n,k) for the cube and B'(n,k) for the simplex.

Every basis element is the boundary of a single (k+1)-cell. The cube basis
grows one coordinate at a time: the seed is the boundary of the (k+1)-cube on
the first k+1 coordinates, and level m adds ``∂(s × [0,1])`` along coordinate
m+1 for every k-cell s of Q_m. The simplex basis is the set of boundaries of
the (k+1)-simplices through vertex 1.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from . import gf2
from .cells import (
    Ambient,
    Cell,
    CubeCell,
    Family,
    SimplexCell,
    cell_from_json,
    cell_to_json,
    enumerate_cells,
)
from .complex import Chain, SkeletonSpec, boundary, cell_index
from .errors import DomainError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SphereBasisElement:
    generator: Cell
    chain: Chain
    level: int
    private_face: Cell
    seed: bool = False

    def to_json(self) -> dict[str, Any]:
        return {
            "generator": cell_to_json(self.generator),
            "level": self.level,
            "private_face": cell_to_json(self.private_face),
            "seed": self.seed,
            "cells": [cell_to_json(c) for c in self.chain],
        }


@dataclass(frozen=True)
class SphereBasis:
    spec: SkeletonSpec
    elements: tuple[SphereBasisElement, ...]
    _by_generator: dict[Cell, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        self._by_generator.update({e.generator: i for i, e in enumerate(self.elements)})

    @property
    def ambient(self) -> Ambient:
        return self.spec.ambient

    @property
    def k(self) -> int:
        return self.spec.k

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[SphereBasisElement]:
        return iter(self.elements)

    def __getitem__(self, index: int) -> SphereBasisElement:
        return self.elements[index]

    def index_of_generator(self, generator: Cell) -> int:
        try:
            return self._by_generator[generator]
        except KeyError:
            raise DomainError(f"{generator} does not generate an element of this basis") from None

    def without(self, index: int) -> SphereBasis:
        return SphereBasis(self.spec, self.elements[:index] + self.elements[index + 1 :])

    def column_matrix(self) -> gf2.Gf2Matrix:
        """Rows are the canonical k-cells, columns the element chains."""
        index = cell_index(self.ambient, self.k)
        return gf2.Gf2Matrix.from_columns(
            len(index), ([index[c] for c in e.chain] for e in self.elements)
        )

    def sum_of(self, indices: Iterator[int] | list[int] | tuple[int, ...] | set[int]) -> Chain:
        total = Chain.zero(self.ambient, self.k)
        for i in sorted(indices):
            total = total + self.elements[i].chain
        return total

    def to_json(self) -> dict[str, Any]:
        return {
            "family": self.ambient.family.value,
            "n": self.ambient.n,
            "k": self.k,
            "elements": [e.to_json() for e in self.elements],
        }

    def content_hash(self) -> str:
        payload = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    @classmethod
    def from_json(cls, payload: dict[str, Any]) -> SphereBasis:
        ambient = Ambient(Family(payload["family"]), int(payload["n"]))
        k = int(payload["k"])
        elements = []
        for item in payload["elements"]:
            generator = cell_from_json(item["generator"], ambient)
            chain = Chain.of(ambient, k, (cell_from_json(c, ambient) for c in item["cells"]))
            elements.append(
                SphereBasisElement(
                    generator=generator,
                    chain=chain,
                    level=int(item["level"]),
                    private_face=cell_from_json(item["private_face"], ambient),
                    seed=bool(item.get("seed", False)),
                )
            )
        return cls(SkeletonSpec(ambient, k), tuple(elements))


def _check_range(n: int, k: int) -> None:
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got n={n}, k={k}")


def _sphere(ambient: Ambient, generator: Cell) -> Chain:
    return boundary(Chain.of(ambient, generator.dim, [generator]))


@lru_cache(maxsize=64)
def cube_basis(n: int, k: int) -> SphereBasis:
    _check_range(n, k)
    ambient = Ambient.cube(n)
    seed = CubeCell("*" * (k + 1) + "0" * (n - k - 1))
    seed_chain = _sphere(ambient, seed)
    elements = [
        SphereBasisElement(
            generator=seed,
            chain=seed_chain,
            level=k + 1,
            private_face=seed_chain.cells[0],
            seed=True,
        )
    ]
    for m in range(k + 1, n):
        tail = "0" * (n - m - 1)
        for s in enumerate_cells(Ambient.cube(m), k):
            generator = CubeCell(s.word + "*" + tail)
            elements.append(
                SphereBasisElement(
                    generator=generator,
                    chain=_sphere(ambient, generator),
                    level=m,
                    private_face=CubeCell(s.word + "1" + tail),
                )
            )
    logger.debug("built B(%d,%d) with %d spheres", n, k, len(elements))
    return SphereBasis(SkeletonSpec(ambient, k), tuple(elements))


@lru_cache(maxsize=64)
def simplex_basis(n: int, k: int) -> SphereBasis:
    _check_range(n, k)
    ambient = Ambient.simplex(n)
    elements = []
    for rest in enumerate_cells(Ambient.simplex(n), k):
        assert isinstance(rest, SimplexCell)
        if rest.vertices[0] == 1:
            continue
        generator = SimplexCell((1,) + rest.vertices)
        elements.append(
            SphereBasisElement(
                generator=generator,
                chain=_sphere(ambient, generator),
                level=0,
                private_face=rest,
            )
        )
    logger.debug("built B'(%d,%d) with %d spheres", n, k, len(elements))
    return SphereBasis(SkeletonSpec(ambient, k), tuple(elements))


def build_basis(family: Family | str, n: int, k: int) -> SphereBasis:
    if Family(family) is Family.CUBE:
        return cube_basis(n, k)
    return simplex_basis(n, k)


def coverage_check(basis: SphereBasis) -> bool:
    """True iff every k-cell of the ambient lies on some basis sphere."""
    covered = set()
    for element in basis:
        covered.update(element.chain.cells)
    return covered == set(enumerate_cells(basis.ambient, basis.k))


def basis_rank(basis: SphereBasis) -> int:
    return gf2.rank(basis.column_matrix())


def is_independent(basis: SphereBasis) -> bool:
    return basis_rank(basis) == len(basis)


def private_faces_unique(basis: SphereBasis) -> bool:
    """Each element's private face avoids every earlier element."""
    seen: set[Cell] = set()
    for element in basis:
        if element.private_face not in element.chain or element.private_face in seen:
            return False
        seen.update(element.chain.cells)
    return True


def level_census(basis: SphereBasis) -> dict[int, int]:
    """Number of attached (non-seed) spheres per level."""
    return dict(sorted(Counter(e.level for e in basis if not e.seed).items()))
