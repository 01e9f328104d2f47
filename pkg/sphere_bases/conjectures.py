"""Z2 form of the cellular spanning tree conjecture for the basis generators."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from tqdm.contrib.concurrent import thread_map

from . import gf2, settings
from .bases import build_basis
from .cells import Ambient, Family, check_size
from .complex import boundary_matrix, cell_index
from .counting import bw
from .errors import DomainError


logger = logging.getLogger(__name__)

VERDICT_LABEL = "Z2 spanning tree"
INTEGER_NOTE = "integer homology conditions (torsion) are not checked"


@dataclass(frozen=True)
class TreeCheckReport:
    family: Family
    n: int
    k: int
    facet_count: int
    tree_rank: int
    boundary_rank: int
    no_k_equal_rank: int | None = None

    @property
    def independent(self) -> bool:
        return self.tree_rank == self.facet_count

    @property
    def verdict(self) -> bool:
        return self.independent and self.facet_count == self.boundary_rank

    def to_json(self) -> dict[str, Any]:
        return {
            "spec": {"family": self.family.value, "n": self.n, "k": self.k},
            "facet_count": self.facet_count,
            "tree_rank": self.tree_rank,
            "boundary_rank": self.boundary_rank,
            "independent": self.independent,
            "verdict": self.verdict,
            "label": VERDICT_LABEL,
            "note": INTEGER_NOTE,
            "no_k_equal_rank": self.no_k_equal_rank,
        }


def spanning_tree_check(family: Family | str, n: int, k: int, max_n: int | None = None) -> TreeCheckReport:
    """Do the (k+1)-cells generating the basis span the k-boundaries independently?"""
    family = Family(family)
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    ambient = Ambient(family, n)
    check_size(ambient, max_n)
    basis = build_basis(family, n, k)
    top = boundary_matrix(ambient, k + 1)
    index = cell_index(ambient, k + 1)
    columns = [index[e.generator] for e in basis]
    report = TreeCheckReport(
        family=family,
        n=n,
        k=k,
        facet_count=len(columns),
        tree_rank=gf2.rank(top.take_columns(columns)),
        boundary_rank=gf2.rank(top),
        # facets of a tree in Q_n^{k+1} are counted by bw(n, k+1) once that is defined
        no_k_equal_rank=bw(n, k + 1) if family is Family.CUBE and k >= 2 else None,
    )
    logger.info("%s (%d,%d): %d facets, rank %d", family.value, n, k, report.facet_count, report.boundary_rank)
    return report


def spanning_tree_sweep(
    family: Family | str,
    nmax: int,
    kmax: int | None = None,
    workers: int | None = None,
    progress: bool = False,
    max_n: int | None = None,
) -> list[TreeCheckReport]:
    family = Family(family)
    pairs = [(n, k) for n in range(2, nmax + 1) for k in range(1, n) if kmax is None or k <= kmax]
    return thread_map(
        lambda pair: spanning_tree_check(family, *pair, max_n=max_n),
        pairs,
        max_workers=workers or settings.WORKERS,
        desc=f"{family.value} trees",
        disable=not progress,
    )
