"""Writing even subcomplexes as mod-2 sums of basis spheres."""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any

import networkx as nx
from tqdm.contrib.concurrent import thread_map

from . import gf2, settings
from .bases import SphereBasis, cube_basis, simplex_basis
from .cells import (
    Ambient,
    Cell,
    CubeCell,
    Family,
    SimplexCell,
    cell_to_json,
    check_size,
    cube_vertex_cycle,
    faces,
)
from .complex import (
    CellComplex,
    Chain,
    betti_profile,
    boundary,
    closure,
    euler_characteristic,
    is_cycle,
)
from .errors import ConsistencyError, DomainError, NotACycleError, SizeGuardError


logger = logging.getLogger(__name__)


class Method(str, Enum):
    CONE = "cone"
    PEEL = "peel"
    SOLVE = "solve"


@dataclass(frozen=True)
class DecompositionResult:
    basis_indices: tuple[int, ...]
    residual: Chain
    method: Method

    @property
    def success(self) -> bool:
        return not self.residual

    def to_json(self) -> dict[str, Any]:
        return {
            "indices": list(self.basis_indices),
            "method": self.method.value,
            "residual": [cell_to_json(c) for c in self.residual],
        }


def require_cycle(z: Chain) -> None:
    odd = boundary(z)
    if odd:
        raise NotACycleError(odd.cells[0])


def _check_chain(z: Chain, family: Family) -> None:
    if z.ambient.family is not family:
        raise DomainError(f"expected a chain in the {family.value}, got {z.ambient}")
    if not 1 <= z.k <= z.ambient.n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got n={z.ambient.n}, k={z.k}")


def _finish(z: Chain, basis: SphereBasis, indices: list[int], method: Method) -> DecompositionResult:
    chosen = tuple(sorted(indices))
    residual = z + basis.sum_of(chosen)
    if residual:
        raise ConsistencyError(f"{method.value} decomposition left {len(residual)} cells behind")
    return DecompositionResult(chosen, residual, method)


def simplex_decompose(z: Chain, basis: SphereBasis | None = None) -> DecompositionResult:
    """Cone every cell avoiding vertex 1 to vertex 1; those cones' boundaries sum to z."""
    _check_chain(z, Family.SIMPLEX)
    require_cycle(z)
    basis = basis or simplex_basis(z.ambient.n, z.k)
    indices = []
    for cell in z:
        assert isinstance(cell, SimplexCell)
        if cell.vertices[0] != 1:
            indices.append(basis.index_of_generator(SimplexCell((1,) + cell.vertices)))
    return _finish(z, basis, indices, Method.CONE)


def cube_decompose(z: Chain, basis: SphereBasis | None = None) -> DecompositionResult:
    """Peel attached spheres off by their private faces, highest level first."""
    _check_chain(z, Family.CUBE)
    require_cycle(z)
    n, k = z.ambient.n, z.k
    basis = basis or cube_basis(n, k)
    by_level: dict[int, list[int]] = defaultdict(list)
    for i, element in enumerate(basis):
        if not element.seed:
            by_level[element.level].append(i)

    residual = set(z.cells)
    indices: list[int] = []
    for level in range(n - 1, k, -1):
        selected = [i for i in by_level[level] if basis[i].private_face in residual]
        for i in selected:
            residual.symmetric_difference_update(basis[i].chain.cells)
        indices.extend(selected)
        logger.debug("peel level %d: %d spheres, %d cells left", level, len(selected), len(residual))

    seed = next(i for i, e in enumerate(basis) if e.seed)
    if residual == set(basis[seed].chain.cells):
        indices.append(seed)
    elif residual:
        raise ConsistencyError(f"peel left {len(residual)} cells outside the seed sphere")
    return _finish(z, basis, indices, Method.PEEL)


def decompose(z: Chain, basis: SphereBasis | None = None) -> DecompositionResult:
    if z.ambient.is_cube:
        return cube_decompose(z, basis)
    return simplex_decompose(z, basis)


def oracle_decompose(z: Chain, basis: SphereBasis) -> DecompositionResult:
    """Solve for z in the span of the basis chains over GF(2)."""
    if z.ambient != basis.ambient or z.k != basis.k:
        raise DomainError(f"chain in {z.ambient} dim {z.k} does not match basis {basis.ambient} dim {basis.k}")
    x, residual = gf2.reduce(basis.column_matrix(), z.indicator())
    indices = tuple(int(i) for i in x.nonzero()[0])
    return DecompositionResult(indices, Chain.from_indicator(z.ambient, z.k, residual), Method.SOLVE)


def sample_combination(basis: SphereBasis, rng: random.Random) -> tuple[tuple[int, ...], Chain]:
    """A uniformly random subset of the basis and its mod-2 sum."""
    indices = tuple(i for i in range(len(basis)) if rng.random() < 0.5)
    return indices, basis.sum_of(indices)


@dataclass(frozen=True)
class SurfaceReport:
    squares: int
    edge_degrees: dict[int, int]
    connected: bool
    euler_characteristic: int
    betti: tuple[int, ...]

    @property
    def closed_surface(self) -> bool:
        return set(self.edge_degrees) == {2}

    @property
    def torus_profile(self) -> bool:
        return (
            self.closed_surface
            and self.connected
            and self.euler_characteristic == 0
            and self.betti == (1, 2, 1)
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "squares": self.squares,
            "edge_degrees": {str(d): c for d, c in sorted(self.edge_degrees.items())},
            "closed_surface": self.closed_surface,
            "connected": self.connected,
            "euler_characteristic": self.euler_characteristic,
            "betti": list(self.betti),
        }


def surface_report(z: Chain) -> SurfaceReport:
    """Edge-degree census and Z2 invariants of a 2-chain's closure."""
    if z.k != 2:
        raise DomainError(f"surface report needs a 2-chain, got dimension {z.k}")
    complex_ = closure(z)
    incidence: dict[Cell, int] = {edge: 0 for edge in complex_.of_dim(1)}
    for square in z:
        for edge in faces(square, 1):
            incidence[edge] += 1
    degrees: dict[int, int] = defaultdict(int)
    for count in incidence.values():
        degrees[count] += 1
    return SurfaceReport(
        squares=len(z),
        edge_degrees=dict(degrees),
        connected=complex_.is_connected(),
        euler_characteristic=euler_characteristic(complex_),
        betti=betti_profile(complex_),
    )


@dataclass(frozen=True)
class TorusResult:
    chain: Chain
    decomposition: DecompositionResult
    excluded: tuple[int, ...]
    opposite_pair: tuple[int, int] | None
    pair_search_hits: int
    surface: SurfaceReport

    def to_json(self) -> dict[str, Any]:
        return {
            "chain": self.chain.to_json(),
            "decomposition": self.decomposition.to_json(),
            "excluded": list(self.excluded),
            "opposite_pair": list(self.opposite_pair) if self.opposite_pair else None,
            "pair_search_hits": self.pair_search_hits,
            "surface": self.surface.to_json(),
            # Z2 invariants do not tell a torus from a Klein bottle.
            "orientability": "undecided",
        }


def torus_build() -> TorusResult:
    """Find a toroidal sum of B(4,2) spheres by excluding elements.

    The two-element exclusions are tried first. When none of them leaves a
    torus the excluded set grows until one does.
    """
    basis = cube_basis(4, 2)
    everything = range(len(basis))
    pair_hits = 0
    found: tuple[tuple[int, ...], Chain, SurfaceReport] | None = None
    for size in range(2, len(basis)):
        for excluded in combinations(everything, size):
            chosen = [i for i in everything if i not in excluded]
            z = basis.sum_of(chosen)
            if not z:
                continue
            report = surface_report(z)
            if not report.torus_profile:
                continue
            if size == 2:
                pair_hits += 1
            if found is None:
                found = (excluded, z, report)
        if size == 2 and pair_hits == 0:
            logger.warning("no two-element exclusion of B(4,2) sums to a torus; widening the search")
        if found is not None:
            break
    if found is None:
        raise ConsistencyError("no sum of B(4,2) spheres has the torus profile")
    excluded, z, report = found
    decomposition = cube_decompose(z, basis)
    opposite = next(
        (
            (a, b)
            for a, b in combinations(excluded, 2)
            if not basis[a].chain.members & basis[b].chain.members
        ),
        None,
    )
    logger.info("torus from excluding %s (%d squares)", excluded, len(z))
    return TorusResult(z, decomposition, excluded, opposite, pair_hits, report)


def _collapse(complex_: CellComplex) -> set[Cell]:
    """Greedy elementary collapses; returns whatever survives."""
    cells = set(complex_.cells)
    cofacets: dict[Cell, set[Cell]] = {c: set() for c in cells}
    for cell in cells:
        if cell.dim > 0:
            for face in faces(cell, cell.dim - 1):
                cofacets[face].add(cell)
    progress = True
    while progress:
        progress = False
        for face in sorted(cells, key=lambda c: c.sort_key()):
            if face not in cells or len(cofacets[face]) != 1:
                continue
            (coface,) = cofacets[face]
            cells.discard(face)
            cells.discard(coface)
            for sub in faces(coface, coface.dim - 1):
                cofacets[sub].discard(coface)
            if face.dim > 0:
                for sub in faces(face, face.dim - 1):
                    cofacets[sub].discard(face)
            progress = True
    return cells


def is_ball_proxy(cells: frozenset[Cell] | set[Cell], ambient: Ambient, k: int) -> bool:
    """Stand-in test for "this intersection is a k-ball".

    k = 1: the edges form one simple path. k >= 2: the closure is pure, connected,
    collapses to a point greedily and has no Z2 homology above degree 0.
    """
    if not cells:
        return False
    if k == 1:
        g = nx.Graph()
        for edge in cells:
            a, b = faces(edge, 0)
            g.add_edge(a, b)
        return nx.is_tree(g) and max(d for _, d in g.degree) <= 2
    complex_ = closure(Chain.of(ambient, k, cells))
    if not complex_.is_pure() or not complex_.is_connected():
        return False
    if len(_collapse(complex_)) != 1:
        return False
    return all(b == 0 for b in betti_profile(complex_)[1:])


class SearchStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SumOrder:
    status: SearchStatus
    order: tuple[int, ...] | None
    nodes: int

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "order": list(self.order) if self.order is not None else None,
            "nodes": self.nodes,
        }


class _BudgetExhausted(Exception):
    pass


def connected_sum_order(
    z: Chain,
    indices: tuple[int, ...] | list[int] | set[int],
    basis: SphereBasis,
    node_budget: int | None = None,
) -> SumOrder:
    """Order the summands so each meets the running sum in a ball.

    Depth-first with backtracking; candidates are tried in index order and
    dead subsets are remembered. Running out of budget is reported as
    inconclusive, not as failure.
    """
    wanted = tuple(sorted(set(indices)))
    if basis.sum_of(wanted) != z:
        raise DomainError("the given basis elements do not sum to the chain")
    budget = settings.NODE_BUDGET if node_budget is None else node_budget
    chains = {i: basis[i].chain.members for i in wanted}
    ambient, k = basis.ambient, basis.k
    proxy_cache: dict[frozenset[Cell], bool] = {}
    dead: set[frozenset[int]] = set()
    nodes = 0

    def meets_in_ball(cells: frozenset[Cell]) -> bool:
        if cells not in proxy_cache:
            proxy_cache[cells] = is_ball_proxy(cells, ambient, k)
        return proxy_cache[cells]

    def extend(used: tuple[int, ...], partial: frozenset[Cell]) -> tuple[int, ...] | None:
        nonlocal nodes
        if len(used) == len(wanted):
            return used
        key = frozenset(used)
        if key in dead:
            return None
        for i in wanted:
            if i in key:
                continue
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            if used and not meets_in_ball(partial & chains[i]):
                continue
            following = partial ^ chains[i]
            if not is_cycle(Chain.of(ambient, k, following)):
                raise ConsistencyError(f"partial sum after {used + (i,)} is not a cycle")
            result = extend(used + (i,), following)
            if result is not None:
                return result
        dead.add(key)
        return None

    try:
        order = extend((), frozenset())
    except _BudgetExhausted:
        logger.warning("connected-sum search gave up after %d nodes", budget)
        return SumOrder(SearchStatus.INCONCLUSIVE, None, nodes)
    if order is None:
        return SumOrder(SearchStatus.FAILED, None, nodes)
    return SumOrder(SearchStatus.VERIFIED, order, nodes)


@dataclass
class RobustReport:
    family: Family
    n: int
    k: int
    total: int = 0
    verified: int = 0
    failed: int = 0
    inconclusive: int = 0
    failures: list[str] = field(default_factory=list)
    experimental: bool = False

    @property
    def all_verified(self) -> bool:
        return self.total == self.verified

    def tally(self, z: Chain, order: SumOrder) -> None:
        self.total += 1
        if order.status is SearchStatus.VERIFIED:
            self.verified += 1
            return
        if order.status is SearchStatus.FAILED:
            self.failed += 1
        else:
            self.inconclusive += 1
        self.failures.append(str(z))

    def to_json(self) -> dict[str, Any]:
        return {
            "family": self.family.value,
            "n": self.n,
            "k": self.k,
            "total": self.total,
            "verified": self.verified,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "failures": self.failures,
            "experimental": self.experimental,
            "ball_proxy": "simple path" if self.k == 1 else "pure, connected, collapsible, acyclic",
        }


def complete_graph_cycles(n: int) -> list[Chain]:
    """Every cycle of the complete graph on vertices 1..n+1 as a 1-chain of Δ_n."""
    ambient = Ambient.simplex(n)
    graph = nx.complete_graph(range(1, n + 2))
    chains = []
    for cycle in nx.simple_cycles(graph):
        edges = (
            SimplexCell(tuple(sorted((a, b))))
            for a, b in zip(cycle, cycle[1:] + cycle[:1])
        )
        chains.append(Chain.of(ambient, 1, edges))
    return sorted(chains, key=lambda c: (len(c), [e.sort_key() for e in c]))


def _order_for(z: Chain, basis: SphereBasis, node_budget: int | None) -> SumOrder:
    result = decompose(z, basis)
    return connected_sum_order(z, result.basis_indices, basis, node_budget)


def robust_check_all(
    n: int,
    node_budget: int | None = None,
    max_n: int | None = None,
    workers: int | None = None,
    progress: bool = False,
) -> RobustReport:
    """Search a robust ordering for every cycle of K_{n+1} over B'(n,1)."""
    bound = settings.MAX_ROBUST_N if max_n is None else max_n
    if n > bound:
        raise SizeGuardError("n", n, bound)
    if n < 2:
        raise DomainError(f"K_{n + 1} has no cycles")
    basis = simplex_basis(n, 1)
    cycles = complete_graph_cycles(n)
    orders = thread_map(
        lambda z: _order_for(z, basis, node_budget),
        cycles,
        max_workers=workers or settings.WORKERS,
        desc=f"K_{n + 1} cycles",
        disable=not progress,
    )
    report = RobustReport(Family.SIMPLEX, n, 1)
    for z, order in zip(cycles, orders):
        report.tally(z, order)
    logger.info("K_%d: %d/%d cycles ordered", n + 1, report.verified, report.total)
    return report


def connected_sum_sample(
    n: int,
    k: int = 1,
    samples: int = 20,
    seed: int | None = None,
    node_budget: int | None = None,
    max_n: int | None = None,
) -> RobustReport:
    """Experimental connected-sum search on random cycles of the cube skeleton."""
    check_size(Ambient.cube(n), max_n)
    basis = cube_basis(n, k)
    rng = random.Random(settings.SEED if seed is None else seed)
    report = RobustReport(Family.CUBE, n, k, experimental=True)
    for _ in range(samples):
        indices, z = sample_combination(basis, rng)
        report.tally(z, connected_sum_order(z, indices, basis, node_budget))
    return report


def off_text(z: Chain) -> str:
    """The squares of a cube 2-chain in (n)OFF form; vertices are 0/1 tuples."""
    if not z.ambient.is_cube or z.k != 2:
        raise DomainError("OFF export needs a 2-chain in a cube")
    complex_ = closure(z)
    vertices = complex_.of_dim(0)
    index = {v: i for i, v in enumerate(vertices)}
    edges = len(complex_.of_dim(1))
    n = z.ambient.n
    lines = ["OFF"] if n == 3 else ["nOFF", str(n)]
    lines.append(f"{len(vertices)} {len(z)} {edges}")
    for vertex in vertices:
        assert isinstance(vertex, CubeCell)
        lines.append(" ".join(str(x) for x in vertex.coordinates()))
    for square in z:
        assert isinstance(square, CubeCell)
        corners = [index[c] for c in cube_vertex_cycle(square)]
        lines.append("4 " + " ".join(str(i) for i in corners))
    return "\n".join(lines) + "\n"
