import pytest

from sphere_bases.bases import build_basis, cube_basis, simplex_basis
from sphere_bases.cells import Ambient, CubeCell, Family, SimplexCell
from sphere_bases.complex import Chain, SkeletonSpec, betti, boundary
from sphere_bases.decompose import (
    Method,
    SearchStatus,
    complete_graph_cycles,
    connected_sum_order,
    connected_sum_sample,
    cube_decompose,
    decompose,
    is_ball_proxy,
    off_text,
    oracle_decompose,
    robust_check_all,
    sample_combination,
    simplex_decompose,
    surface_report,
    torus_build,
)
from sphere_bases.errors import DomainError, NotACycleError, SizeGuardError

from .helpers import cube_chain, simplex_chain


ROUND_TRIP_CASES = [
    (Family.CUBE, 4, 2),
    (Family.CUBE, 5, 2),
    (Family.CUBE, 5, 3),
    (Family.CUBE, 6, 2),
    (Family.SIMPLEX, 5, 2),
    (Family.SIMPLEX, 6, 2),
    (Family.SIMPLEX, 6, 3),
]


class TestSimplex:
    def test_single_element(self):
        basis = simplex_basis(4, 2)
        z = boundary(simplex_chain(4, 3, [(1, 3, 4, 5)]))
        result = simplex_decompose(z)
        assert result.basis_indices == (basis.index_of_generator(SimplexCell((1, 3, 4, 5))),)
        assert result.method is Method.CONE
        assert result.success

    def test_sphere_avoiding_vertex_one(self):
        basis = simplex_basis(4, 2)
        z = boundary(simplex_chain(4, 3, [(2, 3, 4, 5)]))
        expected = sorted(
            basis.index_of_generator(SimplexCell(g))
            for g in [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5)]
        )
        assert list(decompose(z).basis_indices) == expected

    def test_empty(self):
        assert decompose(Chain.zero(Ambient.simplex(4), 2)).basis_indices == ()

    def test_not_a_cycle(self):
        with pytest.raises(NotACycleError) as info:
            decompose(simplex_chain(4, 2, [(1, 2, 3)]))
        assert info.value.face == SimplexCell((1, 2))

    def test_wrong_family(self):
        with pytest.raises(DomainError):
            simplex_decompose(cube_chain(4, 2, ["**00"]))


class TestCube:
    def test_whole_cube_boundary(self):
        z = boundary(cube_chain(4, 4, ["****"]))
        result = cube_decompose(z)
        assert result.basis_indices == (0,)
        assert result.method is Method.PEEL

    def test_single_attached_sphere(self):
        basis = cube_basis(5, 2)
        index = basis.index_of_generator(CubeCell("1*0**"))
        assert cube_decompose(basis[index].chain).basis_indices == (index,)

    def test_seed_only(self):
        assert cube_decompose(cube_basis(4, 2)[0].chain).basis_indices == (0,)

    def test_not_a_cycle(self):
        with pytest.raises(NotACycleError):
            cube_decompose(cube_chain(4, 2, ["**00"]))

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            cube_decompose(Chain.zero(Ambient.cube(3), 3))


class TestRoundTrip:
    @pytest.mark.parametrize("family, n, k", ROUND_TRIP_CASES)
    def test_random_sums(self, rng, family, n, k):
        basis = build_basis(family, n, k)
        bound = betti(SkeletonSpec(basis.ambient, k), k)
        for _ in range(100):
            chosen, z = sample_combination(basis, rng)
            result = decompose(z, basis)
            assert result.basis_indices == chosen
            assert len(result.basis_indices) <= bound
            assert oracle_decompose(z, basis).basis_indices == chosen


class TestOracle:
    def test_element(self):
        basis = cube_basis(4, 2)
        result = oracle_decompose(basis[4].chain, basis)
        assert result.basis_indices == (4,)
        assert result.success
        assert result.method is Method.SOLVE

    def test_not_in_span(self):
        basis = cube_basis(4, 2)
        z = cube_chain(4, 2, ["**00"])
        result = oracle_decompose(z, basis)
        assert not result.success
        assert basis.sum_of(result.basis_indices) + result.residual == z

    def test_mismatched_basis(self):
        with pytest.raises(DomainError):
            oracle_decompose(cube_basis(4, 2)[0].chain, cube_basis(5, 2))


@pytest.fixture(scope="module")
def torus():
    return torus_build()


class TestTorus:
    def test_profile(self, torus):
        surface = torus.surface
        assert surface.squares == 16
        assert surface.edge_degrees == {2: 32}
        assert surface.connected
        assert surface.euler_characteristic == 0
        assert surface.betti == (1, 2, 1)
        assert surface.torus_profile

    def test_exclusions(self, torus):
        assert torus.pair_search_hits == 0
        assert torus.excluded == (0, 1, 2)
        assert torus.opposite_pair == (1, 2)
        basis = cube_basis(4, 2)
        assert not basis[1].chain.members & basis[2].chain.members

    def test_decomposition(self, torus):
        assert torus.decomposition.basis_indices == (3, 4, 5, 6)
        assert oracle_decompose(torus.chain, cube_basis(4, 2)).basis_indices == (3, 4, 5, 6)

    def test_json(self, torus):
        payload = torus.to_json()
        assert payload["orientability"] == "undecided"
        assert payload["surface"]["edge_degrees"] == {"2": 32}

    def test_off(self, torus):
        lines = off_text(torus.chain).splitlines()
        assert lines[:3] == ["nOFF", "4", "16 16 32"]
        assert len(lines) == 3 + 16 + 16
        assert all(line.startswith("4 ") for line in lines[-16:])

    def test_off_header_in_three_dimensions(self):
        lines = off_text(boundary(cube_chain(3, 3, ["***"]))).splitlines()
        assert lines[:2] == ["OFF", "8 6 12"]


class TestSurfaceReport:
    def test_cube_boundary_is_a_sphere(self):
        report = surface_report(cube_basis(3, 2)[0].chain)
        assert report.closed_surface
        assert report.euler_characteristic == 2
        assert report.betti == (1, 0, 1)
        assert not report.torus_profile

    def test_needs_squares(self):
        with pytest.raises(DomainError):
            surface_report(cube_basis(3, 1)[0].chain)


class TestBallProxy:
    def test_paths(self):
        ambient = Ambient.simplex(4)
        assert is_ball_proxy({SimplexCell((1, 2)), SimplexCell((2, 3))}, ambient, 1)
        assert not is_ball_proxy({SimplexCell((1, 2)), SimplexCell((3, 4))}, ambient, 1)
        triangle = {SimplexCell((1, 2)), SimplexCell((2, 3)), SimplexCell((1, 3))}
        assert not is_ball_proxy(triangle, ambient, 1)
        assert not is_ball_proxy(set(), ambient, 1)

    def test_discs(self):
        ambient = Ambient.cube(3)
        assert is_ball_proxy({CubeCell("**0")}, ambient, 2)
        assert is_ball_proxy({CubeCell("**0"), CubeCell("*0*")}, ambient, 2)
        assert not is_ball_proxy(set(cube_basis(3, 2)[0].chain), ambient, 2)


class TestConnectedSum:
    def test_singleton(self):
        basis = simplex_basis(4, 1)
        order = connected_sum_order(basis[0].chain, [0], basis)
        assert order.status is SearchStatus.VERIFIED
        assert order.order == (0,)

    def test_square_from_two_triangles(self):
        basis = simplex_basis(3, 1)
        z = simplex_chain(3, 1, [(1, 2), (2, 3), (3, 4), (1, 4)])
        result = decompose(z, basis)
        order = connected_sum_order(z, result.basis_indices, basis)
        assert order.status is SearchStatus.VERIFIED
        assert sorted(order.order) == list(result.basis_indices)

    def test_two_tetrahedra_sharing_a_triangle(self):
        basis = simplex_basis(4, 2)
        z = basis.sum_of([0, 1])
        order = connected_sum_order(z, [0, 1], basis)
        assert order.status is SearchStatus.VERIFIED
        assert order.order == (0, 1)

    def test_cube_sample_in_the_two_skeleton(self):
        report = connected_sum_sample(4, 2, samples=3, seed=5)
        assert report.total == 3
        assert report.verified + report.failed + report.inconclusive == 3
        assert report.to_json()["ball_proxy"] == "pure, connected, collapsible, acyclic"

    def test_cube_sample_size_guard(self):
        with pytest.raises(SizeGuardError):
            connected_sum_sample(6, 1, samples=1, max_n=5)

    def test_indices_must_sum_to_chain(self):
        basis = simplex_basis(4, 1)
        with pytest.raises(DomainError):
            connected_sum_order(basis[0].chain, [0, 1], basis)

    def test_budget_exhausted(self):
        basis = simplex_basis(4, 1)
        z = basis.sum_of([0, 4])
        order = connected_sum_order(z, [0, 4], basis, node_budget=0)
        assert order.status is SearchStatus.INCONCLUSIVE
        assert order.order is None

    def test_cube_sample_is_experimental(self):
        report = connected_sum_sample(3, 1, samples=5, seed=3)
        assert report.experimental
        assert report.total == 5
        assert report.to_json()["ball_proxy"] == "simple path"


class TestRobust:
    @pytest.mark.parametrize("n, count", [(2, 1), (3, 7), (4, 37), (5, 197)])
    def test_cycle_counts(self, n, count):
        assert len(complete_graph_cycles(n)) == count

    @pytest.mark.parametrize("n, count", [(3, 7), (4, 37), (5, 197)])
    def test_every_cycle_has_an_ordering(self, n, count):
        report = robust_check_all(n)
        assert report.total == count
        assert report.all_verified
        assert report.failures == []

    def test_size_guard(self):
        with pytest.raises(SizeGuardError):
            robust_check_all(6)

    def test_too_small(self):
        with pytest.raises(DomainError):
            robust_check_all(1)
