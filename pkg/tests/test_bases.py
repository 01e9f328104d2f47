from itertools import permutations

import pytest

from sphere_bases.bases import (
    SphereBasis,
    basis_rank,
    build_basis,
    coverage_check,
    cube_basis,
    is_independent,
    level_census,
    private_faces_unique,
    simplex_basis,
)
from sphere_bases.cells import Ambient, CubeCell, Family, SimplexCell, faces
from sphere_bases.complex import SkeletonSpec, betti, is_cycle
from sphere_bases.counting import basis_card_simplex, s
from sphere_bases.errors import DomainError


def check_basis(family, n, k):
    basis = build_basis(family, n, k)
    assert all(is_cycle(e.chain) for e in basis)
    assert is_independent(basis)
    assert len(basis) == betti(SkeletonSpec(Ambient(family, n), k), k)
    assert coverage_check(basis)
    assert private_faces_unique(basis)


class TestSizes:
    @pytest.mark.parametrize("n, k, size", [(3, 2, 1), (4, 2, 7), (5, 2, 31), (5, 1, 49), (4, 1, 17)])
    def test_cube(self, n, k, size):
        assert len(cube_basis(n, k)) == size == s(n, k)

    @pytest.mark.parametrize("n, k, size", [(4, 2, 4), (5, 1, 10), (3, 2, 1), (7, 6, 1)])
    def test_simplex(self, n, k, size):
        assert len(simplex_basis(n, k)) == size == basis_card_simplex(n, k)

    @pytest.mark.parametrize("n, k", [(3, 0), (3, 3), (1, 1)])
    def test_out_of_range(self, n, k):
        with pytest.raises(DomainError):
            cube_basis(n, k)
        with pytest.raises(DomainError):
            simplex_basis(n, k)


class TestStructure:
    def test_cube_order(self):
        basis = cube_basis(4, 2)
        assert [str(e.generator) for e in basis] == ["***0", "0***", "1***", "*0**", "*1**", "**0*", "**1*"]
        assert basis[0].seed and not any(e.seed for e in basis.elements[1:])
        assert [e.level for e in basis] == [3, 3, 3, 3, 3, 3, 3]

    def test_seed_private_face_is_first_face(self):
        basis = cube_basis(4, 2)
        assert basis[0].private_face == CubeCell("0**0")
        assert basis[0].private_face == min(faces(CubeCell("***0"), 2), key=CubeCell.sort_key)

    def test_attached_private_face(self):
        basis = cube_basis(5, 2)
        element = basis[basis.index_of_generator(CubeCell("0*0**"))]
        assert element.level == 4
        assert element.private_face == CubeCell("0*0*1")

    def test_simplex_elements_cone_to_vertex_one(self):
        basis = simplex_basis(4, 2)
        assert [e.generator for e in basis] == [
            SimplexCell((1, 2, 3, 4)),
            SimplexCell((1, 2, 3, 5)),
            SimplexCell((1, 2, 4, 5)),
            SimplexCell((1, 3, 4, 5)),
        ]
        assert basis[0].private_face == SimplexCell((2, 3, 4))
        assert all(len(e.chain) == 4 for e in basis)

    def test_unknown_generator(self):
        with pytest.raises(DomainError):
            cube_basis(4, 2).index_of_generator(CubeCell("*0*1"))

    def test_census(self):
        assert level_census(cube_basis(5, 2)) == {3: 6, 4: 24}
        assert level_census(cube_basis(3, 2)) == {}

    def test_private_faces(self):
        for n, k in [(4, 1), (5, 2), (6, 3)]:
            assert private_faces_unique(cube_basis(n, k))
            assert private_faces_unique(simplex_basis(n, k))


class TestCoverage:
    def test_complete(self):
        assert coverage_check(cube_basis(4, 2))
        assert coverage_check(simplex_basis(4, 2))

    def test_dropping_an_attached_sphere_uncovers_its_private_face(self):
        basis = cube_basis(4, 2)
        assert not coverage_check(basis.without(len(basis) - 1))

    def test_dropping_a_simplex_sphere(self):
        assert not coverage_check(simplex_basis(4, 2).without(0))


class TestRank:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_cube(self, n):
        for k in range(1, n):
            check_basis(Family.CUBE, n, k)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_simplex(self, n):
        for k in range(1, n):
            check_basis(Family.SIMPLEX, n, k)

    @pytest.mark.slow
    @pytest.mark.parametrize("family, n, k", [(Family.CUBE, 7, k) for k in range(1, 7)] + [(Family.CUBE, 8, 2)])
    def test_large_cube(self, family, n, k):
        check_basis(family, n, k)

    @pytest.mark.slow
    def test_large_simplex(self):
        for k in range(1, 9):
            check_basis(Family.SIMPLEX, 9, k)

    def test_dependent_after_duplicating(self):
        basis = cube_basis(4, 2)
        doubled = SphereBasis(basis.spec, basis.elements + basis.elements[:1])
        assert basis_rank(doubled) == 7
        assert not is_independent(doubled)


class TestSymmetry:
    @pytest.mark.parametrize("n, k", [(5, 2), (6, 2), (5, 3)])
    def test_invariant_under_leading_coordinates(self, n, k):
        basis = cube_basis(n, k)
        chains = {e.chain.members for e in basis}
        for perm in permutations(range(k + 1)):

            def move(cell):
                word = list(cell.word)
                head = [word[p] for p in perm]
                return CubeCell("".join(head + word[k + 1 :]))

            assert {frozenset(move(c) for c in chain) for chain in chains} == chains


class TestSerialization:
    def test_json_round_trip(self):
        for basis in (cube_basis(5, 2), simplex_basis(5, 2)):
            restored = SphereBasis.from_json(basis.to_json())
            assert restored == basis
            assert restored.content_hash() == basis.content_hash()

    def test_hash_depends_on_content(self):
        basis = cube_basis(4, 2)
        assert basis.content_hash() != basis.without(0).content_hash()
