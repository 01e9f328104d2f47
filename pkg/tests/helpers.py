from sphere_bases.cells import Ambient, CubeCell, SimplexCell
from sphere_bases.complex import Chain


def cube_chain(n, k, words):
    return Chain.of(Ambient.cube(n), k, (CubeCell(w) for w in words))


def simplex_chain(n, k, vertex_sets):
    return Chain.of(Ambient.simplex(n), k, (SimplexCell(tuple(vs)) for vs in vertex_sets))
