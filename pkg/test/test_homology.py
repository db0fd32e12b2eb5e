import itertools

import pytest

from toric_real.errors import NotACone, NotACurveClass, WrongLength
from toric_real.fan import Fan
from toric_real.homology import (
        CACHE_SIZE, HomologyClass, chern_pairing, divisor_class, divisor_expansion,
        fundamental_class, homology_ring, intersection_product, point_class,
        poincare_ranks)
from toric_real.presets import builtin_geometry


def basis_of(name):
    return homology_ring(builtin_geometry(name).fan)[1]


@pytest.mark.parametrize('name, ranks', [
    ('cp:1', [1, 0, 1]),
    ('cp:2', [1, 0, 1, 0, 1]),
    ('cp:3', [1, 0, 1, 0, 1, 0, 1]),
    ('cp1xcp1', [1, 0, 2, 0, 1]),
    ('blowup-cp2', [1, 0, 2, 0, 1]),
])
def test_poincare_ranks(name, ranks):
    basis = basis_of(name)

    assert poincare_ranks(basis) == ranks
    assert basis.total_rank == len(builtin_geometry(name).fan.max_cones)


def test_presentation_of_cp2():
    pres, basis = homology_ring(builtin_geometry('cp:2').fan)

    assert pres.num_generators == 3
    assert pres.sr_generators == ((0, 1, 2),)
    assert pres.eliminated_cone == (0, 1)
    assert pres.free_variables == (2,)
    # x1 = x2 = x3 mod 2
    assert pres.substitution == {0: (1,), 1: (1,)}


def test_cp2_hyperplane_powers():
    basis = basis_of('cp:2')
    h = divisor_class(basis, 0)
    h2 = intersection_product(basis, h, h)
    h3 = intersection_product(basis, h2, h)

    assert h.degree == 2
    assert h2 == point_class(basis)
    assert basis.name(h2) == '[pt]'
    assert h3.degree < 0
    assert not h3
    assert basis.name(h3) == '0'


def test_all_divisors_of_cp2_agree():
    basis = basis_of('cp:2')

    assert divisor_class(basis, 0) == divisor_class(basis, 1) == divisor_class(basis, 2)


def test_cp1xcp1_products():
    basis = basis_of('cp1xcp1')
    A = divisor_class(basis, 0)
    B = divisor_class(basis, 2)

    assert A == divisor_class(basis, 1)
    assert A != B
    assert intersection_product(basis, A, B) == point_class(basis)
    assert not intersection_product(basis, A, A)
    assert not intersection_product(basis, B, B)


def test_blowup_products():
    basis = basis_of('blowup-cp2')
    D = [divisor_class(basis, i) for i in range(4)]

    # Adjacent rays meet in a point, the exceptional divisor has odd self-intersection
    assert intersection_product(basis, D[0], D[3]) == point_class(basis)
    assert intersection_product(basis, D[3], D[3]) == point_class(basis)
    assert not intersection_product(basis, D[1], D[3])
    assert not intersection_product(basis, D[0], D[2])


def test_fundamental_class_is_unit():
    basis = basis_of('blowup-cp2')
    X = fundamental_class(basis)

    for c in basis.classes():
        assert intersection_product(basis, X, c) == c
    assert basis.name(X, '[CP^2#]') == '[CP^2#]'


@pytest.mark.parametrize('name', ['cp:2', 'cp:3', 'cp1xcp1', 'blowup-cp2'])
def test_intersection_product_commutative_associative(name):
    basis = basis_of(name)
    classes = basis.classes()

    for a, b in itertools.product(classes, repeat=2):
        assert intersection_product(basis, a, b) == intersection_product(basis, b, a)
    for a, b, c in itertools.product(classes, repeat=3):
        left = intersection_product(basis, intersection_product(basis, a, b), c)
        right = intersection_product(basis, a, intersection_product(basis, b, c))
        if left.degree < 0:
            assert right.degree < 0 and not left and not right
        else:
            assert left == right


@pytest.mark.parametrize('name', ['cp:1', 'cp:2', 'cp:3', 'cp1xcp1', 'blowup-cp2'])
def test_linear_relations_vanish(name):
    fan = builtin_geometry(name).fan
    basis = homology_ring(fan)[1]
    degree = 2 * fan.dim - 2

    for m in itertools.product(range(-1, 2), repeat=fan.dim):
        total = basis.zero(degree)
        for i, ray in enumerate(fan.rays):
            if sum(a * b for a, b in zip(m, ray)) % 2:
                total = total + divisor_class(basis, i)
        assert not total, m


def test_add_classes():
    basis = basis_of('cp1xcp1')
    A = divisor_class(basis, 0)
    B = divisor_class(basis, 2)

    assert not (A + A)
    assert basis.name(A + B) in ('D2 + D4', 'D4 + D2')
    with pytest.raises(ValueError):
        A + point_class(basis)


def test_monomial_names():
    basis = basis_of('cp:3')

    assert [basis.name(c) for c in basis.classes()] == ['[X]', 'D4', 'D4^2', '[pt]']


##################################################
# Chern pairing and divisor expansions
##################################################


def test_chern_pairing():
    fan = builtin_geometry('blowup-cp2').fan

    assert chern_pairing(fan, (1, 0, 1, -1)) == 1
    assert chern_pairing(fan, (1, 1, 1, 0)) == 3
    assert chern_pairing(fan, (0, 1, 0, 1)) == 2
    with pytest.raises(NotACurveClass):
        chern_pairing(fan, (1, 0, 0, 0))
    with pytest.raises(WrongLength):
        chern_pairing(fan, (1, 1, 1))


def test_divisor_expansion_with_extension():
    fan = builtin_geometry('blowup-cp2').fan
    expansion = divisor_expansion(fan, (3,), extension=[(1, 1)])

    assert expansion.pairing(3, 0) == 1
    assert expansion.pairing(3, 1) == -1
    assert expansion.pairing(3, 2) == 0


def test_divisor_expansion_not_a_cone():
    fan = builtin_geometry('blowup-cp2').fan

    with pytest.raises(NotACone):
        divisor_expansion(fan, (1, 3))


def test_homology_class_bool():
    assert not HomologyClass(0, (0,))
    assert HomologyClass(0, (1,))


def test_ring_cache_is_bounded():
    for k in range(CACHE_SIZE + 4):
        # CP^2 in the lattice basis (1,0), (k,1)
        fan = Fan(dim=2, rays=[(1, 0), (k, 1), (-1 - k, -1)], max_cones=[(0, 1), (1, 2), (0, 2)])
        assert homology_ring(fan)[1].total_rank == 3

    assert homology_ring.cache_info().maxsize == CACHE_SIZE
    assert homology_ring.cache_info().currsize <= CACHE_SIZE
