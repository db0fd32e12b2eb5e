import itertools

import pytest

from toric_real.errors import InvalidFan, NotACone, NotComplete
from toric_real.fan import (
        Fan, cone_coefficients, is_complete, is_fano, minimal_chern,
        minimal_cone_containing, primitive_collections, star_fan, validate_fan)
from toric_real.presets import builtin_geometry


BUILTINS = ['cp:1', 'cp:2', 'cp:3', 'cp1xcp1', 'blowup-cp2']


def blowup():
    return builtin_geometry('blowup-cp2').fan


def hirzebruch(a):
    return Fan(dim=2, rays=[(1, 0), (0, 1), (-1, a), (0, -1)], max_cones=[(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.mark.parametrize('name', BUILTINS)
def test_builtins_valid_and_complete(name):
    fan = builtin_geometry(name).fan
    report = validate_fan(fan)

    assert report.valid
    assert report.smooth
    assert report.complete
    assert report.failures == []
    assert is_complete(fan)


def test_overlapping_cones_are_rejected():
    fan = Fan(dim=2, rays=[(1, 0), (0, 1), (1, 1)], max_cones=[(0, 1), (0, 2)])
    report = validate_fan(fan)

    assert report.smooth
    assert not report.valid
    assert any('overlap' in f and '[0, 1]' in f and '[0, 2]' in f for f in report.failures)


def test_non_smooth_cone():
    fan = Fan(dim=2, rays=[(1, 0), (1, 2)], max_cones=[(0, 1)])
    report = validate_fan(fan)

    assert not report.smooth
    assert not report.valid


def test_non_primitive_ray():
    fan = Fan(dim=2, rays=[(2, 0), (0, 1)], max_cones=[(0, 1)])
    report = validate_fan(fan)

    assert not report.smooth
    assert any('not primitive' in f for f in report.failures)


def test_unused_ray():
    fan = Fan(dim=2, rays=[(1, 0), (0, 1), (-1, -1)], max_cones=[(0, 1)])
    report = validate_fan(fan)

    assert not report.valid
    assert any('ray 2' in f for f in report.failures)


def test_incomplete_fan():
    fan = Fan(dim=2, rays=[(1, 0), (0, 1)], max_cones=[(0, 1)])

    assert fan.report.valid
    assert not is_complete(fan)
    assert minimal_cone_containing(fan, (-1, 0)) is None
    with pytest.raises(NotComplete):
        minimal_chern(fan)


def test_invalid_fan_raises_in_operations():
    fan = Fan(dim=2, rays=[(1, 0), (1, 2)], max_cones=[(0, 1)])

    with pytest.raises(InvalidFan):
        primitive_collections(fan)


def test_round_trip_dict():
    fan = blowup()

    assert Fan.from_dict(fan.to_dict()) == fan


##################################################
# Invariants
##################################################


@pytest.mark.parametrize('n', [1, 2, 3])
def test_minimal_chern_cp(n):
    assert minimal_chern(builtin_geometry(f'cp:{n}').fan) == n + 1


def test_minimal_chern_surfaces():
    assert minimal_chern(builtin_geometry('cp1xcp1').fan) == 2
    assert minimal_chern(blowup()) == 1


def test_primitive_collections():
    assert primitive_collections(blowup()) == [(0, 2), (1, 3)]
    assert primitive_collections(builtin_geometry('cp:2').fan) == [(0, 1, 2)]
    assert primitive_collections(builtin_geometry('cp1xcp1').fan) == [(0, 1), (2, 3)]


def _permuted(fan, order):
    """ The same fan with ray order[k] renumbered k """
    position = {old: new for new, old in enumerate(order)}
    return Fan(dim=fan.dim, rays=[fan.rays[i] for i in order], max_cones=[[position[i] for i in c] for c in fan.max_cones])


def _sheared(fan):
    """ Rays under the unimodular map e_1 -> e_1, e_k -> e_k + e_1 """
    rays = [(r[0] + sum(r[1:]),) + tuple(r[1:]) for r in fan.rays]
    return Fan(dim=fan.dim, rays=rays, max_cones=fan.max_cones)


@pytest.mark.parametrize('name', BUILTINS)
def test_minimal_chern_invariant_under_relabelling(name):
    fan = builtin_geometry(name).fan
    expected = minimal_chern(fan)

    assert minimal_chern(_permuted(fan, list(reversed(range(fan.num_rays))))) == expected
    assert minimal_chern(_permuted(fan, list(range(1, fan.num_rays)) + [0])) == expected
    assert minimal_chern(_sheared(fan)) == expected
    assert _sheared(fan).report.valid


@pytest.mark.parametrize('name', BUILTINS + ['hirzebruch-2'])
def test_every_non_face_contains_a_primitive_collection(name):
    fan = hirzebruch(2) if name == 'hirzebruch-2' else builtin_geometry(name).fan
    collections = [set(p) for p in primitive_collections(fan)]

    for r in range(fan.num_rays + 1):
        for subset in itertools.combinations(range(fan.num_rays), r):
            contains = any(p <= set(subset) for p in collections)
            assert contains != fan.is_cone(subset), subset


@pytest.mark.parametrize('name', BUILTINS)
def test_builtins_are_fano(name):
    assert is_fano(builtin_geometry(name).fan)


def test_hirzebruch_f2_is_not_fano():
    fan = hirzebruch(2)

    assert is_complete(fan)
    assert not is_fano(fan)


def test_minimal_cone_containing():
    fan = blowup()

    assert minimal_cone_containing(fan, (0, 0)) == ()
    assert minimal_cone_containing(fan, (1, 0)) == (0,)
    assert minimal_cone_containing(fan, (1, 1)) == (0, 1)
    assert minimal_cone_containing(fan, (-1, -2)) == (2, 3)
    assert minimal_cone_containing(fan, (1, -1)) == (0, 3)


def test_cone_coefficients():
    fan = blowup()

    assert cone_coefficients(fan, (2, 3), (-1, -2)) == {2: 1, 3: 1}
    with pytest.raises(NotACone):
        cone_coefficients(fan, (3,), (1, 0))


##################################################
# Star fans
##################################################


def test_star_fan_of_exceptional_divisor():
    star = star_fan(blowup(), (3,), extension=[(1, 1)])

    assert star.rays == (0, 2)
    assert star.quotient == ((1, 0),)
    assert star.fan.rays == ((1,), (-1,))
    assert set(star.fan.max_cones) == {(0,), (1,)}
    assert star.fan.report.complete
    assert star.project((0, -1)) == (0,)
    assert star.lift_cone((1,)) == (2,)


def test_star_fan_of_maximal_cone_is_a_point():
    star = star_fan(blowup(), (0, 1))

    assert star.fan.dim == 0
    assert star.rays == ()


def test_star_fan_not_a_cone():
    with pytest.raises(NotACone):
        star_fan(blowup(), (0, 2))
