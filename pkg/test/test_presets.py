import json
import os
from fractions import Fraction

import pytest

from toric_real.errors import ParseError, ValidationError
from toric_real.polytope import normal_fan
from toric_real.presets import (
        builtin_disc, builtin_geometry, disc_from_dict, disc_presets,
        geometry_from_dict, geometry_presets, resolve_geometry)

DATA = os.path.join(os.path.dirname(__file__), '..', 'data')


def test_cp_n_builtins():
    for n in range(1, 5):
        geometry = builtin_geometry(f'cp:{n}')
        assert geometry.fan.num_rays == n + 1
        assert len(geometry.fan.max_cones) == n + 1
        assert geometry.unit_name == f'[CP^{n}]'
        assert geometry.real_unit_name == f'[RP^{n}]'
    with pytest.raises(ValidationError):
        builtin_geometry('cp:0')


def test_blowup_inherits_from_square():
    presets = geometry_presets()
    blowup = presets['blowup-cp2']

    assert blowup['fan']['dim'] == 2
    assert blowup['fan']['rays'] == [[1, 0], [0, 1], [-1, -1], [0, -1]]
    assert blowup['fan']['max_cones'] == [[0, 1], [1, 2], [2, 3], [0, 3]]
    # offsets are merged from cp1xcp1
    assert [f['offset'] for f in blowup['polytope']['facets']] == [1, 1, 1, 1]


def test_unknown_builtin():
    with pytest.raises(ParseError):
        builtin_geometry('cp2')
    with pytest.raises(ParseError):
        builtin_disc('line')


def test_disc_presets():
    presets = disc_presets()

    assert presets['paper-disc']['fan'] == 'blowup-cp2'
    assert presets['paper-disc']['components'][2] == {'a': 1, 'real_roots': [1]}
    assert presets['paper-disc']['components'][3] == {'zero': True}
    geometry, lift = builtin_disc('cp2-line')
    assert geometry.name == 'cp:2'
    assert lift.degrees == (1, 1, 1)


def test_fan_only_uses_monotone_polytope():
    data = builtin_geometry('cp1xcp1').fan.to_dict()
    with pytest.warns(UserWarning):
        geometry = geometry_from_dict(data)

    assert geometry.polytope == builtin_geometry('cp1xcp1').polytope
    assert not geometry.fan_from_polytope


def test_polytope_only_uses_normal_fan():
    polytope = builtin_geometry('blowup-cp2').polytope
    geometry = geometry_from_dict(polytope.to_dict())

    assert geometry.fan == normal_fan(polytope)
    assert geometry.fan_from_polytope


def test_hirzebruch_file():
    with open(os.path.join(DATA, 'hirzebruch-f1.json')) as f:
        geometry = geometry_from_dict(json.load(f), name='F1')

    assert geometry.polytope.offsets == (0, 0, Fraction(2), 1)
    assert geometry.unit_name == '[F1]'
    assert geometry.real_unit_name == '[R]'
    assert geometry.fan == builtin_geometry('blowup-cp2').fan


@pytest.mark.parametrize('data', [{}, {'fan': {'rays': [[1]]}}, {'polytope': {'dim': 1}}])
def test_malformed_geometry(data):
    with pytest.raises(ParseError):
        geometry_from_dict(data)


def test_resolve_geometry():
    cp1 = builtin_geometry('cp:1')
    data = {'fan': cp1.fan.to_dict(), 'polytope': cp1.polytope.to_dict()}

    assert resolve_geometry('cp:1').name == 'cp:1'
    assert resolve_geometry(data).name == 'custom'
    assert resolve_geometry(data, name='line').fan == cp1.fan
    with pytest.raises(ParseError):
        resolve_geometry(3)


def test_disc_needs_a_fan():
    with pytest.raises(ParseError):
        disc_from_dict({'components': [{'a': 1}]})
