"""
Builtin geometries and discs, and the loading of geometry/disc descriptions from JSON objects.
"""
import itertools
import re
import warnings
from dataclasses import dataclass
from typing import Optional

from toric_real.curves import RealDiscLift
from toric_real.errors import ParseError, ValidationError
from toric_real.fan import Fan
from toric_real.polytope import Polytope, monotone_polytope, normal_fan
from toric_real.utils import ConfigReplace, PresetConfigs


@dataclass(frozen=True)
class Geometry:
    name: str
    fan: Fan
    polytope: Polytope
    unit_name: str = '[X]'
    real_unit_name: str = '[R]'
    # True when the fan is the normal fan of a given polytope
    fan_from_polytope: bool = False


def cp_config(n: int) -> dict:
    """ CP^n: rays e_1, ..., e_n, -(e_1 + ... + e_n); the polytope is the standard simplex. """
    if n < 1:
        raise ValidationError(f'cp:{n} needs n >= 1', datum=n)
    rays = [[int(i == k) for k in range(n)] for i in range(n)] + [[-1] * n]
    return {
        'fan': {
            'dim': n,
            'rays': rays,
            'max_cones': [list(c) for c in itertools.combinations(range(n + 1), n)],
        },
        'polytope': {
            'dim': n,
            'facets': [{'normal': r, 'offset': 0} for r in rays[:-1]] + [{'normal': rays[-1], 'offset': 1}],
        },
        'unit_name': f'[CP^{n}]',
        'real_unit_name': f'[RP^{n}]',
    }


def geometry_presets() -> PresetConfigs:
    config = PresetConfigs()

    config.add('cp1xcp1', {
        'fan': {
            'dim': 2,
            'rays': [[1, 0], [-1, 0], [0, 1], [0, -1]],
            'max_cones': [[0, 2], [0, 3], [1, 2], [1, 3]],
        },
        'polytope': {
            'dim': 2,
            'facets': [
                {'normal': [1, 0], 'offset': 1},
                {'normal': [-1, 0], 'offset': 1},
                {'normal': [0, 1], 'offset': 1},
                {'normal': [0, -1], 'offset': 1},
            ],
        },
        'unit_name': '[X]',
        'real_unit_name': '[R]',
    })
    # CP^2 blown up at a point; D_4 is the exceptional divisor
    config.add_change('blowup-cp2', {
        'fan': {
            'rays': [[1, 0], [0, 1], [-1, -1], [0, -1]],
            'max_cones': ConfigReplace([[0, 1], [1, 2], [2, 3], [0, 3]]),
        },
        'polytope': {
            'facets': [
                {'normal': [1, 0]},
                {'normal': [0, 1]},
                {'normal': [-1, -1]},
                {'normal': [0, -1]},
            ],
        },
    })
    return config


def disc_presets() -> PresetConfigs:
    config = PresetConfigs()

    # u(z) = [z : 1 : 1 : 0] on the blow-up; u(infinity) lies on D_3
    config.add('paper-disc-original', {
        'fan': 'blowup-cp2',
        'components': [
            {'a': 1, 'real_roots': [0]},
            {'a': 1},
            {'a': 1},
            {'zero': True},
        ],
    })
    # u o phi for phi(z) = z / (z - 1): [z : 1 : z - 1 : 0]
    config.add_change('paper-disc', {
        'components': [
            {},
            {},
            {'a': 1, 'real_roots': [1]},
            {},
        ],
    })
    config.add('cp1-line', {
        'fan': 'cp:1',
        'components': [
            {'a': 1, 'real_roots': [0]},
            {'a': 1, 'real_roots': [1]},
        ],
    })
    config.add('cp2-line', {
        'fan': 'cp:2',
        'components': [
            {'a': 1, 'real_roots': [0]},
            {'a': 1, 'real_roots': [1]},
            {'a': 1, 'real_roots': [2]},
        ],
    })
    return config


def _builtin_config(name: str) -> dict:
    match = re.fullmatch(r'cp:(\d+)', name)
    if match:
        return cp_config(int(match.group(1)))
    presets = geometry_presets()
    if name not in presets:
        raise ParseError(f'Unknown builtin geometry {name!r}; expected one of cp:n, {", ".join(presets)}', datum=name)
    return presets[name]


def geometry_from_dict(data: dict, name: str = 'custom') -> Geometry:
    """
    Build a geometry from {"fan": ..., "polytope": ...}, a bare fan object or a bare polytope object.

    A polytope alone determines the fan as its normal fan. A fan alone is paired with its monotone polytope.
    """
    try:
        if 'facets' in data:
            data = {'polytope': data}
        elif 'rays' in data:
            data = {'fan': data}
        polytope = Polytope.from_dict(data['polytope']) if 'polytope' in data else None
        fan = Fan.from_dict(data['fan']) if 'fan' in data else None
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ValidationError):
            raise
        raise ParseError(f'Malformed geometry: {e}', datum=str(e)) from e
    if fan is None and polytope is None:
        raise ParseError('Geometry needs a "fan" or a "polytope"')
    if fan is None:
        fan = normal_fan(polytope)
    if polytope is None:
        warnings.warn(f'No polytope given for {name}; using the monotone polytope of the fan')
        polytope = monotone_polytope(fan)
    return Geometry(
        name=name,
        fan=fan,
        polytope=polytope,
        unit_name=data.get('unit_name', '[X]'),
        real_unit_name=data.get('real_unit_name', '[R]'),
        fan_from_polytope='fan' not in data,
    )


def builtin_geometry(name: str) -> Geometry:
    return geometry_from_dict(_builtin_config(name), name=name)


def resolve_geometry(source, name: Optional[str] = None) -> Geometry:
    """ A builtin name or a geometry object. """
    if isinstance(source, str):
        return builtin_geometry(source)
    if isinstance(source, dict):
        return geometry_from_dict(source, name=name or 'custom')
    raise ParseError(f'Cannot read a geometry from {source!r}', datum=str(source))


def disc_from_dict(data: dict, geometry: Optional[Geometry] = None):
    """ (geometry, lift) from a disc object {"fan": <builtin name or geometry object>, "components": [...]}. """
    if geometry is None:
        if 'fan' not in data:
            raise ParseError('Disc has no "fan" entry and no geometry was given')
        geometry = resolve_geometry(data['fan'])
    try:
        lift = RealDiscLift.from_dict(data)
    except (KeyError, TypeError) as e:
        raise ParseError(f'Malformed disc: {e}', datum=str(e)) from e
    return geometry, lift


def builtin_disc(name: str):
    presets = disc_presets()
    if name not in presets:
        raise ParseError(f'Unknown builtin disc {name!r}; expected one of {", ".join(presets)}', datum=name)
    return disc_from_dict(presets[name])
