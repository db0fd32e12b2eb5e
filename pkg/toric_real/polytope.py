"""
Delzant polytopes {phi : <phi, v_i> >= -a_i} with exact rational data.

The moment map is the only floating point computation here.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from toric_real.errors import (
        EmptyPolytope, NotDelzant, NotFullDimensional, NotLattice,
        RedundantFacet, Unbounded, ValidationError, ZeroVector)
from toric_real.fan import Fan
from toric_real.lattice import IntVector, abs_det, fourier_motzkin_feasible, is_primitive, rank, solve_rational

logger = logging.getLogger(__name__)

# Tolerance of the vertex round trip through the moment map
MOMENT_TOLERANCE = 1e-9


def parse_rational(x) -> Fraction:
    """ Integers, Fractions and "p/q" strings are accepted. Floats are rejected so that all geometry stays exact. """
    if isinstance(x, bool) or isinstance(x, float):
        raise ValidationError(f'Expected an integer or a "p/q" string, got {x!r}', datum=x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ValidationError(f'Cannot parse rational number {x!r}', datum=x)
    raise ValidationError(f'Expected an integer or a "p/q" string, got {x!r}', datum=x)


def format_rational(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f'{x.numerator}/{x.denominator}'


@dataclass(frozen=True)
class Vertex:
    point: Tuple[Fraction, ...]
    active_facets: Tuple[int, ...]

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.point)

    def as_ints(self) -> IntVector:
        if not self.is_integral:
            raise NotLattice(f'Vertex {self.label()} is not integral', datum=self.label())
        return tuple(int(x) for x in self.point)

    def label(self) -> str:
        return '(' + ','.join(str(format_rational(x)) for x in self.point) + ')'


@dataclass(frozen=True)
class Polytope:
    dim: int
    normals: Tuple[IntVector, ...]
    offsets: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'normals', tuple(tuple(int(x) for x in v) for v in self.normals))
        object.__setattr__(self, 'offsets', tuple(parse_rational(a) for a in self.offsets))
        if len(self.normals) != len(self.offsets):
            raise ValidationError(f'{len(self.normals)} normals but {len(self.offsets)} offsets')
        for i, v in enumerate(self.normals):
            if len(v) != self.dim:
                raise ValidationError(f'Normal {i} has length {len(v)}, expected {self.dim}', datum=list(v))
            if not is_primitive(v):
                raise ValidationError(f'Normal {i} = {v} is not primitive', datum=list(v))

    @property
    def num_facets(self) -> int:
        return len(self.normals)

    def slack(self, point: Sequence, i: int):
        """ <point, v_i> + a_i, nonnegative exactly on the polytope. """
        return sum(Fraction(x) * y for x, y in zip(point, self.normals[i])) + self.offsets[i]

    def contains(self, point: Sequence) -> bool:
        return all(self.slack(point, i) >= 0 for i in range(self.num_facets))

    @cached_property
    def vertex_list(self) -> Tuple[Vertex, ...]:
        return tuple(_enumerate_vertices(self))

    @classmethod
    def from_dict(cls, data: dict) -> 'Polytope':
        facets = data['facets']
        return cls(
            dim=int(data['dim']),
            normals=[f['normal'] for f in facets],
            offsets=[parse_rational(f['offset']) for f in facets],
        )

    def to_dict(self) -> dict:
        return {
            'dim': self.dim,
            'facets': [
                {'normal': list(v), 'offset': format_rational(a)}
                for v, a in zip(self.normals, self.offsets)
            ],
        }


def monotone_polytope(fan: Fan) -> Polytope:
    """ The polytope {phi : <phi, v_i> >= -1} of the monotone normalization a_i = 1. """
    return Polytope(dim=fan.dim, normals=fan.rays, offsets=[1] * fan.num_rays)


def is_monotone(polytope: Polytope) -> bool:
    return all(a == 1 for a in polytope.offsets)


##################################################
# Vertices and faces
##################################################


def _check_bounded(polytope: Polytope):
    """ The recession cone {x : <x, v_i> >= 0} must be {0}; decided exactly coordinate by coordinate. """
    n = polytope.dim
    base = [([-c for c in v], 0) for v in polytope.normals]
    for k in range(n):
        for sign in (1, -1):
            row = [0] * n
            row[k] = -sign
            if fourier_motzkin_feasible(base + [(row, -1)], n):
                direction = tuple(sign * int(i == k) for i in range(n))
                raise Unbounded(f'Polytope is unbounded (recession direction with {"+" if sign > 0 else "-"}x_{k} > 0)', datum=direction)


def _enumerate_vertices(polytope: Polytope) -> List[Vertex]:
    n = polytope.dim
    if n == 0:
        if any(a < 0 for a in polytope.offsets):
            raise EmptyPolytope('Polytope is empty')
        return [Vertex(point=(), active_facets=tuple(range(polytope.num_facets)))]
    _check_bounded(polytope)
    points = {}
    for subset in itertools.combinations(range(polytope.num_facets), n):
        A = [polytope.normals[i] for i in subset]
        b = [-polytope.offsets[i] for i in subset]
        x = solve_rational(A, b)
        if x is None or x in points:
            continue
        if polytope.contains(x):
            points[x] = tuple(i for i in range(polytope.num_facets) if polytope.slack(x, i) == 0)
    if not points:
        raise EmptyPolytope('Polytope has no vertices', datum=polytope.to_dict())
    return [Vertex(point=p, active_facets=a) for p, a in sorted(points.items())]


def vertices(polytope: Polytope) -> List[Vertex]:
    """ All vertices with exact rational coordinates and the facets active at them. """
    return list(polytope.vertex_list)


def facet_vertices(polytope: Polytope, i: int) -> List[Vertex]:
    return [v for v in polytope.vertex_list if i in v.active_facets]


def _affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    # Clear denominators before taking an integer rank
    scale = 1
    for row in diffs:
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    return rank([[int(x * scale) for x in row] for row in diffs])


def normal_fan(polytope: Polytope) -> Fan:
    """ The fan whose maximal cones are spanned by the facet normals active at each vertex. """
    verts = polytope.vertex_list
    n = polytope.dim
    if _affine_rank([v.point for v in verts]) < n:
        raise NotFullDimensional(f'Vertices span an affine subspace of dimension < {n}', datum=[v.label() for v in verts])
    for i in range(polytope.num_facets):
        on_facet = [v.point for v in verts if i in v.active_facets]
        if not on_facet or _affine_rank(on_facet) < n - 1:
            raise RedundantFacet(f'Inequality {i} does not define a facet', datum=i)
    return Fan(dim=n, rays=polytope.normals, max_cones=[v.active_facets for v in verts])


@dataclass
class DelzantReport:
    """ `lattice` and `delzant` are independent: a polytope may be smooth at every vertex with rational vertices. """
    lattice: bool
    delzant: bool
    certificates: List[str] = field(default_factory=list)
    lattice_certificates: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'lattice': self.lattice,
            'delzant': self.delzant,
            'certificates': list(self.certificates),
            'lattice_certificates': list(self.lattice_certificates),
        }


def delzant_check(polytope: Polytope) -> DelzantReport:
    certificates = []
    lattice_certificates = []
    for v in polytope.vertex_list:
        if not v.is_integral:
            lattice_certificates.append(f'vertex {v.label()} is not a lattice point')
        active = list(v.active_facets)
        if len(active) != polytope.dim:
            certificates.append(f'vertex {v.label()} has {len(active)} active facets {active}, expected {polytope.dim}')
            continue
        d = abs_det([polytope.normals[i] for i in active])
        if d != 1:
            certificates.append(f'vertex {v.label()}: active normals {active} have |det| = {d}')
    return DelzantReport(
        lattice=not lattice_certificates,
        delzant=not certificates,
        certificates=certificates,
        lattice_certificates=lattice_certificates,
    )


def require_delzant(polytope: Polytope):
    """ Raises NotDelzant unless the active normals at every vertex form a Z-basis. Vertices may be rational. """
    report = delzant_check(polytope)
    if not report.delzant:
        raise NotDelzant('; '.join(report.certificates), datum=report.certificates)


##################################################
# Lattice points, the embedding and the moment map
##################################################


@dataclass(frozen=True)
class EmbeddingData:
    """ Lattice points m_1..m_L and the exponents LD(m_i, F_j) = <m_i, v_j> + a_j of the projective embedding. """
    lattice_points: Tuple[IntVector, ...]
    exponents: Tuple[Tuple[int, ...], ...]

    @property
    def num_points(self) -> int:
        return len(self.lattice_points)

    def index_of(self, point: Sequence[int]) -> int:
        return self.lattice_points.index(tuple(int(x) for x in point))


def lattice_points(polytope: Polytope) -> EmbeddingData:
    report = delzant_check(polytope)
    if not report.lattice:
        raise NotLattice('; '.join(report.lattice_certificates), datum=report.lattice_certificates)
    verts = [v.as_ints() for v in polytope.vertex_list]
    lo = [min(p[k] for p in verts) for k in range(polytope.dim)]
    hi = [max(p[k] for p in verts) for k in range(polytope.dim)]
    points = [
        m for m in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)])
        if polytope.contains(m)
    ]
    exponents = tuple(
        tuple(int(polytope.slack(m, j)) for j in range(polytope.num_facets))
        for m in points
    )
    logger.debug('Polytope has %d lattice points', len(points))
    return EmbeddingData(lattice_points=tuple(points), exponents=exponents)


def embedding_monomials(data: EmbeddingData, z: Sequence[complex]) -> np.ndarray:
    """ Psi(z) = (prod_j z_j^LD(m_i, F_j))_i with the convention 0^0 = 1. """
    z = np.asarray(z, dtype=complex)
    E = np.asarray(data.exponents, dtype=int)
    if E.shape[1] != len(z):
        raise ValueError(f'Expected {E.shape[1]} homogeneous coordinates, got {len(z)}')
    powers = np.where(E == 0, 1, z[None, :] ** np.maximum(E, 1))
    return powers.prod(axis=1)


def moment_map(data: EmbeddingData, homogeneous: Sequence[complex]) -> np.ndarray:
    """ sum_i m_i |z_i|^2 / sum_i |z_i|^2 on CP^(L-1). """
    w = np.abs(np.asarray(homogeneous, dtype=complex)) ** 2
    if len(w) != data.num_points:
        raise ValueError(f'Expected {data.num_points} coordinates, got {len(w)}')
    total = w.sum()
    if total == 0:
        raise ZeroVector('All homogeneous coordinates vanish')
    M = np.asarray(data.lattice_points, dtype=float).reshape(data.num_points, -1)
    return (w @ M) / total


def fixed_point_coordinates(polytope: Polytope, vertex: Vertex) -> Tuple[complex, ...]:
    """ Toric homogeneous coordinates of the torus fixed point over a vertex: 0 on its active facets, 1 elsewhere. """
    active = set(vertex.active_facets)
    return tuple(0j if i in active else 1 + 0j for i in range(polytope.num_facets))


def moment_round_trip(polytope: Polytope) -> List[Tuple[Vertex, float]]:
    """ For every vertex p, the distance between p and the moment image of the fixed point over p. """
    data = lattice_points(polytope)
    result = []
    for v in polytope.vertex_list:
        image = moment_map(data, embedding_monomials(data, fixed_point_coordinates(polytope, v)))
        error = float(np.max(np.abs(image - np.asarray(v.point, dtype=float)))) if polytope.dim else 0.0
        result.append((v, error))
    return result
