"""
Fans of smooth rational simplicial cones.

Cones are sorted tuples of indices into the fan's ray list. A fan is given by its maximal cones; every face of a maximal cone is a cone of the fan.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from toric_real.errors import DegenerateChern, InvalidFan, NotACone, NotComplete, NotPrimitiveSystem, ToricError
from toric_real.lattice import (
        IntVector, coordinates_in, dual_basis, extend_to_basis,
        fourier_motzkin_feasible, is_primitive, kernel_basis, pairing)

logger = logging.getLogger(__name__)

Ray = IntVector
Cone = Tuple[int, ...]


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: Tuple[Ray, ...]
    max_cones: Tuple[Cone, ...]

    def __post_init__(self):
        object.__setattr__(self, 'rays', tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, 'max_cones', tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def all_cones(self) -> FrozenSet[Cone]:
        """ Face closure of the maximal cones, including the zero cone. """
        cones = {()}
        for c in self.max_cones:
            for r in range(len(c) + 1):
                cones.update(itertools.combinations(c, r))
        return frozenset(cones)

    def is_cone(self, indices: Sequence[int]) -> bool:
        return tuple(sorted(set(indices))) in self.all_cones

    def cones_of_dim(self, r: int) -> List[Cone]:
        """ Sigma^(r), the cones with exactly r rays. """
        return sorted(c for c in self.all_cones if len(c) == r)

    def generators(self, cone: Sequence[int]) -> List[Ray]:
        return [self.rays[i] for i in cone]

    @cached_property
    def report(self) -> 'FanReport':
        return validate_fan(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'Fan':
        return cls(dim=int(data['dim']), rays=data['rays'], max_cones=data['max_cones'])

    def to_dict(self) -> dict:
        return {'dim': self.dim, 'rays': [list(r) for r in self.rays], 'max_cones': [list(c) for c in self.max_cones]}


@dataclass
class FanReport:
    smooth: bool
    complete: bool
    valid: bool
    failures: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'smooth': self.smooth, 'complete': self.complete, 'valid': self.valid, 'failures': list(self.failures)}


##################################################
# Validation
##################################################


def _cones_meet_in_common_face(fan: Fan, c1: Cone, c2: Cone) -> Optional[int]:
    """ None if the intersection of the two cones is the cone on their common rays, otherwise a ray index of `c1` witnessing a larger intersection. """
    common = set(c1) & set(c2)
    only1 = [i for i in c1 if i not in common]
    if not only1:
        return None
    # Variables: lambda (coefficients on c1) then mu (coefficients on c2)
    k1, k2 = len(c1), len(c2)
    num_vars = k1 + k2
    ineqs = []
    for t in range(num_vars):
        row = [0] * num_vars
        row[t] = -1
        ineqs.append((row, 0))
    for coord in range(fan.dim):
        row = [fan.rays[i][coord] for i in c1] + [-fan.rays[j][coord] for j in c2]
        ineqs.append((row, 0))
        ineqs.append(([-x for x in row], 0))
    for i in only1:
        row = [0] * num_vars
        row[c1.index(i)] = -1
        if fourier_motzkin_feasible(ineqs + [(row, -1)], num_vars):
            return i
    return None


def validate_fan(fan: Fan) -> FanReport:
    """
    Check the fan axioms: primitive rays, smooth maximal cones, face closure and proper pairwise intersections. Never raises; failures are listed as certificates.
    """
    failures = []
    smooth = True
    for i, r in enumerate(fan.rays):
        if len(r) != fan.dim:
            failures.append(f'ray {i} has length {len(r)}, expected {fan.dim}')
            smooth = False
        elif not is_primitive(r):
            failures.append(f'ray {i} = {r} is not primitive')
            smooth = False
    if not smooth:
        return FanReport(smooth=False, complete=False, valid=False, failures=failures)

    independent = set()
    for c in fan.max_cones:
        if any(i < 0 or i >= fan.num_rays for i in c) or len(set(c)) != len(c):
            failures.append(f'cone {list(c)} references invalid ray indices')
            smooth = False
            continue
        try:
            extend_to_basis(fan.generators(c), dim=fan.dim)
            independent.add(c)
        except NotPrimitiveSystem as e:
            failures.append(f'cone {list(c)} is not smooth: {e}')
            smooth = False

    faces_ok = True
    for c1, c2 in itertools.permutations(fan.max_cones, 2):
        if set(c1) <= set(c2):
            failures.append(f'cone {list(c1)} is a face of cone {list(c2)}, not maximal')
            faces_ok = False
    used = set(itertools.chain.from_iterable(fan.max_cones))
    for i in range(fan.num_rays):
        if i not in used:
            failures.append(f'ray {i} is not contained in any cone')
            faces_ok = False

    intersections_ok = True
    for c1, c2 in itertools.permutations(fan.max_cones, 2):
        if c1 not in independent or c2 not in independent:
            continue
        witness = _cones_meet_in_common_face(fan, c1, c2)
        if witness is not None:
            failures.append(f'cones {list(c1)} and {list(c2)} overlap beyond their common face (ray {witness})')
            intersections_ok = False

    valid = smooth and faces_ok and intersections_ok
    report = FanReport(smooth=smooth, complete=False, valid=valid, failures=failures)
    if valid:
        report.complete = _is_complete(fan)
    logger.debug('Validated fan with %d rays: %s', fan.num_rays, report)
    return report


def _require_valid(fan: Fan):
    if not fan.report.valid:
        raise InvalidFan('; '.join(fan.report.failures), datum=fan.report.failures)


def _require_complete(fan: Fan):
    _require_valid(fan)
    if not fan.report.complete:
        raise NotComplete('The maximal cones do not cover R^n', datum=fan.to_dict())


##################################################
# Completeness and cone membership
##################################################


def _is_complete(fan: Fan) -> bool:
    n = fan.dim
    if n == 0:
        return True
    if not fan.max_cones or any(len(c) != n for c in fan.max_cones):
        return False
    facets: Dict[Cone, List[int]] = {}
    for k, c in enumerate(fan.max_cones):
        for f in itertools.combinations(c, n - 1):
            facets.setdefault(f, []).append(k)
    if any(len(v) != 2 for v in facets.values()):
        return False
    # Adjacency graph of n-cones must be connected
    seen = {0}
    stack = [0]
    while stack:
        k = stack.pop()
        for f in itertools.combinations(fan.max_cones[k], n - 1):
            for other in facets[f]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
    if len(seen) != len(fan.max_cones):
        return False
    probes = [tuple(-x for x in r) for r in fan.rays]
    probes += [tuple(s * int(i == k) for i in range(n)) for k in range(n) for s in (1, -1)]
    return all(_minimal_cone(fan, v) is not None for v in probes)


def _minimal_cone(fan: Fan, v: Sequence[int]) -> Optional[Cone]:
    if all(x == 0 for x in v):
        return ()
    for c in fan.max_cones:
        coeffs = coordinates_in(fan.generators(c), v)
        if coeffs is not None and all(x >= 0 for x in coeffs):
            return tuple(i for i, x in zip(c, coeffs) if x > 0)
    return None


def is_complete(fan: Fan) -> bool:
    _require_valid(fan)
    return fan.report.complete


def minimal_cone_containing(fan: Fan, v: Sequence[int]) -> Optional[Cone]:
    """ The unique minimal cone whose nonnegative span contains v; the zero cone for v = 0, None if v is not covered. """
    _require_valid(fan)
    if len(v) != fan.dim:
        raise ValueError(f'Vector {tuple(v)} is not in Z^{fan.dim}')
    return _minimal_cone(fan, v)


def cone_coefficients(fan: Fan, cone: Cone, v: Sequence[int]) -> Dict[int, int]:
    """ Integer coefficients of v in the generators of a smooth cone containing it. """
    coeffs = coordinates_in(fan.generators(cone), v)
    if coeffs is None:
        raise NotACone(f'{tuple(v)} is not in the span of cone {list(cone)}', datum=list(cone))
    assert all(x.denominator == 1 for x in coeffs)
    return {i: int(x) for i, x in zip(cone, coeffs)}


##################################################
# Combinatorial invariants
##################################################


def primitive_collections(fan: Fan) -> List[Cone]:
    """ Inclusion-minimal sets of ray indices that do not span a cone of the fan, sorted. """
    _require_valid(fan)
    found: List[Cone] = []
    max_size = min(fan.num_rays, fan.dim + 1)
    for size in range(1, max_size + 1):
        for subset in itertools.combinations(range(fan.num_rays), size):
            if fan.is_cone(subset):
                continue
            if any(set(p) <= set(subset) for p in found):
                continue
            found.append(subset)
    return sorted(found)


def minimal_chern(fan: Fan) -> int:
    """
    The minimal Chern number C_X: the gcd of the pairings of c1 = PD(D_1 + ... + D_N) with a basis of curve classes. A curve class lambda in the kernel of e_j -> v_j pairs to sum_j lambda_j.
    """
    _require_complete(fan)
    basis = kernel_basis(fan.rays, dim=fan.dim)
    g = 0
    for lam in basis:
        g = gcd(g, abs(sum(lam)))
    if g == 0:
        raise DegenerateChern('c1 pairs to zero with every curve class', datum=basis)
    return g


def is_fano(fan: Fan) -> bool:
    """ True iff {phi : <phi, v_i> >= -1} is a lattice polytope whose normal fan is this fan. """
    _require_complete(fan)
    from toric_real.polytope import delzant_check, monotone_polytope, normal_fan
    try:
        polytope = monotone_polytope(fan)
        report = delzant_check(polytope)
        if not report.lattice:
            return False
        dual = normal_fan(polytope)
    except ToricError as e:
        logger.debug('Monotone polytope rejected: %s', e)
        return False
    if dual.rays != fan.rays:
        return False
    return {frozenset(c) for c in dual.max_cones} == {frozenset(c) for c in fan.max_cones}


##################################################
# Star fans
##################################################


@dataclass(frozen=True)
class StarFan:
    """ The fan of the closed stratum D_I: the cones containing sigma_I, projected to Z^n / span{v_i : i in I}. """
    fan: Fan
    cone: Cone
    rays: Tuple[int, ...]
    quotient: Tuple[IntVector, ...]

    def project(self, v: Sequence[int]) -> IntVector:
        return tuple(int(pairing(q, v)) for q in self.quotient)

    def lift_cone(self, star_cone: Sequence[int]) -> Cone:
        return tuple(sorted(self.rays[i] for i in star_cone))


def star_fan(fan: Fan, cone: Sequence[int], extension: Optional[Sequence[Sequence[int]]] = None) -> StarFan:
    _require_valid(fan)
    cone = tuple(sorted(set(cone)))
    if not fan.is_cone(cone):
        raise NotACone(f'Rays {list(cone)} do not span a cone of the fan', datum=list(cone))
    if extension is None:
        extension = extend_to_basis(fan.generators(cone), dim=fan.dim)
    basis = dual_basis(list(fan.generators(cone)) + [tuple(e) for e in extension])
    quotient = basis.dual[len(cone):]
    star_rays = tuple(j for j in range(fan.num_rays) if j not in cone and fan.is_cone(cone + (j,)))
    position = {j: k for k, j in enumerate(star_rays)}
    projected = [tuple(int(pairing(q, fan.rays[j])) for q in quotient) for j in star_rays]
    max_cones = [
        tuple(position[j] for j in c if j not in cone)
        for c in fan.max_cones if set(cone) <= set(c)
    ]
    star = Fan(dim=fan.dim - len(cone), rays=tuple(projected), max_cones=tuple(max_cones))
    return StarFan(fan=star, cone=cone, rays=star_rays, quotient=tuple(quotient))
