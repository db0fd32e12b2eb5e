"""
Real holomorphic discs u: (H, R) -> (X, R) given by polynomial lifts to toric homogeneous coordinates.

A lift has components w_i(z) = a_i prod_j (z - p_ij)(z - conj(p_ij)) prod_k (z - q_ik) with real a_i, Im p_ij > 0 and real q_ik, or w_i = 0 for i in I_0. Counting data (alpha_i, beta_i) is exact; root values may be exact rationals or floats.
"""
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from toric_real.errors import (
        BadExtension, DegenerateMobius, InfinityConditionFails, InvalidLift,
        NotABasis, NotACone, NotApplicable, NotInChart, OutsideU, WrongLength)
from toric_real.fan import Cone, Fan, _require_complete, _require_valid, cone_coefficients, minimal_cone_containing, star_fan
from toric_real.homology import chern_pairing, divisor_expansion
from toric_real.lattice import IntVector, dual_basis, pairing
from toric_real.polytope import parse_rational

logger = logging.getLogger(__name__)

Real = Union[Fraction, float]

# Tolerance for comparing floating root values and chart coordinates
ROOT_TOLERANCE = 1e-12
SYMMETRY_TOLERANCE = 1e-9


def parse_real(x) -> Real:
    if isinstance(x, float):
        return x
    return parse_rational(x)


def _format_real(x: Real):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f'{x.numerator}/{x.denominator}'
    return x


def _root_label(x) -> str:
    return str(x) if isinstance(x, complex) else str(_format_real(x))


def _close(x, y) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    return abs(complex(x) - complex(y)) <= ROOT_TOLERANCE * max(1.0, abs(complex(x)))


@dataclass(frozen=True)
class LiftComponent:
    leading: Real = Fraction(1)
    complex_roots: Tuple[complex, ...] = ()
    real_roots: Tuple[Real, ...] = ()
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero:
            return
        if self.leading == 0:
            raise InvalidLift('Leading coefficient must be nonzero; use a zero component instead')
        for p in self.complex_roots:
            if complex(p).imag <= 0:
                raise InvalidLift(f'Complex root {p} must have positive imaginary part', datum=str(p))

    @classmethod
    def zero(cls) -> 'LiftComponent':
        return cls(leading=Fraction(0), is_zero=True)

    @property
    def alpha(self) -> int:
        return 0 if self.is_zero else len(self.complex_roots)

    @property
    def beta(self) -> int:
        return 0 if self.is_zero else len(self.real_roots)

    @property
    def degree(self) -> int:
        return 2 * self.alpha + self.beta

    def evaluate(self, z: complex) -> complex:
        if self.is_zero:
            return 0j
        value = complex(self.leading)
        for p in self.complex_roots:
            value *= (z - p) * (z - complex(p).conjugate())
        for q in self.real_roots:
            value *= z - complex(q)
        return value

    def roots(self) -> List:
        """ Roots in the closed upper half-plane. """
        return [] if self.is_zero else list(self.complex_roots) + list(self.real_roots)

    @classmethod
    def from_dict(cls, data: dict) -> 'LiftComponent':
        if data.get('zero', False):
            return cls.zero()
        return cls(
            leading=parse_real(data.get('a', 1)),
            complex_roots=tuple(complex(float(re), float(im)) for re, im in data.get('complex_roots', [])),
            real_roots=tuple(parse_real(r) for r in data.get('real_roots', [])),
        )

    def to_dict(self) -> dict:
        if self.is_zero:
            return {'zero': True}
        return {
            'a': _format_real(self.leading),
            'complex_roots': [[complex(p).real, complex(p).imag] for p in self.complex_roots],
            'real_roots': [_format_real(q) for q in self.real_roots],
        }


def linear(root: Real = 0, leading: Real = 1) -> LiftComponent:
    """ leading * (z - root) """
    return LiftComponent(leading=parse_real(leading), real_roots=(parse_real(root),))


def constant(value: Real = 1) -> LiftComponent:
    return LiftComponent(leading=parse_real(value))


@dataclass(frozen=True)
class RealDiscLift:
    components: Tuple[LiftComponent, ...]

    def __post_init__(self):
        object.__setattr__(self, 'components', tuple(self.components))

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def zero_set(self) -> Cone:
        """ I_0 """
        return tuple(i for i, w in enumerate(self.components) if w.is_zero)

    @property
    def alphas(self) -> Tuple[int, ...]:
        return tuple(w.alpha for w in self.components)

    @property
    def betas(self) -> Tuple[int, ...]:
        return tuple(w.beta for w in self.components)

    @property
    def degrees(self) -> Tuple[int, ...]:
        """ 2 alpha_i + beta_i, the number of zeros of w_i on the sphere counted with multiplicity. """
        return tuple(w.degree for w in self.components)

    @property
    def is_constant(self) -> bool:
        return not any(self.degrees)

    def evaluate(self, z: complex) -> Tuple[complex, ...]:
        return tuple(w.evaluate(z) for w in self.components)

    @classmethod
    def from_dict(cls, data: dict) -> 'RealDiscLift':
        components = data['components'] if isinstance(data, dict) else data
        return cls(components=tuple(LiftComponent.from_dict(c) for c in components))

    def to_dict(self) -> dict:
        return {'components': [w.to_dict() for w in self.components]}


def evaluate(lift: RealDiscLift, z: complex) -> Tuple[complex, ...]:
    return lift.evaluate(z)


##################################################
# Validity and charts
##################################################


@dataclass
class LiftReport:
    zero_set: Cone
    checked: List[Tuple[str, Cone]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'valid': True,
            'I0': list(self.zero_set),
            'checked': [{'z': z, 'I_z': list(c)} for z, c in self.checked],
        }


def _check_length(fan: Fan, lift: RealDiscLift):
    if lift.num_components != fan.num_rays:
        raise WrongLength(f'Lift has {lift.num_components} components, the fan has {fan.num_rays} rays', datum=lift.num_components)


def validate_lift(fan: Fan, lift: RealDiscLift) -> LiftReport:
    """
    Check that the disc stays in U: I_z = I_0 + {i : w_i(z) = 0} spans a cone for every z in the closed upper half-plane.

    Off the roots I_z = I_0, so checking I_0 and every stored root is exact.
    """
    _require_valid(fan)
    _check_length(fan, lift)
    I0 = lift.zero_set
    report = LiftReport(zero_set=I0)
    if not fan.is_cone(I0):
        raise OutsideU(f'I_0 = {list(I0)} does not span a cone of the fan', datum={'z': 'generic', 'I_z': list(I0)})
    report.checked.append(('generic', I0))
    values: List = []
    for w in lift.components:
        for r in w.roots():
            if not any(_close(r, v) for v in values):
                values.append(r)
    for r in values:
        I_z = tuple(sorted(set(I0) | {i for i, w in enumerate(lift.components) if any(_close(r, s) for s in w.roots())}))
        if not fan.is_cone(I_z):
            raise OutsideU(f'At z = {r} the vanishing components {list(I_z)} do not span a cone', datum={'z': str(r), 'I_z': list(I_z)})
        report.checked.append((_root_label(r), I_z))
    return report


def chart_coords(fan: Fan, cone: Sequence[int], point: Sequence[complex]) -> Tuple[complex, ...]:
    """ Coordinates (prod_i z_i^<nu_j, v_i>)_j of the affine chart C^n of a maximal cone, nu dual to its generators. """
    _require_valid(fan)
    cone = tuple(sorted(cone))
    if cone not in fan.max_cones:
        raise NotACone(f'{list(cone)} is not a maximal cone', datum=list(cone))
    if len(point) != fan.num_rays:
        raise WrongLength(f'Point has {len(point)} coordinates, expected {fan.num_rays}', datum=len(point))
    point = [complex(z) for z in point]
    outside = [i for i in range(fan.num_rays) if i not in cone and point[i] == 0]
    if outside:
        raise NotInChart(f'Coordinates {outside} vanish outside the cone {list(cone)}', datum=outside)
    nu = dual_basis(fan.generators(cone)).dual
    coords = []
    for n_j in nu:
        value = 1 + 0j
        for z, r in zip(point, fan.rays):
            e = pairing(n_j, r)
            if e:
                value *= z ** e
        coords.append(value)
    return tuple(coords)


def chart_for(fan: Fan, point: Sequence[complex]) -> Cone:
    """ A maximal cone whose chart contains the point. """
    vanishing = {i for i, z in enumerate(point) if z == 0}
    for c in fan.max_cones:
        if vanishing <= set(c):
            return c
    raise NotInChart(f'Vanishing coordinates {sorted(vanishing)} lie in no maximal cone', datum=sorted(vanishing))


def same_point(fan: Fan, p: Sequence[complex], q: Sequence[complex], tolerance: float = SYMMETRY_TOLERANCE) -> bool:
    """ Whether two homogeneous coordinate vectors project to the same point of X. """
    cone = chart_for(fan, p)
    try:
        a = np.array(chart_coords(fan, cone, p))
        b = np.array(chart_coords(fan, cone, q))
    except NotInChart:
        return False
    return bool(np.all(np.abs(a - b) <= tolerance * np.maximum(1.0, np.abs(a))))


##################################################
# Behaviour at infinity
##################################################


def degree_vector(fan: Fan, lift: RealDiscLift, extension=None):
    """ The star fan of I_0 and m = sum_{j not in I_0} deg w_j * v_j projected to Z^n / span{v_i : i in I_0}. """
    _check_length(fan, lift)
    I0 = lift.zero_set
    star = star_fan(fan, I0, extension)
    m = [0] * star.fan.dim
    for j, deg in enumerate(lift.degrees):
        if j in I0 or deg == 0:
            continue
        for k, x in enumerate(star.project(fan.rays[j])):
            m[k] += deg * x
    return star, tuple(m)


def infinity_stratum(fan: Fan, lift: RealDiscLift) -> Cone:
    """
    I_inf = I_0 + (the minimal star-fan cone containing -m), the components vanishing at u(infinity).

    The hypotheses of the zero-count Maslov formula hold iff m = 0.
    """
    _require_complete(fan)
    try:
        validate_lift(fan, lift)
    except OutsideU as e:
        raise InvalidLift(str(e), datum=e.datum) from e
    star, m = degree_vector(fan, lift)
    cone = minimal_cone_containing(star.fan, tuple(-x for x in m))
    if cone is None:
        raise InvalidLift(f'-m = {tuple(-x for x in m)} lies in no cone of the star fan of {list(lift.zero_set)}')
    result = tuple(sorted(set(lift.zero_set) | set(star.lift_cone(cone))))
    logger.debug('m = %s, u(infinity) lies in the stratum %s', m, list(result))
    return result


def suggest_mobius(fan: Fan, lift: RealDiscLift) -> Tuple[int, int, int, int]:
    """
    An orientation preserving real Moebius map phi(z) = (r z - r^2 - 1) / (z - r) with u(phi(infinity)) = u(r) off the extra strata, r the first integer >= 0 that is no real root.
    """
    roots = [q for w in lift.components for q in (w.real_roots if not w.is_zero else ())]
    r = 0
    while any(_close(Fraction(r), q) for q in roots):
        r += 1
    return (r, -r * r - 1, 1, -r)


##################################################
# Reparametrization
##################################################


def _mobius_parts(mobius) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    if len(mobius) != 4:
        raise WrongLength(f'A Moebius map needs 4 entries (a, b, c, d), got {len(mobius)}', datum=list(mobius))
    a, b, c, d = (parse_rational(x) for x in mobius)
    det = a * d - b * c
    if det == 0:
        raise DegenerateMobius('ad - bc = 0', datum=[str(x) for x in (a, b, c, d)])
    if det < 0:
        warnings.warn(
            f'Moebius map with ad - bc = {det} < 0 exchanges the upper and lower half-planes; '
            'the result lifts the reflected disc, which has the same Maslov index')
    return a, b, c, d


def reparametrize(lift: RealDiscLift, mobius, fan: Optional[Fan] = None) -> RealDiscLift:
    """
    Lift of u o phi for phi(z) = (az + b) / (cz + d).

    Each root r becomes (rd - b) / (a - rc), or disappears into the leading coefficient when r = a/c. With a fan, the components of the stratum of u(infinity) acquire roots at z = -d/c (the preimage of infinity), with multiplicities the coordinates of -m in its star cone, so that the result is again an exact lift. Without a fan the lift is only composed, which is exact when m = 0.
    """
    a, b, c, d = _mobius_parts(mobius)
    extra: Dict[int, int] = {}
    if fan is not None and c != 0:
        star, m = degree_vector(fan, lift)
        if any(m):
            target = tuple(-x for x in m)
            cone = minimal_cone_containing(star.fan, target)
            if cone is None:
                raise InvalidLift(f'-m = {target} lies in no cone of the star fan')
            for k, e in cone_coefficients(star.fan, cone, target).items():
                extra[star.rays[k]] = e
    logger.debug('Reparametrizing by (%s, %s, %s, %s), extra roots at -d/c: %s', a, b, c, d, extra)

    components = []
    for i, w in enumerate(lift.components):
        if w.is_zero:
            components.append(w)
            continue
        leading = w.leading
        complex_roots = []
        real_roots = []
        for p in w.complex_roots:
            scale = a - p * c
            leading = leading * abs(scale) ** 2
            image = (p * d - b) / scale
            complex_roots.append(image if image.imag > 0 else image.conjugate())
        for q in w.real_roots:
            scale = a - q * c
            if scale == 0 or (not isinstance(scale, Fraction) and abs(scale) <= ROOT_TOLERANCE):
                leading = leading * (b - q * d)
                continue
            leading = leading * scale
            real_roots.append((q * d - b) / scale)
        e = extra.get(i, 0)
        if e:
            leading = leading * c ** e
            real_roots.extend([-d / c] * e)
        components.append(LiftComponent(leading=leading, complex_roots=tuple(complex_roots), real_roots=tuple(real_roots)))
    return RealDiscLift(components=tuple(components))


##################################################
# Maslov indices
##################################################


@dataclass(frozen=True)
class MaslovResult:
    mu: int
    method: str
    zero_set: Cone
    extension: Optional[Tuple[IntVector, ...]] = None

    def to_dict(self) -> dict:
        return {
            'mu': self.mu,
            'method': self.method,
            'I0': list(self.zero_set),
            'extension': None if self.extension is None else [list(e) for e in self.extension],
        }


def maslov_zero_count(fan: Fan, lift: RealDiscLift) -> MaslovResult:
    """ mu(u) = sum_i #zeros of w_i on the sphere, valid when I_0 is empty and u(infinity) avoids every divisor. """
    I_inf = infinity_stratum(fan, lift)
    if lift.zero_set:
        raise NotApplicable(f'I_0 = {list(lift.zero_set)} is nonempty; use maslov_general', datum=list(lift.zero_set))
    if I_inf:
        raise NotApplicable(
            f'u(infinity) lies on the divisors {list(I_inf)}; reparametrize first (e.g. by {suggest_mobius(fan, lift)})',
            datum=list(I_inf))
    return MaslovResult(mu=sum(lift.degrees), method='zero-count', zero_set=())


def _check_extension(fan: Fan, cone: Cone, extension) -> Tuple[IntVector, ...]:
    extension = tuple(tuple(int(x) for x in e) for e in extension)
    if len(extension) != fan.dim - len(cone) or any(len(e) != fan.dim for e in extension):
        raise BadExtension(f'Need {fan.dim - len(cone)} vectors of length {fan.dim}', datum=[list(e) for e in extension])
    try:
        dual_basis(list(fan.generators(cone)) + list(extension))
    except NotABasis as e:
        raise BadExtension(f'{[list(x) for x in extension]} does not complete {list(cone)} to a Z-basis: {e}', datum=[list(x) for x in extension]) from e
    return extension


def maslov_general(fan: Fan, lift: RealDiscLift, extension=None) -> MaslovResult:
    """
    mu(u) = sum_{j not in I_0} (1 - sum_{i in I_0} <eps_i, v_j>) deg w_j.

    eps is the basis dual to the generators of I_0 completed by `extension`; the result does not depend on the completion.
    """
    _require_complete(fan)
    _check_length(fan, lift)
    I0 = lift.zero_set
    if not fan.is_cone(I0):
        raise NotACone(f'I_0 = {list(I0)} does not span a cone', datum=list(I0))
    if extension is not None:
        extension = _check_extension(fan, I0, extension)
    expansion = divisor_expansion(fan, I0, extension)
    I_inf = infinity_stratum(fan, lift)
    if set(I_inf) != set(I0):
        raise InfinityConditionFails(
            f'u(infinity) lies on the divisors {sorted(set(I_inf) - set(I0))}; reparametrize first (e.g. by {suggest_mobius(fan, lift)})',
            datum=sorted(set(I_inf) - set(I0)))
    mu = 0
    for j, deg in enumerate(lift.degrees):
        if j in I0:
            continue
        mu += (1 - sum(expansion.pairing(i, j) for i in I0)) * deg
    return MaslovResult(mu=mu, method='general-formula', zero_set=I0, extension=expansion.extension)


def curve_class(fan: Fan, lift: RealDiscLift) -> Tuple[int, ...]:
    """
    The class lambda in ker(e_j -> v_j) of the double u# of the disc.

    lambda_j = deg w_j off I_0; for i in I_0 the divisor expansion [D_i] = -sum_j <eps_i, v_j> [D_j] gives lambda_i.
    """
    _check_length(fan, lift)
    I0 = lift.zero_set
    expansion = divisor_expansion(fan, I0)
    degrees = lift.degrees
    lam = list(degrees)
    for i in I0:
        lam[i] = -sum(expansion.pairing(i, j) * degrees[j] for j in range(fan.num_rays) if j not in I0)
    return tuple(lam)


##################################################
# Doubling and random discs
##################################################


@dataclass
class SymmetryReport:
    samples: int
    max_error: float
    curve_class: Tuple[int, ...]
    chern_number: int
    maslov: int

    @property
    def symmetric(self) -> bool:
        return self.max_error <= SYMMETRY_TOLERANCE

    @property
    def ok(self) -> bool:
        return self.symmetric and self.chern_number == self.maslov

    def to_dict(self) -> dict:
        return {
            'samples': self.samples,
            'max_error': self.max_error,
            'symmetric': self.symmetric,
            'curve_class': list(self.curve_class),
            'c1': self.chern_number,
            'mu': self.maslov,
            'ok': self.ok,
        }


def verify_double_symmetry(fan: Fan, lift: RealDiscLift, samples: int = 16, rng: Optional[np.random.Generator] = None) -> SymmetryReport:
    """
    Check u#(conj z) = tau(u#(z)) in an affine chart at random points and c1(u#) = mu(u).
    """
    if samples < 1:
        raise ValueError('samples must be positive')
    _require_complete(fan)
    try:
        validate_lift(fan, lift)
    except OutsideU as e:
        raise InvalidLift(str(e), datum=e.datum) from e
    rng = rng if rng is not None else np.random.default_rng(0)
    cone = next(c for c in fan.max_cones if set(lift.zero_set) <= set(c))
    max_error = 0.0
    for _ in range(samples):
        z = complex(rng.normal(), abs(rng.normal()) + 0.1)
        upper = np.array(chart_coords(fan, cone, lift.evaluate(z)))
        lower = np.array(chart_coords(fan, cone, lift.evaluate(z.conjugate())))
        error = np.abs(lower - upper.conj()) / np.maximum(1.0, np.abs(upper))
        max_error = max(max_error, float(error.max()) if error.size else 0.0)
    lam = curve_class(fan, lift)
    c1 = chern_pairing(fan, lam)
    mu = maslov_general(fan, lift).mu
    report = SymmetryReport(samples=samples, max_error=max_error, curve_class=lam, chern_number=c1, maslov=mu)
    logger.debug('Double symmetry: %s', report)
    return report


def _kernel_generators(fan: Fan) -> List[Tuple[int, ...]]:
    """ e_i + c for every ray, where -v_i = sum_j c_j v_j in the minimal cone containing -v_i. All entries are nonnegative. """
    result = []
    for i, v in enumerate(fan.rays):
        target = tuple(-x for x in v)
        cone = minimal_cone_containing(fan, target)
        vec = [0] * fan.num_rays
        vec[i] += 1
        for j, c in cone_coefficients(fan, cone, target).items():
            vec[j] += c
        result.append(tuple(vec))
    return result


def random_lift(fan: Fan, rng: np.random.Generator, max_multiple: int = 2) -> RealDiscLift:
    """
    A random valid lift with I_0 empty and m = 0: the degree vector is a random nonnegative combination of kernel generators and all roots are distinct.
    """
    _require_complete(fan)
    generators = _kernel_generators(fan)
    degrees = [0] * fan.num_rays
    while not any(degrees):
        for g in generators:
            k = int(rng.integers(0, max_multiple + 1))
            degrees = [a + k * b for a, b in zip(degrees, g)]
    components = []
    for deg in degrees:
        alpha = int(rng.integers(0, deg // 2 + 1))
        beta = deg - 2 * alpha
        leading = float(rng.choice([-1, 1]) * rng.uniform(0.5, 2.0))
        complex_roots = tuple(complex(rng.uniform(-3, 3), rng.uniform(0.2, 3)) for _ in range(alpha))
        real_roots = tuple(float(rng.uniform(-3, 3)) for _ in range(beta))
        components.append(LiftComponent(leading=leading, complex_roots=complex_roots, real_roots=real_roots))
    return RealDiscLift(components=tuple(components))
