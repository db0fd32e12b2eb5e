"""
The Z/2 homology ring of a smooth complete toric manifold, computed from its fan.

H_*(X; Z/2) is presented as GF(2)[x_1, ..., x_N] / (I + J), where x_i = [D_i], I is spanned by the linear forms sum_i <eps, v_i> x_i and J is the Stanley-Reisner ideal of the primitive collections. Internally every degree is cohomological (deg x_i = 2); the homological degree of a class of cohomological degree 2k is 2n - 2k.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy.polys.domains import GF
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring

from toric_real.errors import NotACone, NotACurveClass, ValidationError, WrongLength
from toric_real.fan import Cone, Fan, _require_complete, _require_valid, primitive_collections
from toric_real.lattice import IntVector, dual_basis, extend_to_basis, pairing

logger = logging.getLogger(__name__)

# Number of fans whose rings are kept in memory
CACHE_SIZE = 32

GF2 = GF(2)

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class RingPresentation:
    num_generators: int
    # One GF(2) row per standard dual basis vector e_k*: (<e_k*, v_i> mod 2)_i
    linear_relations: Tuple[Tuple[int, ...], ...]
    sr_generators: Tuple[Cone, ...]
    # Variables of the first maximal cone are eliminated through the linear relations
    eliminated_cone: Cone
    free_variables: Tuple[int, ...]
    substitution: Dict[int, Tuple[int, ...]]

    def variable_name(self, i: int) -> str:
        return f'D{i + 1}'


@dataclass(frozen=True)
class HomologyClass:
    """ A homogeneous class given by its GF(2) coordinates in the graded basis. `degree` is homological. """
    degree: int
    coordinates: Tuple[int, ...]

    def __bool__(self):
        return any(self.coordinates)

    def __add__(self, other: 'HomologyClass') -> 'HomologyClass':
        if self.degree != other.degree:
            raise ValueError(f'Cannot add classes of degrees {self.degree} and {other.degree}')
        return HomologyClass(self.degree, tuple((a + b) % 2 for a, b in zip(self.coordinates, other.coordinates)))


@dataclass(frozen=True, eq=False)
class GradedBasis:
    presentation: RingPresentation
    dim: int
    poly_ring: object
    groebner_basis: Tuple
    # Standard monomials (exponents over the free variables) by cohomological half-degree 0..n
    monomials: Tuple[Tuple[Monomial, ...], ...]

    @property
    def total_rank(self) -> int:
        return sum(len(m) for m in self.monomials)

    @property
    def by_degree(self) -> Dict[int, List[Monomial]]:
        """ Basis monomials keyed by homological degree 0, 2, ..., 2n. """
        return {2 * (self.dim - k): list(m) for k, m in enumerate(self.monomials)}

    def rank(self, degree: int) -> int:
        """ rank H_degree(X; Z/2) """
        if degree % 2 or not 0 <= degree <= 2 * self.dim:
            return 0
        return len(self.monomials[self.dim - degree // 2])

    def monomial_degree(self, degree: int) -> int:
        return self.dim - degree // 2

    def polynomial(self, m: Monomial):
        return self.poly_ring.from_dict({tuple(m): GF2.one})

    def variable(self, i: int):
        """ x_i after substituting the eliminated variables. """
        return _variable(self.presentation, self.poly_ring, i)

    def to_polynomial(self, c: HomologyClass):
        p = self.poly_ring.zero
        if c.degree < 0:
            return p
        for m, coeff in zip(self.monomials[self.monomial_degree(c.degree)], c.coordinates):
            if coeff:
                p += self.polynomial(m)
        return p

    def reduce(self, p) -> Dict[int, HomologyClass]:
        """ Normal form of a polynomial, split into homogeneous classes keyed by homological degree. """
        r = p.rem(list(self.groebner_basis)) if p else p
        parts: Dict[int, List[int]] = {}
        for m, coeff in r.terms():
            if not coeff:
                continue
            k = sum(m)
            degree = 2 * (self.dim - k)
            coords = parts.setdefault(degree, [0] * len(self.monomials[k]))
            coords[self.monomials[k].index(tuple(m))] ^= 1
        return {d: HomologyClass(d, tuple(c)) for d, c in parts.items()}

    def basis_class(self, degree: int, index: int) -> HomologyClass:
        coords = [0] * self.rank(degree)
        coords[index] = 1
        return HomologyClass(degree, tuple(coords))

    def zero(self, degree: int) -> HomologyClass:
        return HomologyClass(degree, (0,) * self.rank(degree))

    def classes(self) -> List[HomologyClass]:
        """ All basis classes, top homological degree first. """
        return [
            self.basis_class(2 * (self.dim - k), i)
            for k, ms in enumerate(self.monomials) for i in range(len(ms))
        ]

    def monomial_name(self, m: Monomial) -> str:
        if not any(m):
            return '[X]'
        if sum(m) == self.dim:
            return '[pt]'
        factors = []
        for var, e in zip(self.presentation.free_variables, m):
            if e == 1:
                factors.append(self.presentation.variable_name(var))
            elif e > 1:
                factors.append(f'{self.presentation.variable_name(var)}^{e}')
        return '*'.join(factors)

    def name(self, c: HomologyClass, unit_name: str = '[X]') -> str:
        if c.degree < 0 or not c:
            return '0'
        ms = self.monomials[self.monomial_degree(c.degree)]
        names = [self.monomial_name(m) for m, coeff in zip(ms, c.coordinates) if coeff]
        return ' + '.join(unit_name if n == '[X]' else n for n in names)


def _variable(presentation: RingPresentation, R, i: int):
    gens = R.gens
    if i in presentation.substitution:
        p = R.zero
        for g, coeff in zip(gens, presentation.substitution[i]):
            if coeff:
                p += g
        return p
    return gens[presentation.free_variables.index(i)]


def presentation(fan: Fan) -> RingPresentation:
    """ Linear and Stanley-Reisner relations, with the first maximal cone chosen for elimination. """
    _require_complete(fan)
    N, n = fan.num_rays, fan.dim
    linear = tuple(tuple(fan.rays[i][k] % 2 for i in range(N)) for k in range(n))
    sigma = fan.max_cones[0]
    eps = dual_basis(fan.generators(sigma))
    free = tuple(j for j in range(N) if j not in sigma)
    substitution = {
        i: tuple(pairing(eps.dual[k], fan.rays[j]) % 2 for j in free)
        for k, i in enumerate(sigma)
    }
    logger.debug('Eliminating the variables of cone %s', list(sigma))
    return RingPresentation(
        num_generators=N,
        linear_relations=linear,
        sr_generators=tuple(primitive_collections(fan)),
        eliminated_cone=sigma,
        free_variables=free,
        substitution=substitution,
    )


@lru_cache(maxsize=CACHE_SIZE)
def homology_ring(fan: Fan) -> Tuple[RingPresentation, GradedBasis]:
    """
    Presentation and graded monomial basis of H_*(X; Z/2).

    The basis consists of the standard monomials of a reduced grevlex Groebner basis of the Stanley-Reisner ideal after eliminating the variables of the first maximal cone.
    """
    if fan.dim == 0:
        raise ValidationError('The homology ring of a point is not modelled')
    pres = presentation(fan)
    n = fan.dim
    names = ','.join(pres.variable_name(j) for j in pres.free_variables)
    R, *_ = ring(names, GF2, grevlex)
    sr = []
    for P in pres.sr_generators:
        p = R.one
        for i in P:
            p *= _variable(pres, R, i)
        sr.append(p)
    G = tuple(groebner(sr, R))
    logger.debug('Groebner basis of the Stanley-Reisner image has %d elements', len(G))
    leading = [g.LM for g in G]
    r = len(pres.free_variables)
    monomials = []
    for k in range(n + 2):
        ms = [
            m for m in _monomials_of_degree(r, k)
            if not any(all(a >= b for a, b in zip(m, lm)) for lm in leading)
        ]
        ms.sort(key=grevlex, reverse=True)
        monomials.append(tuple(ms))
    assert not monomials.pop(), 'quotient ring is nonzero above the top degree'
    basis = GradedBasis(presentation=pres, dim=n, poly_ring=R, groebner_basis=G, monomials=tuple(monomials))
    assert basis.rank(2 * n) == 1 and basis.rank(0) == 1, f'degree 0 and 2n ranks are {basis.rank(0)}, {basis.rank(2 * n)}'
    assert basis.total_rank == len(fan.max_cones), f'total rank {basis.total_rank} != {len(fan.max_cones)} maximal cones'
    return pres, basis


def _monomials_of_degree(r: int, k: int) -> List[Monomial]:
    result = []
    for combo in itertools.combinations_with_replacement(range(r), k):
        m = [0] * r
        for i in combo:
            m[i] += 1
        result.append(tuple(m))
    return result


def intersection_product(basis: GradedBasis, a: HomologyClass, b: HomologyClass) -> HomologyClass:
    """ a . b, of homological degree deg a + deg b - 2n. Products below degree 0 vanish. """
    degree = a.degree + b.degree - 2 * basis.dim
    if degree < 0:
        logger.debug('DegreeUnderflow: product of degrees %d and %d is zero', a.degree, b.degree)
        return HomologyClass(degree, ())
    parts = basis.reduce(basis.to_polynomial(a) * basis.to_polynomial(b))
    return parts.get(degree, basis.zero(degree))


def point_class(basis: GradedBasis) -> HomologyClass:
    return basis.basis_class(0, 0)


def fundamental_class(basis: GradedBasis) -> HomologyClass:
    return basis.basis_class(2 * basis.dim, 0)


def divisor_class(basis: GradedBasis, i: int) -> HomologyClass:
    """ [D_i] in H_{2n-2}. """
    degree = 2 * basis.dim - 2
    return basis.reduce(basis.variable(i)).get(degree, basis.zero(degree))


def poincare_ranks(basis: GradedBasis) -> List[int]:
    """ rank H_d for d = 0..2n, odd degrees included as zeros. """
    return [basis.rank(d) for d in range(2 * basis.dim + 1)]


def chern_pairing(fan: Fan, lam: Sequence[int]) -> int:
    """ <c1(X), lambda> = sum_j lambda_j for a curve class lambda in ker(e_j -> v_j). """
    if len(lam) != fan.num_rays:
        raise WrongLength(f'Curve class has {len(lam)} entries, the fan has {fan.num_rays} rays', datum=list(lam))
    image = [sum(l * r[k] for l, r in zip(lam, fan.rays)) for k in range(fan.dim)]
    if any(image):
        raise NotACurveClass(f'sum_j lambda_j v_j = {tuple(image)} != 0', datum=list(lam))
    return sum(lam)


@dataclass(frozen=True)
class DivisorExpansion:
    """ [D_i] = -sum_{j not in I0} <eps_i, v_j> [D_j] for i in I0, where eps is dual to the generators of I0 completed by `extension`. """
    cone: Cone
    extension: Tuple[IntVector, ...]
    coefficients: Dict[int, Dict[int, int]]

    def pairing(self, i: int, j: int) -> int:
        """ <eps_i, v_j> """
        return self.coefficients[i][j]


def divisor_expansion(fan: Fan, cone: Sequence[int], extension=None) -> DivisorExpansion:
    _require_valid(fan)
    cone = tuple(sorted(set(cone)))
    if not fan.is_cone(cone):
        raise NotACone(f'Rays {list(cone)} do not span a cone of the fan', datum=list(cone))
    if extension is None:
        extension = extend_to_basis(fan.generators(cone), dim=fan.dim)
    extension = tuple(tuple(int(x) for x in e) for e in extension)
    basis = dual_basis(list(fan.generators(cone)) + list(extension))
    others = [j for j in range(fan.num_rays) if j not in cone]
    coefficients = {
        i: {j: int(pairing(basis.dual[k], fan.rays[j])) for j in others}
        for k, i in enumerate(cone)
    }
    return DivisorExpansion(cone=cone, extension=extension, coefficients=coefficients)
