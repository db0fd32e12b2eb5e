"""
Quantum cohomology of Fano toric manifolds over GF(2), and of their real parts through the degree doubling t -> q.

The quantum ring is GF(2)[x_1, ..., x_N, q] modulo the linear relations and one relation per primitive collection P,

    prod_{i in P} x_i = q^d_P prod_j x_j^c_j,   sum_{i in P} v_i = sum_j c_j v_j in its minimal cone,

with d_P = (|P| - sum_j c_j) / C_X. Normal forms are computed with a Groebner basis for a weighted reverse lexicographic order in which deg x = 1, deg q = C_X and q is smallest, so that the standard monomials are the classical basis times powers of q.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import MonomialOrder
from sympy.polys.rings import ring

from toric_real.errors import ChernTooSmall, DegreeNotDivisible, InhomogeneousClass, NotFano, ValidationError
from toric_real.fan import Cone, Fan, _require_complete, cone_coefficients, is_fano, minimal_chern, minimal_cone_containing, primitive_collections
from toric_real.homology import CACHE_SIZE, GF2, GradedBasis, HomologyClass, Monomial, _variable, homology_ring
from toric_real.morse import displacement_bound, morse_profile
from toric_real.polytope import Polytope

logger = logging.getLogger(__name__)


class WeightedReverseLexOrder(MonomialOrder):
    """ Weighted degree first, ties broken reverse lexicographically (the last variable is the smallest). """
    alias = 'wgrevlex'
    is_global = True

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(weights)

    def __call__(self, monomial):
        return (sum(w * e for w, e in zip(self.weights, monomial)), tuple(reversed([-e for e in monomial])))

    def __repr__(self):
        return f'{self.__class__.__name__}({self.weights})'

    def __eq__(self, other):
        return isinstance(other, WeightedReverseLexOrder) and self.weights == other.weights

    def __hash__(self):
        return hash((self.__class__, self.weights))


@dataclass(frozen=True)
class LaurentRing:
    """ GF(2)[v, v^-1] graded by |v| = variable_degree < 0. """
    name: str
    variable_degree: int

    def __post_init__(self):
        if self.variable_degree >= 0:
            raise ValidationError(f'|{self.name}| = {self.variable_degree} must be negative')
        if self.name == 'q' and self.variable_degree % 2:
            raise ValidationError(f'|q| = {self.variable_degree} must be even')

    def degree_of(self, power: int) -> int:
        return power * self.variable_degree

    def render(self, power: int) -> str:
        if power == 0:
            return ''
        if power == 1:
            return self.name
        return f'{self.name}^{power}'


@dataclass(frozen=True)
class QuantumRelation:
    collection: Cone
    rhs_exponents: Dict[int, int]
    q_power: int

    def render(self, variable: str = 'q') -> str:
        lhs = '*'.join(f'x{i + 1}' for i in self.collection)
        factors = [variable if self.q_power == 1 else f'{variable}^{self.q_power}']
        for j, c in sorted(self.rhs_exponents.items()):
            if c:
                factors.append(f'x{j + 1}' if c == 1 else f'x{j + 1}^{c}')
        return f'{lhs} = {"*".join(factors)}'

    def to_dict(self) -> dict:
        return {
            'collection': list(self.collection),
            'rhs_exponents': {str(j): c for j, c in sorted(self.rhs_exponents.items())},
            'q_power': self.q_power,
        }


@dataclass(frozen=True)
class QHClass:
    """ A GF(2) combination of (basis index, power of the Laurent variable) pairs. """
    terms: FrozenSet[Tuple[int, int]] = frozenset()

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: 'QHClass') -> 'QHClass':
        return QHClass(self.terms ^ other.terms)

    def shift(self, power: int) -> 'QHClass':
        return QHClass(frozenset((i, k + power) for i, k in self.terms))

    def coefficient(self, power: int) -> FrozenSet[int]:
        return frozenset(i for i, k in self.terms if k == power)


def quantum_relations(fan: Fan) -> List[QuantumRelation]:
    """ One relation per primitive collection. Requires a Fano fan. """
    _require_complete(fan)
    if not is_fano(fan):
        raise NotFano('The monotone polytope of the fan is not a lattice polytope with this normal fan', datum=fan.to_dict())
    chern = minimal_chern(fan)
    relations = []
    for P in primitive_collections(fan):
        total = tuple(sum(fan.rays[i][k] for i in P) for k in range(fan.dim))
        cone = minimal_cone_containing(fan, total)
        coeffs = cone_coefficients(fan, cone, total) if cone else {}
        if set(coeffs) & set(P):
            raise NotFano(f'sum of rays {list(P)} lies in a cone meeting the collection', datum=list(P))
        excess = len(P) - sum(coeffs.values())
        if excess % chern:
            raise DegreeNotDivisible(f'{excess} is not divisible by C_X = {chern} for collection {list(P)}', datum=list(P))
        d = excess // chern
        if d < 1:
            raise NotFano(f'Collection {list(P)} has nonpositive q-degree {d}', datum=list(P))
        assert 2 * len(P) == 2 * sum(coeffs.values()) + 2 * chern * d
        relations.append(QuantumRelation(collection=P, rhs_exponents=coeffs, q_power=d))
    return relations


@dataclass(frozen=True, eq=False)
class QuantumRing:
    fan: Fan
    base: GradedBasis
    chern: int
    relations: Tuple[QuantumRelation, ...]
    poly_ring: object
    groebner_basis: Tuple
    # Classical basis monomials in a single list, ordered by cohomological degree
    monomials: Tuple[Monomial, ...]
    _products: Dict = field(default_factory=dict, repr=False)

    @property
    def laurent(self) -> LaurentRing:
        return LaurentRing('q', -2 * self.chern)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def rank(self) -> int:
        return len(self.monomials)

    def basis_degree(self, index: int) -> int:
        """ Homological degree of a basis class. """
        return 2 * (self.dim - sum(self.monomials[index]))

    def term_degree(self, index: int, power: int) -> int:
        return self.basis_degree(index) + self.laurent.degree_of(power)

    def degree(self, c: QHClass) -> Optional[int]:
        degrees = {self.term_degree(i, k) for i, k in c.terms}
        if len(degrees) > 1:
            raise InhomogeneousClass(f'Class has terms of degrees {sorted(degrees)}', datum=sorted(degrees))
        return degrees.pop() if degrees else None

    def basis(self, index: int, power: int = 0) -> QHClass:
        return QHClass(frozenset({(index, power)}))

    def unit(self) -> QHClass:
        return self.basis(0)

    def point(self) -> QHClass:
        return self.basis(self.rank - 1)

    def classes(self) -> List[QHClass]:
        return [self.basis(i) for i in range(self.rank)]

    def _normal_form(self, p) -> QHClass:
        r = p.rem(list(self.groebner_basis)) if p else p
        index = {m: i for i, m in enumerate(self.monomials)}
        terms = set()
        for monom, coeff in r.terms():
            if not coeff:
                continue
            key = (index[tuple(monom[:-1])], monom[-1])
            terms ^= {key}
        return QHClass(frozenset(terms))

    def _monomial(self, index: int):
        return self.poly_ring.from_dict({tuple(self.monomials[index]) + (0,): GF2.one})

    def divisor(self, i: int) -> QHClass:
        """ The class of D_i. """
        return self._normal_form(_variable(self.base.presentation, self.poly_ring, i))

    def from_homology(self, c: HomologyClass) -> QHClass:
        k = self.base.monomial_degree(c.degree)
        offset = sum(len(self.base.monomials[j]) for j in range(k))
        return QHClass(frozenset((offset + i, 0) for i, x in enumerate(c.coordinates) if x))

    def classical_part(self, c: QHClass) -> QHClass:
        return QHClass(frozenset(t for t in c.terms if t[1] == 0))

    def _basis_product(self, i: int, j: int) -> QHClass:
        key = (min(i, j), max(i, j))
        if key not in self._products:
            self._products[key] = self._normal_form(self._monomial(i) * self._monomial(j))
        return self._products[key]

    def product(self, a: QHClass, b: QHClass) -> QHClass:
        self.degree(a)
        self.degree(b)
        result = QHClass()
        for i, k in a.terms:
            for j, l in b.terms:
                result = result + self._basis_product(i, j).shift(k + l)
        return result

    def product_table(self) -> List[Tuple[int, int, QHClass]]:
        return [(i, j, self._basis_product(i, j)) for i in range(self.rank) for j in range(i, self.rank)]

    def basis_name(self, index: int, unit_name: str = '[X]') -> str:
        name = self.base.monomial_name(self.monomials[index])
        return unit_name if name == '[X]' else name

    def name(self, c: QHClass, unit_name: str = '[X]', variable: Optional[str] = None) -> str:
        if not c:
            return '0'
        laurent = LaurentRing(variable, self.laurent.variable_degree) if variable else self.laurent
        parts = []
        for i, k in sorted(c.terms, key=lambda t: (t[1], t[0])):
            power = laurent.render(k)
            parts.append(f'{self.basis_name(i, unit_name)}·{power}' if power else self.basis_name(i, unit_name))
        return ' + '.join(parts)


@lru_cache(maxsize=CACHE_SIZE)
def quantum_ring(fan: Fan) -> QuantumRing:
    relations = quantum_relations(fan)
    chern = minimal_chern(fan)
    pres, base = homology_ring(fan)
    free = pres.free_variables
    names = ','.join([pres.variable_name(j) for j in free] + ['q'])
    order = WeightedReverseLexOrder([1] * len(free) + [chern])
    R, *gens = ring(names, GF2, order)
    q = gens[-1]
    polys = []
    for rel in relations:
        lhs = R.one
        for i in rel.collection:
            lhs *= _variable(pres, R, i)
        rhs = q ** rel.q_power
        for j, c in rel.rhs_exponents.items():
            rhs *= _variable(pres, R, j) ** c
        polys.append(lhs + rhs)
    G = tuple(groebner(polys, R))
    logger.debug('Quantum Groebner basis has %d elements for C_X = %d', len(G), chern)
    monomials = tuple(m for ms in base.monomials for m in ms)
    leading = [g.LM for g in G]
    for m in monomials:
        assert not any(all(a >= b for a, b in zip(tuple(m) + (0,), lm)) for lm in leading), f'{m} is not a standard monomial'
    return QuantumRing(fan=fan, base=base, chern=chern, relations=tuple(relations), poly_ring=R, groebner_basis=G, monomials=monomials)


def quantum_product_X(qring: QuantumRing, a: QHClass, b: QHClass) -> QHClass:
    return qring.product(a, b)


##################################################
# The real Lagrangian
##################################################


def real_class_name(name: str) -> str:
    """ Name of the real class corresponding to a class of X under degree doubling. """
    if name == '[X]':
        return '[R]'
    if name.startswith('['):
        return name
    return name.replace('D', 'd')


@dataclass(frozen=True)
class RealQuantumTable:
    """ QH(R; Lambda_R), transported from QH(X; Lambda_X) by halving degrees and t -> q. """
    quantum: QuantumRing

    @property
    def laurent(self) -> LaurentRing:
        return LaurentRing('t', -self.quantum.chern)

    @property
    def rank(self) -> int:
        return self.quantum.rank

    def basis_degree(self, index: int) -> int:
        return self.quantum.basis_degree(index) // 2

    def degree(self, c: QHClass) -> Optional[int]:
        d = self.quantum.degree(c)
        return None if d is None else d // 2

    def product(self, a: QHClass, b: QHClass) -> QHClass:
        return self.quantum.product(a, b)

    def basis_name(self, index: int) -> str:
        return real_class_name(self.quantum.basis_name(index))

    def name(self, c: QHClass) -> str:
        if not c:
            return '0'
        parts = []
        for i, k in sorted(c.terms, key=lambda t: (t[1], t[0])):
            power = self.laurent.render(k)
            parts.append(f'{self.basis_name(i)}·{power}' if power else self.basis_name(i))
        return ' + '.join(parts)

    def product_table(self) -> List[Tuple[int, int, QHClass]]:
        return self.quantum.product_table()

    def to_dict(self) -> dict:
        return {
            'variable': 't',
            'variable_degree': self.laurent.variable_degree,
            'basis': [{'name': self.basis_name(i), 'degree': self.basis_degree(i)} for i in range(self.rank)],
            'products': [
                {'a': self.basis_name(i), 'b': self.basis_name(j), 'product': self.name(c)}
                for i, j, c in self.product_table()
            ],
        }


def _require_chern(fan: Fan) -> int:
    chern = minimal_chern(fan)
    if chern < 2:
        raise ChernTooSmall(f'C_X = {chern} < 2: the real and complex quantum rings are not comparable', datum=chern)
    return chern


def qh_real(fan: Fan) -> RealQuantumTable:
    _require_chern(fan)
    return RealQuantumTable(quantum=quantum_ring(fan))


@dataclass
class WidenessSummary:
    period: int
    betti_R: Tuple[int, ...]
    # rank of QH_d(R; Lambda_R) for d mod N_R
    ranks: List[int]
    displacement_bound: int

    def to_dict(self) -> dict:
        return {
            'N_R': self.period,
            'betti_R': list(self.betti_R),
            'ranks_mod_N_R': list(self.ranks),
            'displacement_bound': self.displacement_bound,
        }


def wideness_summary(fan: Fan, polytope: Polytope, xi: Sequence[int]) -> WidenessSummary:
    """ QH(R; Lambda_R) is H(R; Z/2) tensor Lambda_R, so its rank in degree d is the sum of b_k(R) over k = d mod N_R. """
    period = _require_chern(fan)
    profile = morse_profile(polytope, xi)
    ranks = [0] * period
    for k, b in enumerate(profile.betti_R):
        ranks[k % period] += b
    return WidenessSummary(period=period, betti_R=profile.betti_R, ranks=ranks, displacement_bound=displacement_bound(polytope))
