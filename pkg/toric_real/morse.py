"""
Morse theory of f_xi = <mu, xi> on X and on its real part R.

Critical points sit over the vertices of the moment polytope. At a vertex, the Morse index on R is the number of edges leaving it along which xi decreases, and the index on X is twice that.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from toric_real.errors import MismatchedInput, NonGenericXi, WrongLength
from toric_real.homology import GradedBasis
from toric_real.lattice import IntVector, dual_basis, pairing
from toric_real.polytope import Polytope, Vertex, require_delzant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MorseDatum:
    vertex: Vertex
    edge_directions: Tuple[IntVector, ...]
    index_R: int
    index_X: int


@dataclass(frozen=True)
class MorseProfile:
    data: Tuple[MorseDatum, ...]
    xi: IntVector
    betti_R: Tuple[int, ...]
    betti_X: Tuple[int, ...]

    @property
    def total_betti_R(self) -> int:
        return sum(self.betti_R)

    @property
    def euler_characteristic_R(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti_R))

    def poincare_polynomial(self) -> Tuple[int, ...]:
        """ Coefficients of sum_k b_k(R) t^k, which equals sum over vertices of t^index_R for a perfect Morse function. """
        return self.betti_R

    def to_dict(self) -> dict:
        return {
            'xi': list(self.xi),
            'betti_R': list(self.betti_R),
            'betti_X': list(self.betti_X),
            'vertices': [
                {
                    'vertex': d.vertex.label(),
                    'edge_directions': [list(e) for e in d.edge_directions],
                    'index_R': d.index_R,
                    'index_X': d.index_X,
                }
                for d in self.data
            ],
        }


def edge_directions(polytope: Polytope, vertex: Vertex) -> Tuple[IntVector, ...]:
    """ Inward primitive edge directions at a vertex, one per active facet: the basis dual to the active normals. """
    require_delzant(polytope)
    return dual_basis([polytope.normals[i] for i in vertex.active_facets]).dual


def morse_profile(polytope: Polytope, xi: Sequence[int]) -> MorseProfile:
    n = polytope.dim
    xi = tuple(int(x) for x in xi)
    if len(xi) != n:
        raise WrongLength(f'xi has {len(xi)} entries, expected {n}', datum=list(xi))
    require_delzant(polytope)
    data = []
    for v in polytope.vertex_list:
        directions = dual_basis([polytope.normals[i] for i in v.active_facets]).dual
        values = [pairing(d, xi) for d in directions]
        for d, value in zip(directions, values):
            if value == 0:
                raise NonGenericXi(
                    f'xi = {xi} is constant along the edge {d} at vertex {v.label()}',
                    datum={'vertex': v.label(), 'edge': list(d)})
        index_R = sum(1 for value in values if value < 0)
        data.append(MorseDatum(vertex=v, edge_directions=directions, index_R=index_R, index_X=2 * index_R))
    betti_R = [0] * (n + 1)
    for d in data:
        betti_R[d.index_R] += 1
    betti_X = [0] * (2 * n + 1)
    for k, b in enumerate(betti_R):
        betti_X[2 * k] = b
    logger.debug('Morse indices for xi = %s: %s', xi, [d.index_R for d in data])
    return MorseProfile(data=tuple(data), xi=xi, betti_R=tuple(betti_R), betti_X=tuple(betti_X))


@dataclass
class ComparisonReport:
    rows: List[Tuple[int, int, int]] = field(default_factory=list)
    mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            'ok': self.ok,
            'rows': [{'k': k, 'b_k(R)': b, 'rank H_2k(X)': r} for k, b, r in self.rows],
            'mismatches': list(self.mismatches),
        }


def compare_with_homology(profile: MorseProfile, basis: GradedBasis) -> ComparisonReport:
    """ Check that b_k(R) = rank H_2k(X; Z/2) for every k, i.e. that H_*(R) -> H_2*(X) doubles degrees. """
    n = len(profile.betti_R) - 1
    if n != basis.dim:
        raise MismatchedInput(f'Morse profile has dimension {n} but the homology basis has dimension {basis.dim}')
    report = ComparisonReport()
    for k, b in enumerate(profile.betti_R):
        r = basis.rank(2 * k)
        report.rows.append((k, b, r))
        if b != r:
            report.mismatches.append(f'b_{k}(R) = {b} but rank H_{2 * k}(X) = {r}')
    if profile.total_betti_R != basis.total_rank:
        report.mismatches.append(f'sum b_k(R) = {profile.total_betti_R} but total rank of H_*(X) = {basis.total_rank}')
    return report


def displacement_bound(polytope: Polytope) -> int:
    """ Lower bound for #(R cap phi(R)) under a generic Hamiltonian diffeomorphism phi: the number of vertices. """
    require_delzant(polytope)
    return len(polytope.vertex_list)


def suggest_xi(polytope: Polytope, max_base: int = 1000) -> IntVector:
    """ The first generic xi of the form (1, M, M^2, ...) for M = 2, 3, ... """
    require_delzant(polytope)
    directions = [
        d for v in polytope.vertex_list
        for d in dual_basis([polytope.normals[i] for i in v.active_facets]).dual
    ]
    for M in itertools.count(2):
        if M > max_base:
            raise NonGenericXi(f'No generic xi of the form (1, M, M^2, ...) with M <= {max_base}')
        xi = tuple(M ** k for k in range(polytope.dim))
        if all(pairing(d, xi) != 0 for d in directions):
            return xi


def check_xi_invariance(polytope: Polytope, xis: Sequence[Sequence[int]]) -> bool:
    """ True if every xi yields the same Betti numbers of R. """
    betti = {morse_profile(polytope, xi).betti_R for xi in xis}
    if len(betti) > 1:
        logger.warning('Betti numbers depend on xi: %s', sorted(betti))
    return len(betti) <= 1
