"""
Exact integer linear algebra over Z^n.

Matrices are numpy arrays with `dtype=object` holding Python integers, so nothing ever overflows. Vectors handed back to callers are plain tuples of ints.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from toric_real.errors import NotABasis, NotPrimitiveSystem, RaysDoNotSpan

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]
IntMatrix = np.ndarray


def as_int_matrix(rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """ Convert a list of integer rows into an object-dtype matrix. `ncols` is needed when the list is empty. """
    rows = [[int(x) for x in r] for r in rows]
    if len(rows) == 0:
        return np.zeros((0, ncols or 0), dtype=object)
    lengths = {len(r) for r in rows}
    if len(lengths) != 1:
        raise ValueError(f'Rows have different lengths: {sorted(lengths)}')
    m = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            m[i, j] = x
    return m


def identity(n: int) -> IntMatrix:
    return as_int_matrix([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)


def to_vectors(m: IntMatrix) -> List[IntVector]:
    return [tuple(int(x) for x in row) for row in m]


def pairing(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError(f'Cannot pair vectors of length {len(a)} and {len(b)}')
    return sum(x * y for x, y in zip(a, b))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


##################################################
# Hermite normal form
##################################################


def _exgcd(a: int, b: int) -> IntMatrix:
    """ A 2x2 integer matrix E of determinant 1 with E @ [a, b] = [g, 0], g = gcd(a, b) up to sign. """
    if b == 0:
        return identity(2)
    x0, x1, y0, y1 = 1, 0, 0, 1
    r0, r1 = a, b
    while r1 != 0:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    g = r0
    # x0*a + y0*b = g, and (-b/g, a/g) kills [a, b]
    return as_int_matrix([[x0, y0], [-b // g, a // g]])


def _inv_2x2(E: IntMatrix) -> IntMatrix:
    return as_int_matrix([[E[1, 1], -E[0, 1]], [-E[1, 0], E[0, 0]]])


def _hnf(M: IntMatrix, with_inverse: bool = False):
    H = M.copy()
    m, n = H.shape
    U = identity(m)
    Uinv = identity(m) if with_inverse else None
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i, c] == 0:
                continue
            E = _exgcd(H[r, c], H[i, c])
            H[[r, i]] = E @ H[[r, i]]
            U[[r, i]] = E @ U[[r, i]]
            if with_inverse:
                Uinv[:, [r, i]] = Uinv[:, [r, i]] @ _inv_2x2(E)
        if H[r, c] == 0:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
            U[r] = -U[r]
            if with_inverse:
                Uinv[:, r] = -Uinv[:, r]
        for i in range(r):
            f = H[i, c] // H[r, c]
            if f == 0:
                continue
            H[i] = H[i] - f * H[r]
            U[i] = U[i] - f * U[r]
            if with_inverse:
                Uinv[:, r] = Uinv[:, r] + f * Uinv[:, i]
        r += 1
    return H, U, Uinv


def hermite_normal_form(M) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row-style Hermite normal form by Euclidean reduction.

    Returns (H, U) with H = U @ M, U unimodular and H in row echelon form with positive pivots; entries above a pivot are reduced into [0, pivot).

    >>> H, U = hermite_normal_form([[2, 4], [1, 3]])
    >>> H.tolist()
    [[1, 1], [0, 2]]
    """
    M = M if isinstance(M, np.ndarray) else as_int_matrix(M)
    if M.size == 0 and M.shape[0] == 0:
        raise ValueError('Matrix must be nonempty')
    H, U, _ = _hnf(M)
    return H, U


def pivots(H: IntMatrix) -> List[Tuple[int, int]]:
    """ (column, value) of the pivot in every nonzero row of a matrix in Hermite normal form. """
    result = []
    for row in H:
        for j, x in enumerate(row):
            if x != 0:
                result.append((j, x))
                break
    return result


def rank(M) -> int:
    M = M if isinstance(M, np.ndarray) else as_int_matrix(M)
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    H, _ = hermite_normal_form(M)
    return len(pivots(H))


def abs_det(M) -> int:
    """ |det M| of a square integer matrix, read off the Hermite normal form. """
    M = M if isinstance(M, np.ndarray) else as_int_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f'Matrix is not square: {M.shape}')
    if M.shape[0] == 0:
        return 1
    H, _ = hermite_normal_form(M)
    piv = pivots(H)
    if len(piv) < M.shape[0]:
        return 0
    d = 1
    for _, p in piv:
        d *= p
    return int(d)


##################################################
# Kernels, completions, dual bases
##################################################


def kernel_basis(rays: Sequence[Sequence[int]], dim: Optional[int] = None) -> List[IntVector]:
    """
    A Z-basis of the kernel of Z^N -> Z^n, e_j -> v_j, where the v_j are the rows of `rays`.

    Raises RaysDoNotSpan if the rays do not span Q^n.
    """
    R = as_int_matrix(rays, ncols=dim)
    N, n = R.shape
    if N == 0:
        if n == 0:
            return []
        raise RaysDoNotSpan(f'No rays given in dimension {n}', datum={'rank': 0, 'dim': n})
    H, U = hermite_normal_form(R)
    r = len(pivots(H))
    if r < n:
        raise RaysDoNotSpan(f'Rays span a sublattice of rank {r} < {n}', datum={'rank': r, 'dim': n})
    basis = to_vectors(U[r:])
    for lam in basis:
        assert all(pairing(lam, R[:, k]) == 0 for k in range(n))
    return basis


def extend_to_basis(vectors: Sequence[Sequence[int]], dim: Optional[int] = None) -> List[IntVector]:
    """
    Complete linearly independent vectors of Z^n to a Z-basis.

    The completion is the one produced by the column-style Hermite reduction A V = [L | 0]: the rows k..n-1 of V^-1. Raises NotPrimitiveSystem when L is not unimodular, i.e. when no completion exists.
    """
    A = as_int_matrix(vectors, ncols=dim)
    k, n = A.shape
    if k == 0:
        return to_vectors(identity(n))
    if k > n:
        raise NotPrimitiveSystem(f'{k} vectors cannot be independent in Z^{n}', datum=to_vectors(A))
    H, _, Uinv = _hnf(A.T.copy(), with_inverse=True)
    piv = pivots(H)
    if len(piv) < k:
        raise NotPrimitiveSystem('Vectors are linearly dependent', datum=to_vectors(A))
    bad = [(c, int(p)) for c, p in piv if p != 1]
    if bad:
        raise NotPrimitiveSystem(f'Vectors span a non-saturated sublattice (pivots {bad})', datum=to_vectors(A))
    completion = to_vectors(Uinv[:, k:].T)
    logger.debug('Completed %s with %s', to_vectors(A), completion)
    return completion


@dataclass(frozen=True)
class DualBasis:
    """ A Z-basis of Z^n together with the dual basis of (Z^n)*, <dual[i], primal[j]> = delta_ij. """
    primal: Tuple[IntVector, ...]
    dual: Tuple[IntVector, ...]

    def swapped(self) -> 'DualBasis':
        return DualBasis(primal=self.dual, dual=self.primal)

    def coordinates(self, v: Sequence[int]) -> IntVector:
        """ Coefficients of v in the primal basis. """
        return tuple(int(pairing(d, v)) for d in self.dual)


def dual_basis(basis: Sequence[Sequence[int]]) -> DualBasis:
    B = as_int_matrix(basis)
    n, m = B.shape
    if n != m:
        raise NotABasis(f'{n} vectors in Z^{m} are not a basis', datum=to_vectors(B))
    H, U = hermite_normal_form(B)
    if not (H == identity(n)).all():
        raise NotABasis(f'|det| = {abs_det(B)} != 1', datum=to_vectors(B))
    # U = B^-1, so the dual basis is the rows of U^T
    return DualBasis(primal=tuple(to_vectors(B)), dual=tuple(to_vectors(U.T)))


##################################################
# Exact rational arithmetic
##################################################


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """ The unique solution x of A x = b over Q for square nonsingular A, or None if A is singular. """
    M = sympy.Matrix([[_to_sympy(x) for x in row] for row in A])
    if M.shape[0] == 0:
        return ()
    if M.det() == 0:
        return None
    rhs = sympy.Matrix([_to_sympy(x) for x in b])
    x = M.LUsolve(rhs)
    return tuple(Fraction(int(v.p), int(v.q)) for v in x)


def coordinates_in(generators: Sequence[Sequence[int]], v: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """ Rational coefficients c with sum c_i g_i = v for linearly independent generators, or None if v is outside their span. """
    k = len(generators)
    if k == 0:
        return () if all(x == 0 for x in v) else None
    G = [[Fraction(g[r]) for g in generators] for r in range(len(v))]
    # Pick k independent equations, solve, then check the rest
    for rows in itertools.combinations(range(len(v)), k):
        sol = solve_rational([G[r] for r in rows], [v[r] for r in rows])
        if sol is None:
            continue
        if all(sum(G[r][i] * sol[i] for i in range(k)) == v[r] for r in range(len(v))):
            return sol
        return None
    return None


def fourier_motzkin_feasible(inequalities: Sequence[Tuple[Sequence, object]], num_vars: int) -> bool:
    """
    Decide exactly whether {x : a.x <= b for every (a, b)} is nonempty by Fourier-Motzkin elimination.
    """
    system = [([Fraction(a) for a in coeffs], Fraction(rhs)) for coeffs, rhs in inequalities]
    for k in range(num_vars):
        pos, neg, rest = [], [], []
        for coeffs, rhs in system:
            if coeffs[k] > 0:
                pos.append((coeffs, rhs))
            elif coeffs[k] < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        combined = set()
        for (cp, bp), (cn, bn) in itertools.product(pos, neg):
            s, t = -cn[k], cp[k]
            coeffs = tuple(s * x + t * y for x, y in zip(cp, cn))
            rhs = s * bp + t * bn
            combined.add(_normalize(coeffs, rhs))
        system = rest + [(list(c), r) for c, r in combined]
        system = list({_normalize(c, r) for c, r in system})
        system = [(list(c), r) for c, r in system]
    return all(rhs >= 0 for _, rhs in system)


def _normalize(coeffs, rhs):
    scale = max([abs(c) for c in coeffs] + [Fraction(0)])
    if scale == 0:
        return tuple(coeffs), (Fraction(0) if rhs >= 0 else Fraction(-1))
    return tuple(c / scale for c in coeffs), rhs / scale


def _to_sympy(x) -> sympy.Rational:
    f = Fraction(x)
    return sympy.Rational(f.numerator, f.denominator)
