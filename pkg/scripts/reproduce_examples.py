import argparse
import itertools
from functools import reduce

from tabulate import tabulate

from toric_real.curves import curve_class, infinity_stratum, maslov_general, reparametrize
from toric_real.errors import ChernTooSmall, NonGenericXi
from toric_real.fan import minimal_chern
from toric_real.homology import chern_pairing, homology_ring
from toric_real.lattice import kernel_basis
from toric_real.morse import displacement_bound, morse_profile
from toric_real.polytope import Polytope, delzant_check
from toric_real.presets import builtin_disc, builtin_geometry
from toric_real.quantum import qh_real, quantum_ring


def print_quantum_tables(name):
    geometry = builtin_geometry(name)
    qring = quantum_ring(geometry.fan)
    print(f'{name}: C_X = {qring.chern}')
    rows = [
        [qring.basis_name(i, geometry.unit_name), qring.basis_name(j, geometry.unit_name), qring.name(c, geometry.unit_name)]
        for i, j, c in qring.product_table()
    ]
    print(tabulate(rows, headers=['a', 'b', 'a * b']))
    try:
        table = qh_real(geometry.fan)
    except ChernTooSmall as e:
        print(f'QH(R) not computed: {e}')
        return
    rows = [
        [table.basis_name(i), table.basis_name(j), table.name(c).replace('[R]', geometry.real_unit_name)]
        for i, j, c in table.product_table()
    ]
    print(tabulate(rows, headers=['a', 'b', 'a * b']))


def print_powers(name):
    """ h^{*k} for the hyperplane class h = D1 of CP^n. """
    geometry = builtin_geometry(name)
    qring = quantum_ring(geometry.fan)
    h = qring.divisor(0)
    n = qring.dim
    for k in range(1, n + 2):
        power = reduce(qring.product, [h] * k)
        print(f'\th^{k} = {qring.name(power, geometry.unit_name)}')


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description='Print the worked examples: CP^n, CP^1 x CP^1 and the blow-up of CP^2.')
    parser.add_argument('--max-n', type=int, default=3,
                        help='Largest n for which CP^n is computed.')
    parser.add_argument('--xi-range', type=int, default=3,
                        help='Entries of the vectors xi tried for the Morse functions range over 1..xi_range and their negatives.')
    args = parser.parse_args()

    builtins = [f'cp:{n}' for n in range(1, args.max_n + 1)] + ['cp1xcp1', 'blowup-cp2']

    print('Minimal Chern numbers')
    for name in builtins:
        print(f'\t{name}: {minimal_chern(builtin_geometry(name).fan)}')

    print('-' * 80)

    for name in builtins:
        print_quantum_tables(name)
        print()
    for n in range(1, args.max_n + 1):
        print(f'Powers of the hyperplane class in QH(CP^{n})')
        print_powers(f'cp:{n}')

    print('-' * 80)

    values = [x for x in range(-args.xi_range, args.xi_range + 1) if x]
    for name in builtins:
        geometry = builtin_geometry(name)
        betti = set()
        for xi in itertools.product(values, repeat=geometry.polytope.dim):
            try:
                betti.add(morse_profile(geometry.polytope, xi).betti_R)
            except NonGenericXi:
                continue
        _, basis = homology_ring(geometry.fan)
        ranks = tuple(basis.rank(2 * k) for k in range(basis.dim + 1))
        print(f'{name}: betti_R over generic xi = {sorted(betti)}, rank H_2k(X) = {ranks}, displacement bound = {displacement_bound(geometry.polytope)}')

    print('-' * 80)

    geometry = builtin_geometry('blowup-cp2')
    fan = geometry.fan
    print(f'Curve classes of the blow-up: {kernel_basis(fan.rays, dim=fan.dim)}')
    _, original = builtin_disc('paper-disc-original')
    print(f'u = (z, 1, 1, 0): u(infinity) lies on the divisors {[i + 1 for i in infinity_stratum(fan, original)]}')
    disc = reparametrize(original, (1, 0, 1, -1), fan)
    result = maslov_general(fan, disc, [(1, 1)])
    lam = curve_class(fan, disc)
    print(f'u o phi: mu = {result.mu}, class of the double = {lam}, c1 = {chern_pairing(fan, lam)}')

    print('-' * 80)

    triangle = Polytope(dim=2, normals=[(1, 0), (0, 1), (-1, -2)], offsets=[1, 1, 3])
    report = delzant_check(triangle)
    print(f'Triangle with normals (1,0), (0,1), (-1,-2): Delzant = {report.delzant}')
    for c in report.certificates:
        print(f'\t{c}')
