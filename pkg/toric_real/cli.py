"""
Command line front end.

    toric <verb> (--builtin ID | --file PATH) [--disc PATH | --disc builtin:NAME] [options]

Exit codes: 0 on success, 1 on a domain error (printed with its name), 2 on a usage error.
"""
import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Optional, Tuple

import numpy as np
from tabulate import tabulate
from tqdm import tqdm

from toric_real.arguments import init_parser_curves, init_parser_input, init_parser_morse, init_parser_output, init_parser_quantum
from toric_real.curves import (
        RealDiscLift, curve_class, infinity_stratum, maslov_general,
        maslov_zero_count, random_lift, reparametrize, suggest_mobius,
        validate_lift)
from toric_real.errors import MismatchedInput, ParseError, ToricError, ValidationError
from toric_real.fan import is_fano, minimal_chern, primitive_collections
from toric_real.homology import chern_pairing, divisor_class, fundamental_class, homology_ring, intersection_product, point_class
from toric_real.lattice import kernel_basis
from toric_real.morse import compare_with_homology, displacement_bound, morse_profile, suggest_xi
from toric_real.polytope import MOMENT_TOLERANCE, delzant_check, lattice_points, moment_round_trip, normal_fan, require_delzant
from toric_real.presets import Geometry, builtin_disc, builtin_geometry, disc_from_dict, geometry_from_dict
from toric_real.quantum import QHClass, qh_real, quantum_ring, wideness_summary
from toric_real.utils import create_unique_file, generate_id, json_save, to_jsonable

logger = logging.getLogger(__name__)

SCHEMA = 1

# info and check report on invalid geometries instead of rejecting them
LENIENT_VERBS = ('info', 'check')

VERBS = {
    'check': 'Run every consistency check on a geometry.',
    'fan': 'Validate the fan and list its combinatorial invariants.',
    'homology': 'Z/2 homology ring of X.',
    'morse': 'Morse indices of <mu, xi> and the Betti numbers of R.',
    'maslov': 'Maslov index of a real disc.',
    'quantum': 'Quantum cohomology of X.',
    'real': 'Quantum homology of the real Lagrangian R.',
    'info': 'Polytope, vertices and summary invariants.',
}


@dataclass
class Report:
    verb: Optional[str]
    payload: dict = field(default_factory=dict)
    exit_code: int = 0
    error: Optional[dict] = None

    def to_dict(self) -> dict:
        result = {'schema': SCHEMA, 'verb': self.verb}
        if self.error is not None:
            result['error'] = self.error
        else:
            result['result'] = self.payload
        return result


def init_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    init_parser_input(common)
    init_parser_output(common)
    init_parser_morse(common)
    init_parser_curves(common)
    init_parser_quantum(common)

    parser = ArgumentParser(prog='toric', description='Invariants of smooth toric manifolds and their real Lagrangians.')
    subparsers = parser.add_subparsers(dest='verb', required=True)
    for verb, help in VERBS.items():
        subparsers.add_parser(verb, parents=[common], help=help, description=help)
    return parser


##################################################
# Input
##################################################


def _read_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f'{path}: line {e.lineno} column {e.colno}: {e.msg}', datum={'line': e.lineno, 'column': e.colno}) from e
    except OSError as e:
        raise ParseError(f'Cannot read {path}: {e.strerror}', datum=path) from e


def _check_fan(geometry: Geometry, strict: bool = True) -> Geometry:
    """ In strict mode the fan must be valid. When the fan is the normal fan of a given polytope, a non-Delzant polytope is named as the cause. """
    report = geometry.fan.report
    if not strict or report.valid:
        return geometry
    if geometry.fan_from_polytope:
        require_delzant(geometry.polytope)
    raise ValidationError('; '.join(report.failures), datum=report.failures)


def parse_input(path: Optional[str] = None, builtin: Optional[str] = None, strict: bool = True):
    """ A Geometry for a builtin or a geometry file, or (Geometry, RealDiscLift) for a disc file. """
    if (path is None) == (builtin is None):
        raise ParseError('Exactly one of a file or a builtin must be given')
    if builtin is not None:
        return _check_fan(builtin_geometry(builtin), strict)
    data = _read_json(path)
    if not isinstance(data, dict):
        raise ParseError(f'{path}: expected a JSON object at the top level')
    if 'components' in data:
        geometry, lift = disc_from_dict(data)
        return _check_fan(geometry, strict), lift
    return _check_fan(geometry_from_dict(data, name=path), strict)


def load_disc(source: str, geometry: Optional[Geometry]) -> Tuple[Geometry, RealDiscLift]:
    if source.startswith('builtin:'):
        disc_geometry, lift = builtin_disc(source[len('builtin:'):])
    else:
        data = _read_json(source)
        if not isinstance(data, dict):
            raise ParseError(f'{source}: expected a JSON object at the top level')
        disc_geometry, lift = disc_from_dict(data, geometry if 'fan' not in data else None)
    if geometry is None:
        return _check_fan(disc_geometry), lift
    if disc_geometry.fan != geometry.fan:
        raise MismatchedInput(f'The disc is given on {disc_geometry.name}, not on {geometry.name}', datum=disc_geometry.name)
    return geometry, lift


def _load(args: Namespace) -> Tuple[Geometry, Optional[RealDiscLift]]:
    geometry = None
    lift = None
    if args.builtin is not None or args.file is not None:
        parsed = parse_input(path=args.file, builtin=args.builtin, strict=args.verb not in LENIENT_VERBS)
        geometry, lift = parsed if isinstance(parsed, tuple) else (parsed, None)
    if args.disc is not None:
        geometry, lift = load_disc(args.disc, geometry)
    return geometry, lift


##################################################
# Commands
##################################################


def _vector(v) -> str:
    return '(' + ','.join(str(x) for x in v) + ')'


def _indices(c) -> str:
    """ 1-based index sets, matching the names D1..DN. """
    return '{' + ','.join(str(i + 1) for i in c) + '}'


def cmd_fan(args, geometry: Geometry, lift) -> Tuple[dict, str]:
    fan = geometry.fan
    report = fan.report
    payload = {'fan': fan.to_dict(), 'report': report.to_dict()}
    lines = [tabulate([[f'D{i + 1}', _vector(r)] for i, r in enumerate(fan.rays)], headers=['Divisor', 'Ray'], tablefmt='simple_grid')]
    lines.append(f'Maximal cones: {", ".join(_indices(c) for c in fan.max_cones)}')
    lines.append(f'Smooth: {report.smooth}  Complete: {report.complete}')
    collections = primitive_collections(fan)
    payload['primitive_collections'] = [list(c) for c in collections]
    lines.append(f'Primitive collections: {", ".join(_indices(c) for c in collections)}')
    basis = kernel_basis(fan.rays, dim=fan.dim)
    payload['kernel_basis'] = [list(b) for b in basis]
    lines.append(f'Curve classes (kernel basis): {", ".join(_vector(b) for b in basis)}')
    if report.complete:
        payload['minimal_chern'] = minimal_chern(fan)
        payload['fano'] = is_fano(fan)
        lines.append(f'C_X = {payload["minimal_chern"]}  Fano: {payload["fano"]}')
    return payload, '\n'.join(lines)


def cmd_info(args, geometry: Geometry, lift) -> Tuple[dict, str]:
    polytope = geometry.polytope
    report = delzant_check(polytope)
    rows = [[v.label(), _indices(v.active_facets)] for v in polytope.vertex_list]
    payload = {
        'name': geometry.name,
        'polytope': polytope.to_dict(),
        'vertices': [{'point': v.label(), 'active_facets': list(v.active_facets)} for v in polytope.vertex_list],
        'delzant': report.to_dict(),
    }
    lines = [f'{geometry.name}: dimension {polytope.dim}, {polytope.num_facets} facets']
    lines.append(tabulate(rows, headers=['Vertex', 'Active facets'], tablefmt='simple_grid'))
    lines.append(f'Lattice: {report.lattice}  Delzant: {report.delzant}')
    lines.extend(f'  {c}' for c in report.lattice_certificates + report.certificates)
    if report.lattice:
        payload['lattice_points'] = lattice_points(polytope).num_points
        lines.append(f'Lattice points: {payload["lattice_points"]}')
    if report.delzant:
        payload['displacement_bound'] = displacement_bound(polytope)
        payload['minimal_chern'] = minimal_chern(geometry.fan)
        lines.append(f'C_X = {payload["minimal_chern"]}  Displacement bound: {payload["displacement_bound"]}')
    return payload, '\n'.join(lines)


def _homology_class(basis, name: str):
    key = name.strip()
    if key in ('pt', '[pt]'):
        return point_class(basis)
    if key in ('X', '[X]', '1'):
        return fundamental_class(basis)
    if key[:1] in ('D', 'd') and key[1:].isdigit():
        return divisor_class(basis, int(key[1:]) - 1)
    raise ParseError(f'Unknown class {name!r}; expected D<k>, pt or X', datum=name)


def cmd_homology(args, geometry: Geometry, lift) -> Tuple[dict, str]:
    pres, basis = homology_ring(geometry.fan)
    rows = []
    for degree in range(2 * basis.dim, -1, -2):
        names = [basis.monomial_name(m) for m in basis.by_degree[degree]]
        rows.append([degree, 2 * basis.dim - degree, basis.rank(degree), ', '.join(geometry.unit_name if n == '[X]' else n for n in names)])
    payload = {
        'ranks': {str(d): basis.rank(d) for d in range(0, 2 * basis.dim + 1, 2)},
        'total_rank': basis.total_rank,
        'sr_generators': [list(c) for c in pres.sr_generators],
        'eliminated_cone': list(pres.eliminated_cone),
    }
    lines = [tabulate(rows, headers=['H_d', 'H^k', 'Rank', 'Basis'], tablefmt='simple_grid')]
    lines.append(f'Degrees: homological d = 2n - k for cohomological k (n = {basis.dim})')
    if args.product:
        classes = [_homology_class(basis, name) for name in args.product]
        product = reduce(lambda a, b: intersection_product(basis, a, b), classes)
        name = basis.name(product, geometry.unit_name)
        payload['product'] = {'factors': args.product, 'degree': product.degree, 'result': name}
        lines.append(f'{" ∩ ".join(args.product)} = {name}')
    return payload, '\n'.join(lines)


def _xi(args, geometry: Geometry):
    if args.xi is not None:
        return args.xi
    xi = suggest_xi(geometry.polytope)
    logger.info('Using xi = %s', xi)
    return xi


def cmd_morse(args, geometry: Geometry, lift) -> Tuple[dict, str]:
    profile = morse_profile(geometry.polytope, _xi(args, geometry))
    _, basis = homology_ring(geometry.fan)
    comparison = compare_with_homology(profile, basis)
    bound = displacement_bound(geometry.polytope)
    rows = [[d.vertex.label(), ' '.join(_vector(e) for e in d.edge_directions), d.index_R, d.index_X] for d in profile.data]
    payload = {'profile': profile.to_dict(), 'comparison': comparison.to_dict(), 'displacement_bound': bound}
    lines = [f'xi = {_vector(profile.xi)}']
    lines.append(tabulate(rows, headers=['Vertex', 'Edge directions', 'index_R', 'index_X'], tablefmt='simple_grid'))
    lines.append(f'betti_R = {",".join(str(b) for b in profile.betti_R)}')
    lines.append(f'betti_X = {",".join(str(b) for b in profile.betti_X)}')
    lines.append(f'Euler characteristic of R: {profile.euler_characteristic_R}')
    lines.append(f'Degree doubling b_k(R) = rank H_2k(X): {"ok" if comparison.ok else "; ".join(comparison.mismatches)}')
    lines.append(f'Displacement bound: {bound}')
    return payload, '\n'.join(lines)


def cmd_maslov(args, geometry: Geometry, lift: Optional[RealDiscLift]) -> Tuple[dict, str]:
    if lift is None:
        raise ParseError('The maslov command needs a disc (--disc or a disc --file)')
    fan = geometry.fan
    lines = []
    payload = {'disc': lift.to_dict()}
    if args.mobius is not None:
        lift = reparametrize(lift, args.mobius, fan)
        payload['reparametrized'] = lift.to_dict()
        lines.append(f'Reparametrized by (az + b) / (cz + d) with (a, b, c, d) = {_vector(args.mobius)}')
    validate_lift(fan, lift)
    I_inf = infinity_stratum(fan, lift)
    payload['I0'] = list(lift.zero_set)
    payload['I_inf'] = list(I_inf)
    rows = [[f'D{i + 1}', 'zero' if w.is_zero else w.alpha, '' if w.is_zero else w.beta] for i, w in enumerate(lift.components)]
    lines.append(tabulate(rows, headers=['Component', 'alpha', 'beta'], tablefmt='simple_grid'))
    lines.append(f'I_0 = {_indices(lift.zero_set)}  I_inf = {_indices(I_inf)}')
    if set(I_inf) != set(lift.zero_set):
        payload['suggested_mobius'] = list(suggest_mobius(fan, lift))
    result = maslov_general(fan, lift, args.extension)
    payload['maslov'] = result.to_dict()
    if not lift.zero_set and not I_inf:
        payload['maslov_zero_count'] = maslov_zero_count(fan, lift).mu
    lam = curve_class(fan, lift)
    payload['curve_class'] = list(lam)
    payload['c1'] = chern_pairing(fan, lam)
    lines.append(f'Curve class of the double: {_vector(lam)}, c1 = {payload["c1"]}')
    lines.append(f'μ = {result.mu}')
    return payload, '\n'.join(lines)


def _quantum_class(qring, name: str, unit_name: str) -> QHClass:
    key = name.strip()
    if key in ('pt', '[pt]'):
        return qring.point()
    if key in ('X', '[X]', 'R', '[R]', '1', unit_name):
        return qring.unit()
    if key[:1] in ('D', 'd') and key[1:].isdigit():
        return qring.divisor(int(key[1:]) - 1)
    raise ParseError(f'Unknown class {name!r}; expected D<k>, pt or X', datum=name)


def cmd_quantum(args, geometry: Geometry, lift) -> Tuple[dict, str]:
    qring = quantum_ring(geometry.fan)
    payload = {
        'minimal_chern': qring.chern,
        'q_degree': qring.laurent.variable_degree,
        'relations': [r.to_dict() for r in qring.relations],
    }
    lines = [f'C_X = {qring.chern}, |q| = {qring.laurent.variable_degree}']
    lines.extend(f'  {r.render()}' for r in qring.relations)
    if args.product:
        classes = [_quantum_class(qring, name, geometry.unit_name) for name in args.product]
        product = reduce(qring.product, classes)
        name = qring.name(product, geometry.unit_name)
        payload['product'] = {'factors': args.product, 'result': name}
        lines.append(f'{" * ".join(args.product)} = {name}')
    else:
        table = [
            [qring.basis_name(i, geometry.unit_name), qring.basis_name(j, geometry.unit_name), qring.name(c, geometry.unit_name)]
            for i, j, c in qring.product_table()
        ]
        payload['products'] = [dict(zip(['a', 'b', 'product'], row)) for row in table]
        lines.append(tabulate(table, headers=['a', 'b', 'a * b'], tablefmt='simple_grid'))
    return payload, '\n'.join(lines)


def cmd_real(args, geometry: Geometry, lift) -> Tuple[dict, str]:
    table = qh_real(geometry.fan)
    summary = wideness_summary(geometry.fan, geometry.polytope, _xi(args, geometry))
    unit = geometry.real_unit_name

    def name(c):
        return table.name(c).replace('[R]', unit)

    rows = [[name(table.quantum.basis(i)), name(table.quantum.basis(j)), name(c)] for i, j, c in table.product_table()]
    payload = {'table': table.to_dict(), 'wideness': summary.to_dict()}
    lines = [f'N_R = {summary.period}, |t| = {table.laurent.variable_degree}']
    lines.append(tabulate(rows, headers=['a', 'b', 'a * b'], tablefmt='simple_grid'))
    if args.product:
        classes = [_quantum_class(table.quantum, n, unit) for n in args.product]
        product = reduce(table.product, classes)
        payload['product'] = {'factors': args.product, 'result': name(product)}
        lines.append(f'{" * ".join(args.product)} = {name(product)}')
    lines.append(f'Rank of QH(R) by degree mod N_R: {",".join(str(r) for r in summary.ranks)}')
    lines.append(f'Displacement bound: {summary.displacement_bound}')
    return payload, '\n'.join(lines)


def cmd_check(args, geometry: Geometry, lift) -> Tuple[dict, str, List[str]]:
    fan = geometry.fan
    polytope = geometry.polytope
    checks = []
    checks.append(('fan valid and complete', fan.report.valid and fan.report.complete, '; '.join(fan.report.failures)))
    delzant = delzant_check(polytope)
    checks.append(('polytope Delzant', delzant.delzant, '; '.join(delzant.certificates)))
    checks.append(('polytope lattice', delzant.lattice, '; '.join(delzant.lattice_certificates)))
    if delzant.delzant:
        dual = normal_fan(polytope)
        same = dual.rays == fan.rays and {frozenset(c) for c in dual.max_cones} == {frozenset(c) for c in fan.max_cones}
        checks.append(('normal fan equals fan', same, ''))
        if delzant.lattice:
            errors = [e for _, e in moment_round_trip(polytope)]
            checks.append((f'moment map round trip (tolerance {MOMENT_TOLERANCE:g})', max(errors) <= MOMENT_TOLERANCE, f'max error {max(errors):.3g}'))
        profile = morse_profile(polytope, _xi(args, geometry))
        _, basis = homology_ring(fan)
        comparison = compare_with_homology(profile, basis)
        checks.append(('b_k(R) = rank H_2k(X)', comparison.ok, '; '.join(comparison.mismatches)))

    if fan.report.valid and fan.report.complete:
        rng = np.random.default_rng(args.seed)
        failures = []
        for _ in tqdm(range(args.samples), desc='Maslov oracle', file=sys.stderr, disable=args.json):
            disc = random_lift(fan, rng)
            zero_count = maslov_zero_count(fan, disc).mu
            general = maslov_general(fan, disc).mu
            c1 = chern_pairing(fan, curve_class(fan, disc))
            if not zero_count == general == c1:
                failures.append(f'degrees {disc.degrees}: {zero_count}, {general}, {c1}')
        checks.append((f'Maslov oracle on {args.samples} random discs', not failures, '; '.join(failures[:3])))

    payload = {'checks': [{'name': n, 'ok': ok, 'detail': d} for n, ok, d in checks]}
    lines = [tabulate([[n, 'ok' if ok else 'FAIL', d] for n, ok, d in checks], headers=['Check', 'Result', 'Detail'], tablefmt='simple_grid')]
    return payload, '\n'.join(lines), [n for n, ok, _ in checks if not ok]


COMMANDS = {
    'fan': cmd_fan,
    'info': cmd_info,
    'homology': cmd_homology,
    'morse': cmd_morse,
    'maslov': cmd_maslov,
    'quantum': cmd_quantum,
    'real': cmd_real,
}


##################################################
# Entry points
##################################################


def _emit(args: Namespace, report: Report, text: Optional[str]):
    if args.json:
        print(json.dumps(to_jsonable(report.to_dict()), indent=2, sort_keys=True, ensure_ascii=False))
    elif report.error is not None:
        if text:
            print(text)
        print(f'error: {report.error["name"]}: {report.error["message"]}', file=sys.stderr)
    elif text:
        print(text)
    if args.results is not None:
        filename = create_unique_file(args.results, f'{report.verb}-{generate_id()}', 'json')
        json_save(report.to_dict(), filename)
        print(f'Results saved to {filename}', file=sys.stderr)


def run(argv: Optional[List[str]] = None) -> Report:
    parser = init_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return Report(verb=None, exit_code=e.code if isinstance(e.code, int) else 2)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)

    report = Report(verb=args.verb)
    text = None
    try:
        geometry, lift = _load(args)
        if geometry is None:
            parser.error('one of --builtin, --file or --disc is required')
        if args.verb == 'check':
            report.payload, text, failed = cmd_check(args, geometry, lift)
            if failed:
                error = ValidationError(f'Failed checks: {", ".join(failed)}', datum=failed)
                report.error = error.to_dict()
                report.exit_code = 1
        else:
            report.payload, text = COMMANDS[args.verb](args, geometry, lift)
    except ToricError as e:
        logger.debug('Domain error', exc_info=True)
        report.error = e.to_dict()
        report.exit_code = 1
    except SystemExit as e:
        return Report(verb=args.verb, exit_code=e.code if isinstance(e.code, int) else 2)
    _emit(args, report, text)
    return report


def main():
    sys.exit(run().exit_code)


if __name__ == '__main__':
    main()
