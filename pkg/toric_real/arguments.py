from argparse import ArgumentParser, ArgumentTypeError
from fractions import Fraction


def int_vector(text: str):
    try:
        return tuple(int(x) for x in text.split(','))
    except ValueError:
        raise ArgumentTypeError(f'Expected comma separated integers, got {text!r}')


def rational_vector(text: str):
    try:
        return tuple(Fraction(x.strip()) for x in text.split(','))
    except ValueError:
        raise ArgumentTypeError(f'Expected comma separated rationals, got {text!r}')


def int_vectors(text: str):
    """ Vectors separated by ';', e.g. "1,1" or "1,0,0;0,1,0". """
    return [int_vector(v) for v in text.split(';') if v]


def name_list(text: str):
    return [x.strip() for x in text.split(',') if x.strip()]


def init_parser_input(parser: ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--builtin', type=str, default=None,
                       help='Builtin geometry: cp:n, cp1xcp1 or blowup-cp2.')
    group.add_argument('--file', type=str, default=None,
                       help='JSON file with a fan, a polytope, both, or a disc.')
    parser.add_argument('--disc', type=str, default=None,
                        help='JSON disc file, or builtin:<name> for a builtin disc (paper-disc, paper-disc-original, cp1-line, cp2-line).')


def init_parser_output(parser: ArgumentParser):
    parser.add_argument('--json', action='store_true', default=False,
                        help='Print a machine-readable JSON report instead of tables.')
    parser.add_argument('--results', type=str, default=None,
                        help='Directory in which to save the JSON report. A unique file name is chosen.')
    parser.add_argument('--verbose', action='store_true', default=False,
                        help='Log debug information to stderr.')


def init_parser_morse(parser: ArgumentParser):
    parser.add_argument('--xi', type=int_vector, default=None,
                        help='Integer vector xi defining the Morse function <mu, xi>, e.g. 1,2. A generic one is chosen if omitted.')


def init_parser_curves(parser: ArgumentParser):
    parser.add_argument('--mobius', type=rational_vector, default=None,
                        help='Reparametrize the disc by z -> (az + b) / (cz + d) first. Given as a,b,c,d.')
    parser.add_argument('--extension', type=int_vectors, default=None,
                        help='Vectors completing the rays of I_0 to a Z-basis, separated by ";".')
    parser.add_argument('--samples', type=int, default=20,
                        help='Number of random points or random discs used by numerical checks.')
    parser.add_argument('--seed', type=int, default=0,
                        help='Seed for the random checks.')


def init_parser_quantum(parser: ArgumentParser):
    parser.add_argument('--product', type=name_list, default=None,
                        help='Classes to multiply, e.g. D1,D1,D1 or pt,X.')
