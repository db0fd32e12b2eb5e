from fractions import Fraction

import numpy as np
import pytest

from toric_real.curves import (
        LiftComponent, RealDiscLift, chart_coords, constant, curve_class, infinity_stratum,
        linear, maslov_general, maslov_zero_count, random_lift,
        reparametrize, same_point, suggest_mobius, validate_lift,
        verify_double_symmetry)
from toric_real.errors import (
        BadExtension, DegenerateMobius, InfinityConditionFails, InvalidLift,
        NotACone, NotApplicable, NotInChart, OutsideU, WrongLength)
from toric_real.homology import chern_pairing, divisor_expansion
from toric_real.presets import builtin_disc, builtin_geometry

BUILTINS = ['cp:1', 'cp:2', 'cp:3', 'cp1xcp1', 'blowup-cp2']

# Points of the upper half-plane away from every root and pole used below
SAMPLES = [0.3 + 0.7j, -1.5 + 2j, 2 + 0.5j, 0.25j]


def blowup():
    return builtin_geometry('blowup-cp2').fan


def blowup_disc():
    """ (z, 1, z - 1, 0) on the blow-up of CP^2 """
    return RealDiscLift([linear(0), constant(1), linear(1), LiftComponent.zero()])


def original_disc():
    """ (z, 1, 1, 0), which meets D_3 at infinity """
    return RealDiscLift([linear(0), constant(1), constant(1), LiftComponent.zero()])


##################################################
# Lifts
##################################################


def test_counting_data():
    lift = RealDiscLift([
        LiftComponent(leading=2, complex_roots=(1 + 1j,), real_roots=(Fraction(1, 2),)),
        constant(-1),
        LiftComponent.zero(),
    ])

    assert lift.alphas == (1, 0, 0)
    assert lift.betas == (1, 0, 0)
    assert lift.degrees == (3, 0, 0)
    assert lift.zero_set == (2,)


def test_complex_root_in_lower_half_plane():
    with pytest.raises(InvalidLift):
        LiftComponent(complex_roots=(1 - 1j,))


def test_zero_leading_coefficient():
    with pytest.raises(InvalidLift):
        LiftComponent(leading=0)


def test_evaluate():
    lift = RealDiscLift([LiftComponent(leading=2, complex_roots=(1j,)), linear(1)])

    # 2 (z - i)(z + i) = 2 (z^2 + 1)
    assert lift.evaluate(2) == pytest.approx((10, 1))


def test_from_dict_matches_builtin():
    data = {'components': [{'a': 1, 'real_roots': [0]}, {'a': 1}, {'a': 1, 'real_roots': [1]}, {'zero': True}]}

    assert RealDiscLift.from_dict(data) == blowup_disc()
    assert builtin_disc('paper-disc')[1] == blowup_disc()
    assert builtin_disc('paper-disc-original')[1] == original_disc()


##################################################
# Validity
##################################################


def test_validate_blowup_disc():
    report = validate_lift(blowup(), blowup_disc())

    assert report.zero_set == (3,)
    assert report.checked == [('generic', (3,)), ('0', (0, 3)), ('1', (2, 3))]


def test_validate_outside_u():
    # w_1 and w_3 vanish together at z = 0, but D_1 and D_3 are disjoint
    lift = RealDiscLift([linear(0), constant(1), linear(0), constant(1)])

    with pytest.raises(OutsideU):
        validate_lift(blowup(), lift)


def test_validate_zero_set_not_a_cone():
    lift = RealDiscLift([constant(1), LiftComponent.zero(), constant(1), LiftComponent.zero()])

    with pytest.raises(OutsideU):
        validate_lift(blowup(), lift)
    with pytest.raises(InvalidLift):
        infinity_stratum(blowup(), lift)


def test_validate_wrong_length():
    with pytest.raises(WrongLength):
        validate_lift(blowup(), RealDiscLift([linear(0), constant(1)]))


##################################################
# Behaviour at infinity and reparametrization
##################################################


def test_infinity_stratum():
    assert infinity_stratum(blowup(), original_disc()) == (2, 3)
    assert infinity_stratum(blowup(), blowup_disc()) == (3,)


def test_reparametrize_original_disc():
    """ Composing with z / (z - 1) moves u(infinity) off D_3 and gives (z, 1, z - 1, 0) exactly. """
    with pytest.warns(UserWarning):
        lift = reparametrize(original_disc(), (1, 0, 1, -1), blowup())

    assert lift == blowup_disc()


def test_suggest_mobius():
    fan = blowup()
    mobius = suggest_mobius(fan, original_disc())
    a, b, c, d = mobius

    assert a * d - b * c == 1
    lift = reparametrize(original_disc(), mobius, fan)
    assert infinity_stratum(fan, lift) == (3,)
    assert maslov_general(fan, lift).mu == 1


def test_reparametrize_preserves_maslov_index():
    fan = builtin_geometry('cp:2').fan
    lift = RealDiscLift([linear(0), linear(1), linear(3)])
    # phi(infinity) = 2 is no root, so u o phi(infinity) stays off the divisors
    moved = reparametrize(lift, (2, 1, 1, 1), fan)

    assert moved.degrees == lift.degrees
    assert maslov_zero_count(fan, moved).mu == 3


def _mobius(mobius):
    a, b, c, d = mobius
    return lambda z: (a * z + b) / (c * z + d)


@pytest.mark.parametrize('name, lift, mobius', [
    ('cp:2', RealDiscLift([linear(0), linear(1), linear(3)]), (2, 1, 1, 1)),
    ('blowup-cp2', original_disc(), (1, -2, 1, -1)),
])
def test_reparametrize_agrees_with_composition(name, lift, mobius):
    fan = builtin_geometry(name).fan
    moved = reparametrize(lift, mobius, fan)
    phi = _mobius(mobius)

    for z in SAMPLES:
        assert same_point(fan, lift.evaluate(phi(z)), moved.evaluate(z)), z


def test_reparametrize_by_translation():
    fan = builtin_geometry('cp:1').fan
    lift = RealDiscLift([linear(0), linear(1)])

    # (z, z - 1) composed with z + 1 is (z + 1, z)
    assert reparametrize(lift, (1, 1, 0, 1), fan) == RealDiscLift([linear(-1), linear(0)])


def test_reparametrize_degenerate():
    with pytest.raises(DegenerateMobius):
        reparametrize(blowup_disc(), (1, 1, 1, 1))
    with pytest.raises(WrongLength):
        reparametrize(blowup_disc(), (1, 0, 1))


##################################################
# Maslov indices
##################################################


def test_maslov_blowup_disc():
    result = maslov_general(blowup(), blowup_disc(), [(1, 1)])

    assert result.mu == 1
    assert result.zero_set == (3,)
    assert result.extension == ((1, 1),)


@pytest.mark.parametrize('extension', [[(1, b)] for b in range(-3, 4)] + [[(-1, 5)]])
def test_maslov_independent_of_extension(extension):
    assert maslov_general(blowup(), blowup_disc(), extension).mu == 1


def test_maslov_bad_extension():
    with pytest.raises(BadExtension):
        maslov_general(blowup(), blowup_disc(), [(2, 1)])
    with pytest.raises(BadExtension):
        maslov_general(blowup(), blowup_disc(), [(1, 1), (1, 0)])


def test_maslov_needs_infinity_condition():
    with pytest.raises(InfinityConditionFails):
        maslov_general(blowup(), original_disc())
    with pytest.raises(NotApplicable):
        maslov_zero_count(blowup(), blowup_disc())


def test_lines():
    cp1 = builtin_geometry('cp:1').fan
    cp2 = builtin_geometry('cp:2').fan

    assert maslov_zero_count(cp1, builtin_disc('cp1-line')[1]).mu == 2
    assert maslov_zero_count(cp2, builtin_disc('cp2-line')[1]).mu == 3
    assert maslov_general(cp2, builtin_disc('cp2-line')[1]).mu == 3


def test_maslov_with_two_dimensional_stratum_of_cp2():
    fan = builtin_geometry('cp:2').fan
    lift = RealDiscLift([linear(0), linear(1), LiftComponent.zero()])

    assert maslov_general(fan, lift, [(1, 0)]).mu == 3
    assert curve_class(fan, lift) == (1, 1, 1)


def test_curve_class_of_blowup_disc():
    fan = blowup()
    lam = curve_class(fan, blowup_disc())

    assert lam == (1, 0, 1, -1)
    assert chern_pairing(fan, lam) == 1


##################################################
# The double and random discs
##################################################


def test_double_symmetry():
    report = verify_double_symmetry(blowup(), blowup_disc(), samples=8)

    assert report.symmetric
    assert report.ok
    assert report.maslov == report.chern_number == 1


def test_same_point_up_to_torus_action():
    fan = builtin_geometry('cp:2').fan

    assert same_point(fan, (1, 2, 3), (2, 4, 6))
    assert not same_point(fan, (1, 2, 3), (1, 2, 4))


@pytest.mark.parametrize('name', BUILTINS)
def test_maslov_oracle_agreement(name):
    fan = builtin_geometry(name).fan
    rng = np.random.default_rng(1234)
    for _ in range(20):
        lift = random_lift(fan, rng)
        validate_lift(fan, lift)
        zero_count = maslov_zero_count(fan, lift).mu
        general = maslov_general(fan, lift).mu
        c1 = chern_pairing(fan, curve_class(fan, lift))
        assert zero_count == general == c1


@pytest.mark.parametrize('name', BUILTINS)
def test_maslov_parity(name):
    fan = builtin_geometry(name).fan
    rng = np.random.default_rng(99)
    lifts = [random_lift(fan, rng) for _ in range(10)]
    if name == 'blowup-cp2':
        lifts.append(blowup_disc())
    for lift in lifts:
        I0 = lift.zero_set
        expansion = divisor_expansion(fan, I0)
        parity = sum(
            (1 - sum(expansion.pairing(i, j) for i in I0)) * beta
            for j, beta in enumerate(lift.betas) if j not in I0)
        assert (maslov_general(fan, lift).mu - parity) % 2 == 0


def test_complex_roots_only_give_even_maslov_index():
    fan = builtin_geometry('cp:2').fan
    lift = RealDiscLift([
        LiftComponent(complex_roots=(1j,)),
        LiftComponent(complex_roots=(2j,)),
        LiftComponent(complex_roots=(1 + 1j,)),
    ])

    assert maslov_zero_count(fan, lift).mu == 6


def test_chart_coordinates():
    fan = builtin_geometry('cp:2').fan

    # On the chart of the cone {1,2} of CP^2 the coordinates are z1/z3 and z2/z3
    assert chart_coords(fan, (0, 1), (2, 3, 4)) == pytest.approx((0.5, 0.75))
    assert chart_coords(fan, (0, 1), (0, 3, 4)) == pytest.approx((0, 0.75))
    with pytest.raises(NotInChart):
        chart_coords(fan, (0, 1), (1, 1, 0))
    with pytest.raises(NotACone):
        chart_coords(fan, (0,), (1, 1, 1))
    with pytest.raises(WrongLength):
        chart_coords(fan, (0, 1), (1, 1))
