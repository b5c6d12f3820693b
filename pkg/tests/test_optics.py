import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from twomedia import optics
from twomedia.errors import DomainError, ValidationError
from twomedia.optics import (AIR, CS2, LAB_VACUUM, PLEXIGLAS, VACUUM, Arm, Interferometer,
                             Medium, SPEED_OF_LIGHT as C)

L = 0.2
permittivity = st.floats(min_value=1.0, max_value=255.0)
beta = st.floats(min_value=0.0, max_value=1e-2)


def _arm(e1, e2, length=L):
    return Arm(length, Medium("a", e1), Medium("b", e2))


def _sym(e1, e2, length=L, wavelength=6e-7):
    return Interferometer.symmetric(length, Medium("a", e1), Medium("b", e2), wavelength, 0.09)


def _mp_parallel_exact(l, e1, e2, v):
    """50-digit evaluation of the unexpanded parallel round trip."""
    with mpmath.workdps(50):
        c, l, e1, e2, v = (mpmath.mpf(x) for x in (C, l, e1, e2, v))
        out = l / (c / mpmath.sqrt(e1) - v * (e1 - 1) / e1)
        back = l / (c / mpmath.sqrt(e2) + v * (e2 - 1) / e2)
        first = l / c * (mpmath.sqrt(e1) + mpmath.sqrt(e2) + v / c * ((e1 - 1) - (e2 - 1)))
        return out + back, out + back - first


# -- media and construction ------------------------------------------------

def test_medium_derived_quantities():
    assert CS2.n == math.sqrt(1.0036)
    assert CS2.delta_epsilon == pytest.approx(0.0036, rel=1e-12)
    assert VACUUM.delta_epsilon == 0.0


@pytest.mark.parametrize("eps", [0.9, 0.999999, float("nan"), -1.0])
def test_medium_rejects_permittivity_below_one(eps):
    with pytest.raises(ValidationError, match="permittivity"):
        Medium("bad", eps)


def test_arm_and_interferometer_invariants():
    with pytest.raises(ValidationError):
        Arm(0.0, AIR, AIR)
    arm = Arm(L, CS2, AIR)
    with pytest.raises(ValidationError):
        Interferometer(arm, arm, 0.0, 0.09)
    with pytest.raises(ValidationError):
        Interferometer(arm, arm, 6e-7, -1.0)


# -- Fresnel speed ----------------------------------------------------------

def test_fresnel_vacuum_has_no_drag():
    assert optics.fresnel_speed(VACUUM, 100_000.0) == C


def test_fresnel_half_drag_for_eps_two():
    # 1 - 1/n**2 = 1/2 exactly; c/sqrt(2) + 50 000 evaluated at 40 digits
    assert optics.fresnel_speed(PLEXIGLAS, 100_000.0) == pytest.approx(212_035_280.0003832, rel=1e-15)


def test_fresnel_cs2_value():
    assert optics.fresnel_speed(CS2, 480_000.0) == pytest.approx(299_256_006.0112105, rel=1e-15)


def test_fresnel_rejects_superluminal_medium_motion():
    with pytest.raises(DomainError):
        optics.fresnel_speed(PLEXIGLAS, C / math.sqrt(2.0))
    with pytest.raises(DomainError):
        optics.fresnel_speed(AIR, -C)


@settings(max_examples=500)
@given(eps=permittivity, b=st.floats(min_value=-1e-2, max_value=1e-2))
def test_fresnel_two_forms_agree_to_two_ulp(eps, b):
    m = Medium("m", eps)
    a = optics.fresnel_speed(m, b * C)
    e = optics.fresnel_speed_permittivity(m, b * C)
    assert abs(a - e) <= 2 * math.ulp(max(abs(a), abs(e)))


# -- parallel round trip ----------------------------------------------------

def test_parallel_exact_vacuum_at_rest():
    assert optics.roundtrip_parallel_exact(_arm(1.0, 1.0), 0.0) == pytest.approx(
        1.3342563807926082e-09, rel=1e-15)


def test_parallel_exact_paper_media_at_rest():
    assert optics.roundtrip_parallel_exact(_arm(1.0036, 1.0006), 0.0) == pytest.approx(
        1.335656241173986e-09, rel=1e-15)


def test_parallel_exact_matches_first_order_at_480():
    arm = _arm(1.0036, 1.0006)
    exact = optics.roundtrip_parallel_exact(arm, 480_000.0)
    first = optics.roundtrip_parallel_first_order(arm, 480_000.0)
    assert exact == pytest.approx(1.3356594456288877e-09, rel=1e-15)
    assert abs(exact - first) / first < 3e-6


def test_first_order_single_medium_is_velocity_independent():
    arm = _arm(1.0036, 1.0036)
    t0 = optics.roundtrip_parallel_first_order(arm, 0.0)
    assert t0 == L / C * 2 * math.sqrt(1.0036)
    assert optics.roundtrip_parallel_first_order(arm, 4e5) == t0


def test_first_order_term_flips_under_media_swap():
    a, b = _arm(1.0036, 1.0006), _arm(1.0006, 1.0036)
    static = L / C * (math.sqrt(1.0036) + math.sqrt(1.0006))
    da = optics.roundtrip_parallel_first_order(a, 480_000.0) - static
    db = optics.roundtrip_parallel_first_order(b, 480_000.0) - static
    assert da > 0 > db
    assert da == pytest.approx(-db, rel=1e-9)


@pytest.mark.parametrize("e1,e2", [(1.0006, 1.000006), (1.0036, 1.0006), (2.0, 1.0006)])
@pytest.mark.parametrize("b", [1e-5, 3e-4, 1e-3])
def test_truncation_error_matches_high_precision_oracle(e1, e2, b):
    _, oracle = _mp_parallel_exact(L, e1, e2, b * C)
    got = optics.parallel_truncation_error(_arm(e1, e2), b * C)
    assert got == pytest.approx(float(oracle), rel=1e-12)


def test_truncation_error_agrees_with_naive_difference_where_resolvable():
    arm = _arm(2.0, 1.0006)
    v = 1e-3 * C
    naive = optics.roundtrip_parallel_exact(arm, v) - optics.roundtrip_parallel_first_order(arm, v)
    assert naive == pytest.approx(optics.parallel_truncation_error(arm, v), rel=1e-6)


# -- perpendicular round trip -----------------------------------------------

def test_perpendicular_vacuum_at_rest():
    assert optics.roundtrip_perpendicular(_arm(1.0, 1.0), 0.0) == 2 * L / C


def test_perpendicular_second_order_shift():
    arm = _arm(1.0036, 1.0006)
    t0 = optics.roundtrip_perpendicular(arm, 0.0)
    t = optics.roundtrip_perpendicular(arm, 480_000.0)
    assert (t - t0) / t0 == pytest.approx(-1.284463552e-6, rel=1e-6)
    assert t0 == pytest.approx(optics.roundtrip_perpendicular_first_order(arm), rel=1e-15)


def test_perpendicular_conventional_sign_variant():
    arm = _arm(1.0036, 1.0006)
    t0 = optics.roundtrip_perpendicular(arm, 0.0)
    plus = optics.roundtrip_perpendicular(arm, 480_000.0)
    minus = optics.roundtrip_perpendicular(arm, 480_000.0, conventional=True)
    assert plus < t0 < minus
    assert (minus - t0) == pytest.approx(t0 - plus, rel=1e-5)


@given(e1=permittivity, e2=permittivity, b=beta)
def test_perpendicular_even_in_v(e1, e2, b):
    arm = _arm(e1, e2)
    assert optics.roundtrip_perpendicular(arm, b * C) == optics.roundtrip_perpendicular(arm, -b * C)


# -- signal -----------------------------------------------------------------

def test_delta_t_paper_value():
    assert optics.delta_t_first_order(_sym(1.0036, 1.0006), 480_000.0) == pytest.approx(
        3.204432161434421e-15, rel=1e-12)


@given(eps=permittivity, b=beta)
def test_delta_t_single_medium_null(eps, b):
    assert optics.delta_t_first_order(_sym(eps, eps), b * C) == 0.0


@given(e1=permittivity, e2=permittivity, b=beta)
def test_delta_t_media_swap_negates_exactly(e1, e2, b):
    assert optics.delta_t_first_order(_sym(e2, e1), b * C) == -optics.delta_t_first_order(
        _sym(e1, e2), b * C)


@given(e1=permittivity, e2=permittivity,
       b=st.one_of(st.just(0.0), st.floats(min_value=1e-12, max_value=4e-3)))
def test_delta_t_doubling_v_doubles_output(e1, e2, b):
    # scaling by two is exact in binary floating point away from underflow
    inst = _sym(e1, e2)
    assert optics.delta_t_first_order(inst, 2 * b * C) == 2 * optics.delta_t_first_order(inst, b * C)


@given(e1=permittivity, e2=permittivity, b=st.floats(min_value=1e-12, max_value=1e-2))
def test_delta_t_doubling_deps_doubles_output(e1, e2, b):
    lo = min(e1, e2)
    deps = abs(e1 - e2) / 2
    one = Interferometer.symmetric(L, Medium("a", lo + deps), Medium("b", lo), 6e-7, 0.09)
    two = Interferometer.symmetric(L, Medium("a", lo + 2 * deps), Medium("b", lo), 6e-7, 0.09)
    assume(deps > 1e-6)
    ratio = optics.delta_t_first_order(two, b * C) / optics.delta_t_first_order(one, b * C)
    # only the rounding of lo + deps enters
    assert ratio == pytest.approx(2.0, rel=8 * math.ulp(lo + 2 * deps) / deps + 1e-15)


@given(e1=st.floats(min_value=1.0, max_value=2.0), e2=st.floats(min_value=1.0, max_value=2.0),
       b=beta)
def test_contribution_and_permittivity_forms_identical(e1, e2, b):
    # eps - 1 is exact on [1, 2], so both differences round from the same real
    inst = _sym(e1, e2)
    assert optics.delta_t_first_order(inst, b * C, use_contributions=True) == \
        optics.delta_t_first_order(inst, b * C)


@given(e1=permittivity, e2=permittivity, b=beta)
def test_contribution_form_close_for_large_eps(e1, e2, b):
    inst = _sym(e1, e2)
    a = optics.delta_t_first_order(inst, b * C, use_contributions=True)
    e = optics.delta_t_first_order(inst, b * C)
    assert abs(a - e) <= 1e-13 * max(e1, e2) * b * L / C


def test_delta_t_asymmetric_arms_uses_per_arm_difference():
    a = Arm(0.2, CS2, AIR)
    b = Arm(0.25, CS2, AIR)
    inst = Interferometer(a, b, 6e-7, 0.09)
    expected = optics.roundtrip_parallel_first_order(a, 3e5) - optics.roundtrip_perpendicular_first_order(b)
    assert optics.delta_t_first_order(inst, 3e5) == expected


def test_fringe_shift_conversions():
    assert optics.fringe_shift(0.0, 6e-7, 0.09).fringe_shift == 0.0
    s = optics.fringe_shift(3.204e-15, 6e-7, 0.09)
    assert s.fringe_shift == pytest.approx(1.601, abs=1e-3)
    assert s.x_m == pytest.approx(0.09 * s.fringe_shift)
    micro = optics.fringe_shift(3.204e-15, 0.1, 0.09).fringe_shift
    assert micro / s.fringe_shift == pytest.approx(6e-6, rel=1e-12)
    with pytest.raises(ValidationError):
        optics.fringe_shift(1e-15, 0.0)


@given(a=st.floats(min_value=-1e3, max_value=1e3, allow_subnormal=False),
       lam=st.floats(min_value=1e-7, max_value=1.0))
def test_fringe_inverse_round_trip(a, lam):
    back = optics.fringe_shift(optics.delta_t_from_fringe(a, lam), lam).fringe_shift
    assert back == pytest.approx(a, rel=1e-12, abs=1e-300)


def test_rotation_signal_angles(paper):
    base = optics.delta_t_first_order(paper, 480_000.0)
    assert optics.rotation_signal(paper, 480_000.0, 0.0) == base
    assert optics.rotation_signal(paper, 480_000.0, math.pi / 2) == pytest.approx(base, rel=1e-15)
    for theta in (3 * math.pi / 4, 7 * math.pi / 4):
        assert abs(optics.rotation_signal(paper, 480_000.0, theta)) <= 4 * math.ulp(base)


@given(theta=st.floats(min_value=-10.0, max_value=10.0))
def test_rotation_half_turn_antisymmetry(theta):
    inst = optics.paper_interferometer()
    a = optics.rotation_signal(inst, 4e5, theta)
    b = optics.rotation_signal(inst, 4e5, theta + math.pi)
    assert abs(a + b) <= 1e-14 * optics.delta_t_first_order(inst, 4e5)


def test_rotation_asymmetric_reduces_to_delta_t_at_zero():
    inst = Interferometer(Arm(0.2, CS2, AIR), Arm(0.21, CS2, LAB_VACUUM), 6e-7, 0.09)
    assert optics.rotation_signal(inst, 3e5, 0.0) == pytest.approx(
        optics.delta_t_first_order(inst, 3e5), rel=1e-15)


def test_fringe_amplitude_values(paper):
    assert optics.fringe_amplitude(paper, 0.0) == 0.0
    unit = _sym(1.0036, 1.0006)
    assert optics.fringe_amplitude(unit, C * 1e-3) == pytest.approx(1.0, rel=1e-12)
    assert optics.fringe_amplitude(paper, 140_000.0) == pytest.approx(0.4669897332774129, rel=1e-12)
    assert optics.fringe_amplitude(paper, 480_000.0) == pytest.approx(1.6011076569511298, rel=1e-12)


# -- second-order comparison ------------------------------------------------

def test_second_order_vacuum_null():
    assert optics.second_order_delta_t(L, VACUUM, 3e5) == 0.0


def test_second_order_value():
    assert optics.second_order_delta_t(L, CS2, C * 1e-3) == pytest.approx(
        2.4016614854266948e-18, rel=1e-12)


def test_sensitivity_ratio_values():
    matched = _sym(1.0036, 1.0)
    assert optics.sensitivity_ratio(matched, CS2, C * 1e-3) == pytest.approx(1000.0, abs=1e-6)
    assert optics.sensitivity_ratio(matched, CS2, 480_000.0) == pytest.approx(624.567620833, rel=1e-9)
    wide = _sym(1.36, 1.0)  # eps1 - eps2 = 100 x deps(CS2)
    assert optics.sensitivity_ratio(wide, CS2, C * 1e-3) == pytest.approx(1e5, abs=1e-6)


def test_sensitivity_ratio_errors():
    with pytest.raises(DomainError):
        optics.sensitivity_ratio(_sym(1.0036, 1.0), VACUUM, 3e5)
    with pytest.raises(DomainError):
        optics.sensitivity_ratio(_sym(1.0036, 1.0), CS2, 0.0)
