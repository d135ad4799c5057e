import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cesaro import finite_part as fp


GRID = tuple(np.geomspace(1e-2, 1e-6, 24))


def test_fp_power_reproduces_smooth_case():
    # for alpha > -1 the integral converges and the finite part is the value
    for alpha in np.linspace(-0.95, 3.0, 50):
        assert fp.fp_power_integral(float(alpha)) == pytest.approx(
            1.0 / (alpha + 1.0), abs=1e-12), alpha


def test_fp_power_at_the_pole():
    # F.p. int_0^1 dt/t = 0: the ln eps divergence is removed, ln 1 remains
    assert fp.fp_power_integral(-1.0) == 0.0
    assert fp.fp_power_integral(-1.0, b=math.e) == pytest.approx(1.0)


def test_fp_power_below_the_pole():
    assert fp.fp_power_integral(-1.5) == pytest.approx(-2.0)
    assert fp.fp_power_integral(-3.0) == pytest.approx(-0.5)


def test_fp_power_rejects_bad_upper_limit():
    with pytest.raises(ValueError):
        fp.fp_power_integral(0.5, b=0.0)
    with pytest.raises(ValueError):
        fp.fp_power_integral(0.5, b=-2.0)


def test_fp_power_exact_fractions():
    assert fp.fp_power_integral_exact(Fraction(-3, 2)) == Fraction(-2)
    assert fp.fp_power_integral_exact(Fraction(-1)) == 0
    assert fp.fp_power_integral_exact(-2, Fraction(3)) == Fraction(-1, 3)


def test_fp_power_exact_rejects_the_hard_cases():
    with pytest.raises(TypeError):
        fp.fp_power_integral_exact(0.5)
    with pytest.raises(ValueError):
        # non-integer alpha with b != 1 leaves an irrational b^(alpha+1)
        fp.fp_power_integral_exact(Fraction(-3, 2), Fraction(2))


def test_fp_log_power_closed_form():
    for alpha in (0.0, 0.5, -0.5, 2.0):
        want = -1.0 / (alpha + 1.0) ** 2
        assert fp.fp_log_power_integral(alpha) == pytest.approx(want, abs=1e-12)


def test_fp_log_power_at_the_pole():
    assert fp.fp_log_power_integral(-1.0) == 0.0
    b = 2.0
    assert fp.fp_log_power_integral(-1.0, b=b) == pytest.approx(
        0.5 * math.log(b) ** 2)


def test_fp_log_power_exact():
    assert fp.fp_log_power_integral_exact(Fraction(-2)) == Fraction(-1)
    assert fp.fp_log_power_integral_exact(Fraction(-1)) == 0


def test_extract_simple_pole_plus_constant():
    dec = fp.extract_finite_part(lambda e: 1.0 / e + 7.0, [(1, 0)], GRID)
    assert dec.finite_part == pytest.approx(7.0, abs=1e-6)


def test_extract_log_plus_constant():
    dec = fp.extract_finite_part(lambda e: math.log(1.0 / e) + math.pi,
                                 [(0, 1)], GRID)
    assert dec.finite_part == pytest.approx(math.pi, abs=1e-6)


def test_extract_ignores_decaying_perturbations():
    # adding eps * (bounded) must not move the finite part: the divergent
    # basis and the constant are independent of anything that dies at 0
    base = fp.extract_finite_part(lambda e: 1.0 / e + 7.0, [(1, 0)], GRID)
    bent = fp.extract_finite_part(
        lambda e: 1.0 / e + 7.0 + e * math.cos(1.0 / e), [(1, 0)], GRID)
    assert abs(base.finite_part - bent.finite_part) < 1e-2
    assert bent.finite_part == pytest.approx(7.0, abs=1e-2)


def _log_power_tail(alpha):
    # int_eps^1 t^alpha ln t dt from the closed antiderivative
    def H(t):
        return t ** (alpha + 1) * (math.log(t) / (alpha + 1) - 1.0 / (alpha + 1) ** 2)

    return lambda e: H(1.0) - H(e)


def test_extract_matches_log_closed_forms():
    for alpha in (-3.0, -2.5, -2.0):
        p = -(alpha + 1.0)
        dec = fp.extract_finite_part(_log_power_tail(alpha), [(p, 1), (p, 0)], GRID)
        want = fp.fp_log_power_integral(alpha)
        assert dec.finite_part == pytest.approx(want, abs=1e-6), alpha
    # convergent case: nothing to subtract, fit just the constant
    deep = tuple(np.geomspace(1e-5, 1e-9, 24))
    dec = fp.extract_finite_part(_log_power_tail(0.5), [], deep)
    assert dec.finite_part == pytest.approx(fp.fp_log_power_integral(0.5), abs=1e-6)
    assert len(dec.divergent_terms) == 0


def test_log_integral_is_the_alpha_derivative():
    # d/dalpha int t^alpha dt pulls down a ln t
    h = 1e-4
    for alpha in (-3.0, -2.0, 2.0):
        diff = (fp.fp_power_integral(alpha + h) - fp.fp_power_integral(alpha - h)) / (2 * h)
        assert diff == pytest.approx(fp.fp_log_power_integral(alpha), abs=1e-6), alpha


def test_extract_recovers_pure_log_divergence():
    dec = fp.extract_finite_part(lambda e: -math.log(e), [(0, 1)], GRID)
    assert abs(dec.finite_part) < 1e-9
    (a, b, c), = dec.divergent_terms
    assert (a, b) == (0.0, 1) and c == pytest.approx(1.0, abs=1e-9)
    assert dec.residual < 1e-10
    assert dec.condition < 1e3


def test_extract_recovers_log_over_square():
    # int_eps^1 ln(x)/x^2 dx = (ln eps + 1)/eps - 1
    dec = fp.extract_finite_part(lambda e: (math.log(e) + 1.0) / e - 1.0,
                                 [(1, 1), (1, 0)], GRID)
    assert dec.finite_part == pytest.approx(-1.0, abs=1e-6)


def test_extract_is_linear_in_the_constant():
    base = fp.extract_finite_part(lambda e: 1.0 / e, [(1, 0)], GRID)
    shifted = fp.extract_finite_part(lambda e: 1.0 / e + 0.3, [(1, 0)], GRID)
    assert shifted.finite_part - base.finite_part == pytest.approx(0.3, abs=1e-9)


@settings(max_examples=25)
@given(st.floats(min_value=-2, max_value=2), st.floats(min_value=-2, max_value=2),
       st.floats(min_value=-5, max_value=5))
def test_extract_recovers_synthetic_mixtures(c1, c2, A):
    def g(e):
        return c1 / e + c2 * math.log(1.0 / e) + A

    dec = fp.extract_finite_part(g, [(1, 0), (0, 1)], GRID)
    assert dec.finite_part == pytest.approx(A, abs=1e-8)


def test_extract_rejects_constant_in_basis():
    with pytest.raises(ValueError):
        fp.extract_finite_part(lambda e: 1.0 / e, [(0, 0)], GRID)


def test_extract_rejects_duplicate_basis():
    with pytest.raises(ValueError):
        fp.extract_finite_part(lambda e: 1.0 / e, [(1, 0), (1, 0)], GRID)


def test_extract_rejects_bad_grids():
    with pytest.raises(ValueError):
        fp.extract_finite_part(lambda e: 1.0 / e, [(1, 0)], (1e-2, 1e-3))
    with pytest.raises(ValueError):
        fp.extract_finite_part(lambda e: 1.0 / e, [(1, 0)],
                               tuple(np.geomspace(1e-6, 1e-2, 24)))
    with pytest.raises(ValueError):
        fp.extract_finite_part(lambda e: 1.0 / e, [(1, 0)],
                               tuple(np.geomspace(1e-2, 5e-3, 24)))


def test_extract_flags_near_dependent_basis():
    # eps^-1e-9 ln(1/e) vs ln(1/e): columns nearly parallel on any grid
    with pytest.raises(fp.IllConditionedFitError) as err:
        fp.extract_finite_part(lambda e: -math.log(e),
                               [(0, 1), (1e-9, 1)], GRID, cond_limit=1e4)
    assert err.value.condition > 1e4


def test_extract_rejects_nonfinite_samples():
    with pytest.raises(ValueError):
        fp.extract_finite_part(lambda e: float("nan"), [(1, 0)], GRID)


def test_closed_form_and_extraction_agree_on_the_pole():
    # g(eps) = int_eps^1 dt/t = -ln eps; both routes give 0
    closed = fp.fp_power_integral(-1.0)
    dec = fp.extract_finite_part(lambda e: -math.log(e), [(0, 1)], GRID)
    assert closed == 0.0
    assert abs(dec.finite_part - closed) < 1e-6


def test_closed_form_and_extraction_agree_below_the_pole():
    # g(eps) = int_eps^1 t^-3/2 dt = 2/sqrt(eps) - 2 -> F.p. = -2
    dec = fp.extract_finite_part(lambda e: 2.0 / math.sqrt(e) - 2.0,
                                 [(0.5, 0)], GRID)
    assert dec.finite_part == pytest.approx(fp.fp_power_integral(-1.5), abs=1e-6)
