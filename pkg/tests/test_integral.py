import math
from fractions import Fraction

import pytest

from cesaro import exact, integral


def test_riesz_mean_closed_form_matches_quadrature():
    closed = integral.sin_wave(1.0)
    quad = integral.sampled(math.sin, label="sin")
    for k, X in ((1, 50.0), (2, 120.0)):
        a = integral.riesz_mean(closed, k, X)
        b = integral.riesz_mean(quad, k, X)
        assert a == pytest.approx(b, abs=1e-10), (k, X)


def test_riesz_mean_exp_decay_value():
    # int_0^X (1 - t/X) e^-t dt = 1 - 1/X + e^-X (stuff); X large kills the rest
    spec = integral.exp_decay()
    v = integral.riesz_mean(spec, 1, 200.0)
    assert v == pytest.approx(1.0 - 1.0 / 200.0, abs=1e-12)


def test_riesz_mean_sin_closed_form():
    # int_0^X (1 - t/X) sin t dt = (X - sin X)/X
    spec = integral.sin_wave(1.0)
    for X in (3.0, 47.0, 1234.5):
        assert integral.riesz_mean(spec, 1, X) == pytest.approx(
            (X - math.sin(X)) / X, abs=1e-12)


def test_riesz_mean_of_zero_is_zero():
    spec = integral.constant(0.0)
    for k in (0, 1, 2, 0.5):
        assert integral.riesz_mean(spec, k, 75.0) == pytest.approx(0.0, abs=1e-12)


def test_riesz_mean_plain_exp_integral():
    v = integral.riesz_mean(integral.exp_decay(), 0, 40.0)
    assert v == pytest.approx(1.0, abs=1e-12)


def test_riesz_mean_at_k_zero_is_the_plain_integral():
    import scipy.integrate as sciint

    cases = [
        (integral.sin_wave(2.0), 30.0),
        (integral.cos_wave(1.0), 55.0),
        (integral.exp_decay(), 25.0),
        (integral.power_log(0.5, 1), 12.0),
        (integral.constant(3.0), 18.0),
    ]
    for spec, X in cases:
        want, err = sciint.quad(spec.func, 0.0, X, epsabs=1e-12, limit=200)
        got = integral.riesz_mean(spec, 0, X)
        assert got == pytest.approx(want, abs=max(1e-9, 10 * err)), spec.label


def test_riesz_mean_fractional_order_goes_through_quadrature():
    spec = integral.sin_wave(1.0)
    v = integral.riesz_mean(spec, 0.5, 300.0)
    assert abs(v - 1.0) < 0.05


def test_riesz_mean_rejects_bad_orders():
    spec = integral.sin_wave(1.0)
    with pytest.raises(ValueError):
        integral.riesz_mean(spec, -1.0, 10.0)
    with pytest.raises(ValueError):
        integral.riesz_mean(spec, 1, 0.0)


def test_cesaro_integral_sin_hits_one_over_a():
    for a in (1.0, 2.0):
        ev = integral.cesaro_integral(integral.sin_wave(a), 1)
        assert ev.converged
        assert abs(ev.value - 1.0 / a) < 1e-4, a


def test_cesaro_integral_cos_averages_to_zero():
    ev = integral.cesaro_integral(integral.cos_wave(3.0), 1)
    assert ev.converged
    assert abs(ev.value) < 1e-4


def test_cesaro_integral_absolutely_convergent_case():
    ev = integral.cesaro_integral(integral.exp_decay(), 1)
    assert ev.converged
    assert abs(ev.value - 1.0) < 1e-4


def test_cesaro_integral_divergent_integrand_flagged():
    # int t^-1/2 grows like 2 sqrt(X); no finite Riesz mean of any order
    ev = integral.cesaro_integral(integral.power_log(-0.5), 1,
                                  X_grid=integral.default_grid(1e2, 1e4))
    assert not ev.converged


def test_power_log_rejects_nonintegrable_exponent():
    with pytest.raises(ValueError):
        integral.power_log(-1.0)
    with pytest.raises(ValueError):
        integral.power_log(-2.5)


def test_primitive_limit_of_constant():
    ev = integral.primitive_limit(integral.constant(1.0), 2)
    assert ev.converged
    assert ev.value == pytest.approx(1.0, abs=1e-9)


def test_primitive_limit_function_vs_integral_semantics():
    # the limit of x - sin(x) over x (first primitive of int_0^x sin) is 1
    spec = integral.sin_wave(1.0).primitive()
    ev = integral.primitive_limit(spec, 1)
    assert ev.converged
    assert abs(ev.value - 1.0) < 1e-4


def test_primitive_limit_agrees_with_riesz_mean():
    # same generalized value through two different formulas
    a = integral.cesaro_integral(integral.sin_wave(2.0), 1)
    b = integral.primitive_limit(integral.sin_wave(2.0).primitive(), 1)
    assert a.value == pytest.approx(b.value, abs=1e-4)


def test_riesz_and_primitive_forms_agree_pointwise():
    # both routes reduce to (aX - sin aX)/(a^2 X); they must match everywhere
    for a in (1.0, 2.0):
        base = integral.sin_wave(a)
        first = base.primitive().primitives[0]  # (ax - sin ax)/a^2
        for X in integral.default_grid():
            via_riesz = integral.riesz_mean(base, 1, X)
            via_chain = first(X) / X
            closed = (a * X - math.sin(a * X)) / (a * a * X)
            assert via_riesz == pytest.approx(closed, abs=1e-9), (a, X)
            assert via_chain == pytest.approx(closed, abs=1e-9), (a, X)
            assert via_riesz == pytest.approx(via_chain, abs=1e-9), (a, X)


@pytest.mark.parametrize("spec", [integral.sin_wave(1.0), integral.cos_wave(1.0),
                                  integral.exp_decay()])
def test_raising_the_order_keeps_the_value(spec):
    # convergence at k implies convergence to the same value at k + 1
    tol = 1e-3
    for k in (0, 1, 2):
        ev = integral.cesaro_integral(spec, k, tol=tol)
        if not ev.converged:
            continue
        up = integral.cesaro_integral(spec, k + 1, tol=tol)
        assert up.converged, (spec.label, k + 1)
        assert abs(up.value - ev.value) < 2 * tol, (spec.label, k)


def test_primitive_limit_mean_zero_periodic_vanishes():
    p = exact.PeriodicPolynomial((Fraction(-1, 2), Fraction(1)))  # {x} - 1/2
    ev = integral.primitive_limit(integral.periodic_poly(p), 1)
    assert abs(ev.value) < 1e-6


def _square_wave(t):
    return 1.0 if (t % 1.0) < 0.5 else -1.0


def _triangle_wave(t):
    r = t % 1.0
    return r if r <= 0.5 else 1.0 - r


def test_primitive_limit_square_wave_vanishes():
    # mean-zero square wave: F_1 is the bounded triangle wave, so the limit is 0
    spec = integral.from_primitives(_square_wave, [_triangle_wave],
                                    label="square-wave")
    ev = integral.primitive_limit(spec, 1)
    assert ev.converged
    assert abs(ev.value) < 1e-3


def test_cumulative_quadrature_reports_jumpy_integrand():
    # the bare-callable fallback cannot certify a discontinuous integrand;
    # it must say so through the error contract rather than guess
    samp = integral.sampled(_square_wave, label="square-wave")
    grid = integral.default_grid(lo=20.0, hi=2_000.0, num=8)
    with pytest.raises(integral.QuadratureError) as exc:
        integral.primitive_limit(samp, 1, X_grid=grid)
    assert exc.value.error_estimate > 0


def test_primitive_limit_k_zero_is_plain_sampling():
    ev = integral.primitive_limit(integral.exp_decay(), 0)
    assert ev.converged
    assert abs(ev.value) < 1e-12  # e^-X at the grid tail


def test_chain_verification_catches_wrong_primitives():
    with pytest.raises(ValueError):
        integral.from_primitives(math.sin, [lambda x: math.cos(x)],
                                 label="broken")


def test_chain_verification_accepts_correct_primitives():
    spec = integral.from_primitives(
        math.sin, [lambda x: 1.0 - math.cos(x)], label="sin")
    assert spec.verified


def test_primitive_shift_requires_a_chain():
    bare = integral.sampled(math.sin)
    with pytest.raises(ValueError):
        bare.primitive()


def test_sampled_integrand_through_quadrature_grid():
    grid = integral.default_grid(lo=20.0, hi=2_000.0, num=8)
    ev = integral.cesaro_integral(integral.sampled(math.sin, label="sin"),
                                  1, X_grid=grid, tol=1e-2)
    assert abs(ev.value - 1.0) < 1e-2


def test_grid_validation():
    with pytest.raises(ValueError):
        integral.cesaro_integral(integral.sin_wave(1.0), 1, X_grid=(1.0, 2.0))
    with pytest.raises(ValueError):
        integral.cesaro_integral(integral.sin_wave(1.0), 1,
                                 X_grid=tuple(float(x) for x in range(10, 0, -1)))
    with pytest.raises(ValueError):
        # spans less than two decades
        integral.cesaro_integral(integral.sin_wave(1.0), 1,
                                 X_grid=tuple(10.0 + i for i in range(10)))


def test_moment_path_and_primitive_path_agree():
    # integer-order Riesz means have two closed routes; they must coincide
    spec = integral.sin_wave(1.5)
    for X in (37.0, 412.0):
        via_moments = integral.riesz_mean(spec, 2, X)
        shifted = integral.IntegrandSpec(
            func=spec.func, primitives=spec.primitives, label="no-moments")
        via_parts = integral.riesz_mean(shifted, 2, X)
        assert via_moments == pytest.approx(via_parts, rel=1e-10)


def test_trig_chain_layers_vanish_at_zero():
    spec = integral.cos_wave(2.0)
    for F in spec.primitives:
        assert abs(F(0.0)) < 1e-15
