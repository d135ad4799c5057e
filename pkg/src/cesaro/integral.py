"""Cesaro / Riesz means of integrals over [0, inf), and Cesaro limits of
functions via iterated primitives.

Two related quantities live here and are kept deliberately distinct:

* ``riesz_mean``/``cesaro_integral`` evaluate the order-k weighted integral

      int_0^X (1 - t/X)^k f(t) dt,

  whose X -> inf limit is the Cesaro value of int_0^inf f.  Real k > -1 is
  allowed; for integer k the weight expands binomially into moments and the
  whole thing is evaluated in closed form whenever the integrand family
  supports it.

* ``primitive_limit`` evaluates k! F_k(X) / X^k where F_k is the k-fold
  iterated primitive of f itself (F_1 = int_0^x f).  Its limit is the Cesaro
  limit of the *function* f, not of its integral.  The two meet through one
  integration by parts: the Riesz mean of f at integer order k equals
  k! G_k(X)/X^k for the k-fold primitive G_k of int_0^x f, i.e. the
  primitive-limit path applied to ``spec.primitive()``.

Quadrature fallbacks target 1e-12 absolute per finite window; a window that
cannot reach a usable error estimate raises QuadratureError rather than
returning a silently bad number.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate as _sciint

from .evaluation import CesaroEvaluation, tail_judgement
from .exact import PeriodicPolynomial, periodic_mean
from .powerlog import PowerLogExpr

__all__ = [
    "IntegrandSpec",
    "QuadratureError",
    "default_grid",
    "riesz_mean",
    "cesaro_integral",
    "primitive_limit",
    "sin_wave",
    "cos_wave",
    "exp_decay",
    "power_log",
    "constant",
    "periodic_poly",
    "from_primitives",
    "sampled",
]

MAX_CHAIN = 8
DEFAULT_TOL = 1e-3
_VERIFY_POINTS = 32
_VERIFY_ALLOWED_MISSES = 2  # tolerate kinks/jumps hit by the random probes


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature cannot certify its own result."""

    def __init__(self, message: str, error_estimate: float):
        super().__init__(message)
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class IntegrandSpec:
    """An integrand plus whatever closed-form structure it carries.

    func        the integrand itself
    primitives  iterated integrals from 0: primitives[j] is the (j+1)-fold
                primitive of func (so primitives[0](x) = int_0^x f)
    moments     optional exact (j, X) -> int_0^X t^j f(t) dt, used to turn
                integer-order Riesz weights into closed form
    label       human-readable tag for CLI output and reprs

    Closed-form chains are verified on construction: each consecutive pair is
    spot-checked by central differences at 32 deterministic pseudo-random
    points.  A couple of misses are tolerated so that piecewise integrands
    whose probe lands on a kink are not rejected, but a wrong chain fails
    loudly.  Build instances through the factory classmethods.
    """

    func: Callable[[float], float]
    primitives: tuple = ()
    moments: Optional[Callable[[int, float], float]] = None
    label: str = "f"
    verified: bool = field(default=False, compare=False)

    # -- factories ---------------------------------------------------------

    @classmethod
    def sin_wave(cls, a: float = 1.0) -> "IntegrandSpec":
        """sin(a t), with the full iterated-primitive chain and moments."""
        if a == 0:
            raise ValueError("sin_wave needs a nonzero frequency")
        a = float(a)
        chain = tuple(_trig_primitive(a, j, want_sin=True) for j in range(1, MAX_CHAIN + 1))
        spec = cls(func=lambda t: math.sin(a * t), primitives=chain,
                   moments=_trig_moments(a, want_sin=True), label=f"sin({a:g}t)")
        return _verified(spec)

    @classmethod
    def cos_wave(cls, a: float = 1.0) -> "IntegrandSpec":
        if a == 0:
            raise ValueError("cos_wave needs a nonzero frequency")
        a = float(a)
        chain = tuple(_trig_primitive(a, j, want_sin=False) for j in range(1, MAX_CHAIN + 1))
        spec = cls(func=lambda t: math.cos(a * t), primitives=chain,
                   moments=_trig_moments(a, want_sin=False), label=f"cos({a:g}t)")
        return _verified(spec)

    @classmethod
    def exp_decay(cls) -> "IntegrandSpec":
        """exp(-t); the j-fold primitive is (-1)^j (e^-t - its Taylor head)."""
        def primitive(j):
            def F(t, j=j):
                head = sum((-t) ** m / math.factorial(m) for m in range(j))
                return (-1.0) ** j * (math.exp(-t) - head)
            return F

        def moments(j, X):
            # E_j = j E_{j-1} - X^j e^{-X}
            ex = math.exp(-X)
            e = 1.0 - ex
            for i in range(1, j + 1):
                e = i * e - X ** i * ex
            return e

        spec = cls(func=lambda t: math.exp(-t),
                   primitives=tuple(primitive(j) for j in range(1, MAX_CHAIN + 1)),
                   moments=moments, label="exp(-t)")
        return _verified(spec)

    @classmethod
    def power_log(cls, alpha: float, p: int = 0) -> "IntegrandSpec":
        """t^alpha * (ln t)^p with alpha > -1 (locally integrable at 0).

        Anything with alpha <= -1 is not an integral over [0, X] at all but a
        finite part; use the finite_part module for those.
        """
        alpha = float(alpha)
        if alpha <= -1.0:
            raise ValueError(
                f"alpha={alpha} is not locally integrable at 0; "
                "use finite_part.fp_power_integral / fp_log_power_integral instead")
        if p < 0:
            raise ValueError("log power p must be >= 0")
        base = PowerLogExpr({(alpha, p): 1.0})
        chain = []
        expr = base
        for _ in range(MAX_CHAIN):
            expr = expr.antiderivative()
            chain.append(expr)

        def func(t, alpha=alpha, p=p):
            if t == 0.0:
                return 0.0 if alpha > 0 or (alpha == 0 and p > 0) else (1.0 if alpha == 0 else math.inf)
            v = t ** alpha
            return v * math.log(t) ** p if p else v

        def moments(j, X, alpha=alpha, p=p):
            anti = PowerLogExpr({(alpha + j, p): 1.0}).antiderivative()
            return anti(X)

        spec = cls(func=func, primitives=tuple(e.__call__ for e in chain),
                   moments=moments, label=f"t^{alpha:g}" + (f"*ln^{p}(t)" if p else ""))
        return _verified(spec)

    @classmethod
    def constant(cls, c: float = 1.0) -> "IntegrandSpec":
        c = float(c)
        spec = cls(func=lambda t: c,
                   primitives=tuple(
                       (lambda j: lambda t: c * t ** j / math.factorial(j))(j)
                       for j in range(1, MAX_CHAIN + 1)),
                   moments=lambda j, X: c * X ** (j + 1) / (j + 1),
                   label=f"{c:g}")
        return _verified(spec)

    @classmethod
    def periodic_poly(cls, p: PeriodicPolynomial) -> "IntegrandSpec":
        """x -> p({x}) with its first primitive mean*floor(x) + R({x})."""
        mean = float(periodic_mean(p))
        r_coeffs = [0.0] + [float(c) / (j + 1) for j, c in enumerate(p.coeffs)]

        def f1(t):
            fl = math.floor(t)
            u = t - fl
            acc = 0.0
            for c in reversed(r_coeffs):
                acc = acc * u + c
            return mean * fl + acc

        spec = cls(func=lambda t: p(t), primitives=(f1,), label=f"{p!r}@frac")
        return _verified(spec)

    @classmethod
    def from_primitives(cls, func, primitives, label: str = "user",
                        verify: bool = True) -> "IntegrandSpec":
        """User-supplied chain: primitives[0] must be int_0^x f, and so on."""
        spec = cls(func=func, primitives=tuple(primitives), label=label)
        return _verified(spec) if verify else spec

    @classmethod
    def sampled(cls, func, label: str = "sampled") -> "IntegrandSpec":
        """A bare callable; everything downstream goes through quadrature."""
        return cls(func=func, label=label)

    # -- helpers -----------------------------------------------------------

    def primitive(self) -> "IntegrandSpec":
        """The spec of int_0^x f, with the chain shifted down by one.

        Feeding this to primitive_limit turns a function-limit evaluation
        into an integral-value evaluation (one integration by parts).
        """
        if not self.primitives:
            raise ValueError(f"{self.label}: no antiderivative chain to shift")
        return IntegrandSpec(func=self.primitives[0], primitives=self.primitives[1:],
                             moments=None, label=f"int({self.label})",
                             verified=self.verified)

    def __repr__(self):
        return f"IntegrandSpec({self.label})"


def _verified(spec: IntegrandSpec) -> IntegrandSpec:
    _verify_chain(spec)
    return IntegrandSpec(func=spec.func, primitives=spec.primitives,
                         moments=spec.moments, label=spec.label, verified=True)


def _verify_chain(spec: IntegrandSpec) -> None:
    """Numeric-differentiation spot check of the whole chain."""
    if not spec.primitives:
        return
    rng = np.random.default_rng(20260815)
    pts = np.exp(rng.uniform(math.log(0.5), math.log(20.0), size=_VERIFY_POINTS))
    layers = (spec.func,) + spec.primitives
    h = 1e-5
    for lower, upper in zip(layers[:-1], layers[1:]):
        misses = 0
        for x in pts:
            x = float(x)
            d = (upper(x + h) - upper(x - h)) / (2.0 * h)
            want = lower(x)
            tol = 1e-4 * (1.0 + abs(want)) + 1e-10 * abs(upper(x))
            if not math.isfinite(d) or abs(d - want) > tol:
                misses += 1
        if misses > _VERIFY_ALLOWED_MISSES:
            raise ValueError(
                f"antiderivative chain of {spec.label} fails differentiation "
                f"check ({misses}/{_VERIFY_POINTS} probe points off)")


def default_grid(lo: float = 1e2, hi: float = 1e5, num: int = 16) -> tuple[float, ...]:
    """Geometric evaluation grid, 16 points over [1e2, 1e5] by default."""
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    if num < 8:
        raise ValueError("grid needs at least 8 points")
    return tuple(float(x) for x in np.geomspace(lo, hi, num))


def _validate_grid(grid) -> tuple[float, ...]:
    g = tuple(float(x) for x in grid)
    if len(g) < 8:
        raise ValueError("X grid needs at least 8 points")
    if g[0] <= 0 or any(b <= a for a, b in zip(g, g[1:])):
        raise ValueError("X grid must be positive and strictly increasing")
    if g[-1] / g[0] < 99.999:
        raise ValueError("X grid should span at least two decades")
    return g


# -- Riesz means ------------------------------------------------------------

def riesz_mean(spec: IntegrandSpec, k: float, X: float) -> float:
    """int_0^X (1 - t/X)^k f(t) dt for real order k > -1.

    Integer k uses the binomial moment expansion or the by-parts identity
    k! F_{k+1}(X)/X^k when the spec carries the structure; everything else
    falls back to windowed adaptive quadrature.
    """
    if X <= 0:
        raise ValueError("X must be positive")
    if k <= -1:
        raise ValueError(f"Riesz order must exceed -1, got {k}")
    ki = int(round(k))
    if k == ki and ki >= 0:
        if spec.moments is not None:
            terms = [math.comb(ki, j) * (-1.0 / X) ** j * spec.moments(j, X)
                     for j in range(ki + 1)]
            return math.fsum(terms)
        if len(spec.primitives) >= ki + 1:
            # one integration by parts per order: boundary terms vanish
            return math.factorial(ki) * spec.primitives[ki](X) / X ** ki
    return _riesz_quadrature(spec, k, X)


def _riesz_quadrature(spec: IntegrandSpec, k: float, X: float) -> float:
    f = spec.func

    def weighted(t):
        w = 1.0 - t / X
        if w <= 0.0:
            return 0.0
        return w ** k * f(t)

    n_windows = int(min(4096, max(1, math.ceil(X / 50.0))))
    edges = np.linspace(0.0, X, n_windows + 1)
    total = 0.0
    carry = 0.0
    err_total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _sciint.IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            val, err = _sciint.quad(weighted, a, b, epsabs=1e-12, epsrel=1e-10,
                                    limit=200)
            err_total += err
            t = total + val
            carry += (total - t) + val if abs(total) >= abs(val) else (val - t) + total
            total = t
    total += carry
    if err_total > 1e-8 * max(1.0, abs(total)):
        raise QuadratureError(
            f"quadrature for {spec.label} at X={X:g} did not converge "
            f"(error estimate {err_total:.3e})", err_total)
    return total


def cesaro_integral(spec: IntegrandSpec, k: float, X_grid=None,
                    tol: float = DEFAULT_TOL) -> CesaroEvaluation:
    """Cesaro value of int_0^inf f at order k, judged along an X grid.

    The grid must hold at least 8 increasing points across two decades; the
    value is the Riesz mean at the last point and convergence is dispersion
    of the last max(4, len//4) samples against tol.
    """
    grid = _validate_grid(default_grid() if X_grid is None else X_grid)
    samples = [riesz_mean(spec, k, X) for X in grid]
    return tail_judgement(samples, order=float(k), n_terms=len(grid), tol=tol,
                          tail_count=max(4, len(grid) // 4))


def primitive_limit(spec: IntegrandSpec, k: int, X_grid=None,
                    tol: float = DEFAULT_TOL) -> CesaroEvaluation:
    """Cesaro limit of the function f at integer order k: k! F_k(X) / X^k.

    F_k is the k-fold iterated primitive of f (F_1 = int_0^x f); k = 0
    samples f itself.  For the Cesaro value of the *integral* of f, pass
    ``spec.primitive()`` so the chain starts one level up.

    Needs the chain to depth k; a depth-1 fallback builds F_1 by cumulative
    quadrature for sampled integrands.
    """
    if k < 0 or k != int(k):
        raise ValueError("primitive_limit needs an integer order k >= 0")
    k = int(k)
    grid = _validate_grid(default_grid() if X_grid is None else X_grid)
    if k == 0:
        samples = [float(spec.func(X)) for X in grid]
    elif len(spec.primitives) >= k:
        Fk = spec.primitives[k - 1]
        kfact = math.factorial(k)
        samples = [kfact * Fk(X) / X ** k for X in grid]
    elif k == 1:
        samples = [s / X for s, X in zip(_cumulative_first_primitive(spec, grid), grid)]
    else:
        raise ValueError(
            f"{spec.label}: antiderivative chain of depth {k} required "
            f"(have {len(spec.primitives)}); cumulative quadrature only covers k = 1")
    return tail_judgement(samples, order=k, n_terms=len(grid), tol=tol,
                          tail_count=max(4, len(grid) // 4))


def _cumulative_first_primitive(spec: IntegrandSpec, grid) -> list[float]:
    """F_1 at each grid point by stitched adaptive quadrature."""
    f = spec.func
    out = []
    acc = 0.0
    prev = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _sciint.IntegrationWarning)
        for X in grid:
            n_windows = int(min(2048, max(1, math.ceil((X - prev) / 50.0))))
            for a, b in zip(np.linspace(prev, X, n_windows + 1)[:-1],
                            np.linspace(prev, X, n_windows + 1)[1:]):
                val, err = _sciint.quad(f, a, b, epsabs=1e-12, epsrel=1e-10, limit=200)
                if err > 1e-6:
                    raise QuadratureError(
                        f"cumulative primitive of {spec.label} stalled on "
                        f"[{a:g}, {b:g}] (error estimate {err:.3e})", err)
                acc += val
            out.append(acc)
            prev = X
    return out


# -- closed-form trig chains -------------------------------------------------

def _trig_primitive(a: float, j: int, want_sin: bool):
    """j-fold iterated primitive of sin(at) or cos(at), all layers 0 at 0.

    Complex form: the j-fold primitive of e^{iat} with vanishing initial data
    is (e^{iat} - Taylor head)/ (ia)^j; take Im for sin, Re for cos.
    """
    ia = 1j * a

    def F(t, j=j, ia=ia, want_sin=want_sin):
        z = ia * t
        head = 0j
        term = 1.0 + 0j
        for m in range(j):
            head += term
            term *= z / (m + 1)
        val = (cmath.exp(z) - head) / ia ** j
        return val.imag if want_sin else val.real

    return F


def _trig_moments(a: float, want_sin: bool):
    """Moment recurrences S_j = int t^j sin(at), C_j = int t^j cos(at)."""

    def moments(j, X, a=a, want_sin=want_sin):
        sX = math.sin(a * X)
        cX = math.cos(a * X)
        s = (1.0 - cX) / a
        c = sX / a
        for i in range(1, j + 1):
            s_new = -(X ** i) * cX / a + (i / a) * c
            c_new = (X ** i) * sX / a - (i / a) * s
            s, c = s_new, c_new
        return s if want_sin else c

    return moments


# module-level aliases for the factory classmethods
sin_wave = IntegrandSpec.sin_wave
cos_wave = IntegrandSpec.cos_wave
exp_decay = IntegrandSpec.exp_decay
power_log = IntegrandSpec.power_log
constant = IntegrandSpec.constant
periodic_poly = IntegrandSpec.periodic_poly
from_primitives = IntegrandSpec.from_primitives
sampled = IntegrandSpec.sampled
