"""Exact rational algebra: Bernoulli numbers, Faulhaber power sums, zeta at
non-positive integers, and the periodic polynomials that split the power-sum
staircase into x-power layers.

Everything here is computed over ``fractions.Fraction``; no floats enter.
Convention: B_1 = -1/2 (the generating function t/(e^t - 1)).  The Faulhaber
identity below requires this sign and would be silently wrong under B_1 = +1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational

__all__ = [
    "BernoulliTable",
    "bernoulli",
    "FaulhaberResult",
    "faulhaber",
    "faulhaber_sum",
    "zeta_neg_int",
    "PeriodicPolynomial",
    "pm_polynomial",
    "periodic_mean",
]


class BernoulliTable:
    """Memoized Bernoulli numbers B_0, B_1, ... with B_1 = -1/2.

    Values are extended with the recurrence

        B_n = -1/(n+1) * sum_{k=0}^{n-1} C(n+1, k) B_k,

    which is the defining relation sum_{k=0}^{n} C(n+1, k) B_k = 0 (n >= 1)
    solved for its last entry.  Extension work is quadratic in the target
    index; indices in the low hundreds are effectively instant, and the big
    Fraction denominators are the only practical bound far beyond that.

    The table mutates only by appending.  It is not locked: share one across
    threads only behind external synchronization, or keep it thread-local.
    """

    def __init__(self):
        self._values: list[Fraction] = [Fraction(1)]

    def extend_to(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        vals = self._values
        while len(vals) <= n:
            m = len(vals)  # computing B_m
            acc = Fraction(0)
            for k in range(m):
                acc += comb(m + 1, k) * vals[k]
            vals.append(-acc / (m + 1))

    def value(self, n: int) -> Fraction:
        self.extend_to(n)
        return self._values[n]

    __getitem__ = value

    @property
    def values(self) -> tuple[Fraction, ...]:
        """Snapshot of everything computed so far."""
        return tuple(self._values)

    def __len__(self) -> int:
        return len(self._values)


_TABLE = BernoulliTable()


def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number (B_1 = -1/2 convention), exact."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("bernoulli expects an int index")
    return _TABLE.value(n)


def faulhaber_sum(n: int, m: int) -> Fraction:
    """Exact power sum 1^n + 2^n + ... + (m-1)^n via the Bernoulli form

        sum_{k=1}^{m-1} k^n = 1/(n+1) * sum_{k=0}^{n} C(n+1, k) B_k m^(n-k+1).

    Note the upper limit m-1: the identity is cleanest with an exclusive
    endpoint, and callers who want 1..M pass m = M + 1.  Requires n >= 1
    (the n = 0 counting case does not fit the identity) and m >= 1.
    """
    if n < 1:
        raise ValueError(f"faulhaber_sum needs exponent n >= 1, got {n}")
    if m < 1:
        raise ValueError(f"faulhaber_sum needs upper bound m >= 1, got {m}")
    _TABLE.extend_to(n)
    acc = Fraction(0)
    for k in range(n + 1):
        acc += comb(n + 1, k) * _TABLE.value(k) * Fraction(m) ** (n - k + 1)
    return acc / (n + 1)


@dataclass(frozen=True)
class FaulhaberResult:
    """A power sum together with the inputs that produced it."""

    n: int
    m: int
    value: Fraction


def faulhaber(n: int, m: int) -> FaulhaberResult:
    """Like faulhaber_sum, wrapped with its parameters for record-keeping."""
    return FaulhaberResult(n=n, m=m, value=faulhaber_sum(n, m))


def zeta_neg_int(n: int) -> Fraction:
    """Riemann zeta at -n for integer n >= 0, exact.

    zeta(0) = -1/2, and zeta(-n) = -B_{n+1}/(n+1) for n >= 1.  The n = 0
    case is special: -B_1/1 would give +1/2, the wrong sign.
    """
    if n < 0:
        raise ValueError(f"zeta_neg_int expects n >= 0 (the argument is -n), got {n}")
    if n == 0:
        return Fraction(-1, 2)
    return -bernoulli(n + 1) / (n + 1)


class PeriodicPolynomial:
    """A 1-periodic function u -> p({u}) given by polynomial coefficients in
    the fractional part, p(u) = sum_j coeffs[j] * u^j with exact Fraction
    coefficients.

    Calling it with a Fraction keeps the arithmetic exact; calling it with a
    float evaluates in float.  Either way the argument is reduced mod 1 first.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        if isinstance(x, Rational):
            u = Fraction(x) - math.floor(x)
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * u + c
            return acc
        xf = float(x)
        u = xf - math.floor(xf)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * u + float(c)
        return acc

    def __eq__(self, other):
        return isinstance(other, PeriodicPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        body = " + ".join(f"({c})*{{x}}^{j}" for j, c in enumerate(self.coeffs) if c != 0)
        return f"PeriodicPolynomial[{body or '0'}]"


def pm_polynomial(n: int, m: int) -> PeriodicPolynomial:
    """The coefficient polynomial P_m in the exact staircase split

        sum_{k=1}^{[x]} k^n - x^(n+1)/(n+1) = sum_{m=0}^{n} P_m({x}) x^m.

    Substituting [x] + 1 = x + (1 - {x}) into the Faulhaber form of the
    power sum and expanding binomially in x gives

        P_m(u) = 1/(n+1) * sum_k C(n+1, k) C(n-k+1, m) B_k (1 - u)^(n-k-m+1),

    where k runs over 0..n for m = 0 and 0..n-m+1 otherwise.  The x^(n+1)
    term of the expansion cancels the subtracted x^(n+1)/(n+1) exactly, so
    the layers stop at m = n.  The result is returned expanded in the
    monomial basis of u = {x}.

    Means over one period: P_m has mean 0 for 1 <= m <= n, and P_0 has mean
    -B_{n+1}/(n+1), which is what makes the staircase converge to zeta(-n)
    in the Cesaro sense.
    """
    if n < 1:
        raise ValueError(f"pm_polynomial needs n >= 1, got {n}")
    if not 0 <= m <= n:
        raise ValueError(f"pm_polynomial index m out of range: need 0 <= m <= {n}, got {m}")
    _TABLE.extend_to(n)
    top = n if m == 0 else n - m + 1
    # (1 - u)^e expands as sum_i C(e, i) (-1)^i u^i
    coeffs = [Fraction(0)] * (n - m + 2)
    for k in range(top + 1):
        c = Fraction(comb(n + 1, k) * comb(n - k + 1, m)) * _TABLE.value(k)
        if c == 0:
            continue
        e = n - k - m + 1
        for i in range(e + 1):
            term = c * comb(e, i)
            coeffs[i] += -term if i % 2 else term
    return PeriodicPolynomial([c / (n + 1) for c in coeffs])


def periodic_mean(p: PeriodicPolynomial) -> Fraction:
    """Exact mean of p({x}) over one period: sum_j coeffs[j] / (j+1)."""
    return sum((c / (j + 1) for j, c in enumerate(p.coeffs)), Fraction(0))
