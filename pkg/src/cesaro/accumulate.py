"""Compensated floating-point accumulation helpers.

Long prefix-sum chains are the backbone of the Cesaro machinery, so plain
running sums would drift.  The Kahan-Babuska-Neumaier update keeps a carry
term alongside the running total; the pair (total, carry) loses essentially
nothing until the carry itself underflows.
"""
from __future__ import annotations

import math

__all__ = ["CompensatedSum", "compensated_prefix_sums"]


class CompensatedSum:
    """Running sum with a Neumaier carry.

    Non-finite inputs are propagated, not masked: once the total overflows to
    infinity the carry is dropped (it would otherwise poison the value with
    inf - inf = nan even for a series that is honestly +inf).
    """

    __slots__ = ("total", "carry")

    def __init__(self, start: float = 0.0):
        self.total = float(start)
        self.carry = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if math.isfinite(t):
            if abs(self.total) >= abs(x):
                self.carry += (self.total - t) + x
            else:
                self.carry += (x - t) + self.total
        else:
            self.carry = 0.0
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.carry

    def copy(self) -> "CompensatedSum":
        out = CompensatedSum()
        out.total = self.total
        out.carry = self.carry
        return out

    def __repr__(self) -> str:
        return f"CompensatedSum({self.value!r})"


def compensated_prefix_sums(values) -> list[float]:
    """Return the running sums of ``values`` as a list of floats.

    Each prefix is the compensated value accumulated so far, so the result is
    accurate to a few ulps even for millions of terms.
    """
    out = []
    append = out.append
    total = 0.0
    carry = 0.0
    for x in values:
        x = float(x)
        t = total + x
        if math.isfinite(t):
            if abs(total) >= abs(x):
                carry += (total - t) + x
            else:
                carry += (x - t) + total
        else:
            carry = 0.0
        total = t
        append(total + carry)
    return out
