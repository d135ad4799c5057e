"""Shared convergence record for the numeric Cesaro evaluators.

Every estimator in this package (series, integrals, staircase limits) samples
a normalized quantity along a tail of indices or grid points and judges
convergence the same way: by the dispersion (max - min) of the tail samples
against a tolerance.  Divergence is a result, never an exception.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["CesaroEvaluation", "tail_judgement"]

TRACE_LEN = 8


@dataclass(frozen=True)
class CesaroEvaluation:
    """Outcome of a Cesaro-style limit evaluation.

    value          last sample of the normalized quantity
    order          the Cesaro order k used (float to allow Riesz real orders)
    n_terms        how many terms / boundaries / grid points were consumed
    trace          the last few samples, oldest first (length >= 2)
    error_estimate dispersion of the tail window (inf when non-finite)
    converged      True iff every tail sample is finite and dispersion <= tol
    """

    value: float
    order: float
    n_terms: int
    trace: tuple[float, ...]
    error_estimate: float
    converged: bool


def tail_judgement(samples, order, n_terms, tol, tail_count) -> CesaroEvaluation:
    """Build a CesaroEvaluation from a full sample sequence.

    ``tail_count`` samples from the end form the dispersion window.  The
    reported value is always the final sample, converged or not.
    """
    samples = [float(s) for s in samples]
    if len(samples) < 2:
        raise ValueError("need at least two samples to judge convergence")
    tail_count = max(2, min(tail_count, len(samples)))
    tail = samples[-tail_count:]
    if all(math.isfinite(s) for s in tail):
        dispersion = max(tail) - min(tail)
    else:
        dispersion = math.inf
    converged = math.isfinite(dispersion) and dispersion <= tol
    trace = tuple(samples[-min(len(samples), TRACE_LEN):])
    return CesaroEvaluation(
        value=samples[-1],
        order=order,
        n_terms=n_terms,
        trace=trace,
        error_estimate=dispersion,
        converged=converged,
    )
