"""Deformed exponential functions.

Three related objects, each truncated under a TruncationPolicy:

* exp_qw: the (q,w)-exponential e_{q,w}(at) = 1/(-a((q-1)t + w); q)_inf,
  the eigenfunction of the Hahn derivative, D_t e_{q,w}(at) = a e_{q,w}(at).
  Its poles in t are genuine features of the deformed dynamics and raise
  PoleEncounteredError rather than returning infinities.
* exp_q_series: the q-exponential e_q(x) = sum_n x^n/[n]_q!, convergent for
  |x| < 1/(1-q) because the term ratio tends to x(1-q).
* exp_qinv_series: its q -> 1/q counterpart written with bounded factors,
  e_{1/q}(x) = sum_n q^(n(n-1)/2) x^n/[n]_q!, entire in x thanks to the
  superexponential q-power damping.

All three reduce to exp as (q, w) -> (1, 0).
"""

from __future__ import annotations

import math

from .core import (
    CONSECUTIVE_SMALL,
    DEFAULT_POLICY,
    DeformationParams,
    TruncationPolicy,
    _check_q,
    _qpochhammer_inf,
    lattice_step,
    q_factorial,
)
from .errors import NonConvergentError, OutOfRadiusError, PoleEncounteredError

__all__ = ["exp_qw", "exp_q_series", "exp_qinv_series", "odd_part_qinv"]

# Margin for the convergence-radius guard of exp_q_series: arguments with
# |x|(1-q) >= 1 - OUT_OF_RADIUS_MARGIN are rejected as divergent.
OUT_OF_RADIUS_MARGIN = 1e-12


def exp_qw(
    a: float,
    t: float,
    params: DeformationParams,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """The (q,w)-exponential e_{q,w}(at) evaluated at time t.

    Computed as the reciprocal of the infinite q-shifted factorial at
    argument -a((q-1)t + w).  The argument vanishes at t = w0, so
    exp_qw(a, w0) = 1 exactly for every a: the fixed point is where the
    deformed exponential takes its boundary value.

    Raises PoleEncounteredError when a factor of the underlying product
    vanishes within tolerance (a genuine pole of e_{q,w} in t), and
    propagates NonConvergentError from the product evaluation.
    """
    argument = -a * lattice_step(t, params)
    value, hit_zero = _qpochhammer_inf(argument, params.q, policy)
    if hit_zero:
        raise PoleEncounteredError(
            f"e_(q,w) pole: product factor vanishes for a={a!r}, t={t!r}, "
            f"q={params.q!r}, w={params.w!r}"
        )
    return 1.0 / value


def exp_q_series(x: float, q: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """The q-exponential series e_q(x) = sum_n x^n / [n]_q!.

    The series converges only for |x| < 1/(1-q); arguments at or beyond the
    radius raise OutOfRadiusError instead of returning a divergent partial
    sum.  Terms are generated by the ratio recurrence t_n = t_{n-1} x/[n]_q
    and accumulated with exactly rounded summation; the sum stops after
    CONSECUTIVE_SMALL successive terms below policy.tol.
    """
    _check_q(q)
    if abs(x) * (1.0 - q) >= 1.0 - OUT_OF_RADIUS_MARGIN:
        raise OutOfRadiusError(
            f"|x|(1-q) = {abs(x) * (1.0 - q)!r} >= 1: x={x!r} lies outside "
            f"the convergence radius 1/(1-q) for q={q!r}"
        )
    terms = [1.0]
    term = 1.0
    qn = 1.0
    small = 0
    for _ in range(policy.max_terms):
        qn *= q
        term *= x * (1.0 - q) / (1.0 - qn)
        terms.append(term)
        if abs(term) < policy.tol:
            small += 1
            if small >= CONSECUTIVE_SMALL:
                return math.fsum(terms)
        else:
            small = 0
    raise NonConvergentError(
        f"e_q series at x={x!r}, q={q!r} did not meet its stopping rule "
        f"within {policy.max_terms} terms"
    )


def exp_qinv_series(x: float, q: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """The q^(-1)-exponential series e_{1/q}(x) = sum_n q^(n(n-1)/2) x^n / [n]_q!.

    Written entirely with bounded factors of the base-q factorial; the
    q^(n(n-1)/2) damping enters through the term recurrence
    t_n = t_{n-1} q^(n-1) x/[n]_q, so the series is entire in x and no
    q^(-j)-sized quantity is ever formed.
    """
    _check_q(q)
    terms = [1.0]
    term = 1.0
    qn = 1.0
    qpow = 1.0  # q^(n-1) ahead of term n
    small = 0
    for _ in range(policy.max_terms):
        qn *= q
        term *= qpow * x * (1.0 - q) / (1.0 - qn)
        qpow *= q
        terms.append(term)
        if abs(term) < policy.tol:
            small += 1
            if small >= CONSECUTIVE_SMALL:
                return math.fsum(terms)
        else:
            small = 0
    raise NonConvergentError(
        f"e_(1/q) series at x={x!r}, q={q!r} did not meet its stopping rule "
        f"within {policy.max_terms} terms"
    )


def odd_part_qinv(
    a: float, q: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> tuple[float, float]:
    """Both sides of the odd-part identity of e_{1/q}, evaluated independently.

    Returns (lhs, rhs) with

        lhs = e_{1/q}(a) - e_{1/q}(-a)
        rhs = 2 sum_{n>=0} a^(2n+1) / [2n+1]_{1/q}!

    The left side sums the full series twice and lets the even terms cancel;
    the right side sums only the odd terms directly, each computed from the
    bounded rewrite q^(n(2n+1)) a^(2n+1)/[2n+1]_q!.  The two summation paths
    share no intermediate state, so their agreement is a genuine check.
    """
    _check_q(q)
    lhs = exp_qinv_series(a, q, policy) - exp_qinv_series(-a, q, policy)
    terms: list[float] = []
    small = 0
    for n in range(policy.max_terms):
        m = 2 * n + 1
        # n*m = m(m-1)/2: the damping exponent of the 1/q-factorial rewrite.
        term = 2.0 * q ** (n * m) * a**m / q_factorial(m, q)
        terms.append(term)
        if abs(term) < policy.tol:
            small += 1
            if small >= CONSECUTIVE_SMALL:
                return lhs, math.fsum(terms)
        else:
            small = 0
    raise NonConvergentError(
        f"odd-part series at a={a!r}, q={q!r} did not meet its stopping rule "
        f"within {policy.max_terms} terms"
    )
