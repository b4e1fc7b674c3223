"""Vertical motion in a resisting medium on the (q,w) lattice.

The retarding force is proportional to the two-point average
(v(t) + v(qt+w))/(1+q), so the equation of motion links neighbouring
lattice points and can be solved three independent ways:

* closed form in terms of the deformed exponentials (drag_velocity,
  gravity_drag_velocity),
* a power series with q^(n(2n+1)) weights for the gravity-driven part
  (gravity_drag_velocity_series),
* backward recursion of the lattice equation of motion itself from a
  far-downlattice boundary value (the *_iterative solvers), which assumes
  nothing beyond the equation of motion and therefore serves as the oracle
  for the other two.

Conventions: downward is positive, so g > 0 accelerates the fall.  The
drag strength enters through kappa = k/(m(1+q)).  Velocities are anchored
at the lattice fixed point w0 = w/(1-q), where every route returns v0; the
gravity-driven bracket is likewise a function of t - w0, which is what
makes the fixed-point value exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    CONSECUTIVE_SMALL,
    DEFAULT_POLICY,
    ZERO_FACTOR_TOL,
    DeformationParams,
    TruncationPolicy,
    _check_count,
    _check_q,
    advance_n,
    lattice_step,
    q_number,
)
from .errors import NonConvergentError, ZeroFactorError
from .qexp import exp_qinv_series, exp_qw

__all__ = [
    "DragParams",
    "kappa",
    "drag_velocity",
    "drag_velocity_iterative",
    "gravity_drag_velocity",
    "gravity_drag_velocity_series",
    "gravity_drag_velocity_iterative",
    "classical_drag_velocity",
    "gravity_kernel_iteration_sum",
    "gravity_kernel_resummed",
]


@dataclass(frozen=True)
class DragParams:
    """Physical data of the resisted fall.

    m is the mass, k the drag coefficient (force per unit velocity), g the
    gravitational acceleration (downward positive), v0 the velocity at the
    lattice fixed point.
    """

    m: float
    k: float
    g: float
    v0: float

    def __post_init__(self) -> None:
        for name in ("m", "k", "g", "v0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.m <= 0.0:
            raise ValueError(f"m must be positive, got {self.m!r}")
        if self.k <= 0.0:
            raise ValueError(f"k must be positive, got {self.k!r}")


def kappa(dp: DragParams, q: float) -> float:
    """Drag rate per unit lattice step: k/(m(1+q)).

    The 1+q in the denominator is the deformed 2 coming from averaging v
    over the two lattice points; as q -> 1 this becomes k/(2m).
    """
    _check_q(q)
    return dp.k / (dp.m * (1.0 + q))


def drag_velocity(
    dp: DragParams,
    t: float,
    params: DeformationParams,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Pure-drag velocity, closed form: v0 e_{q,w}(-kappa t)/e_{q,w}(kappa t).

    Satisfies m D_t v = -k (v(t) + v(qt+w))/(1+q) pointwise and returns v0
    exactly at t = w0.  Raises PoleEncounteredError at the real poles of
    the denominator exponential and propagates NonConvergentError.
    """
    rate = kappa(dp, params.q)
    return (
        dp.v0
        * exp_qw(-rate, t, params, policy)
        / exp_qw(rate, t, params, policy)
    )


def drag_velocity_iterative(
    dp: DragParams,
    t: float,
    params: DeformationParams,
    n_steps: int,
) -> float:
    """Pure-drag velocity by iterating the equation of motion n_steps times.

    The lattice equation of motion propagates v between neighbouring points
    with the ratio (1 + kappa u_j)/(1 - kappa u_j), u_j = q^j ((q-1)t + w).
    Chaining n_steps of these and approximating the far point's velocity by
    v0 (exact in the limit, since the lattice contracts to the fixed point)
    gives the finite-product form

        v(t) ~ v0 (-z; q)_{n_steps} / (z; q)_{n_steps},   z = kappa ((q-1)t + w).

    This route never consults the deformed exponentials, so it is an
    independent oracle for drag_velocity.  Raises ZeroFactorError when a
    denominator factor vanishes within tolerance.
    """
    _check_count(n_steps)
    z = kappa(dp, params.q) * lattice_step(t, params)
    ratio = 1.0
    zj = z
    for j in range(n_steps):
        denom = 1.0 - zj
        if abs(denom) < ZERO_FACTOR_TOL:
            raise ZeroFactorError(
                f"denominator factor 1 - q^{j} z vanishes for z={z!r}, "
                f"q={params.q!r}"
            )
        ratio *= (1.0 + zj) / denom
        zj *= params.q
    return dp.v0 * ratio


def gravity_drag_velocity(
    dp: DragParams,
    t: float,
    params: DeformationParams,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Gravity-plus-drag velocity, closed form.

    v(t) = v0 e_{q,w}(-kappa t)/e_{q,w}(kappa t)
           + ((1+q) m g / (2k)) e_{q,w}(-kappa t)
             [e_{1/q}(X) - e_{1/q}(-X)],   X = kappa (t - w0).

    The odd bracket is a function of the distance to the lattice fixed
    point, which is what pins v(w0) = v0 exactly; with g = 0 the bracket
    term carries a zero coefficient and the pure-drag form remains.
    Raises PoleEncounteredError at poles of the deformed exponentials and
    propagates NonConvergentError.
    """
    rate = kappa(dp, params.q)
    e_minus = exp_qw(-rate, t, params, policy)
    e_plus = exp_qw(rate, t, params, policy)
    x_arg = rate * (t - params.w0)
    bracket = exp_qinv_series(x_arg, params.q, policy) - exp_qinv_series(
        -x_arg, params.q, policy
    )
    coeff = (1.0 + params.q) * dp.m * dp.g / (2.0 * dp.k)
    return dp.v0 * e_minus / e_plus + coeff * e_minus * bracket


def gravity_drag_velocity_series(
    dp: DragParams,
    t: float,
    params: DeformationParams,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Gravity-plus-drag velocity with the driven part as an explicit odd series.

    The homogeneous part is the same exponential ratio as the closed form;
    the gravity-driven part is summed directly as

        ((1+q) m g / k) e_{q,w}(-kappa t)
            sum_{n>=0} q^(n(2n+1)) X^(2n+1) / [2n+1]_q!,   X = kappa (t - w0),

    using the term ratio q^(4n+3) X^2 / ([2n+2]_q [2n+3]_q) so no factorial
    is ever formed whole.  Agreement with gravity_drag_velocity within
    combined truncation error is the resummation check between the two ways
    of writing the driven response.
    """
    rate = kappa(dp, params.q)
    q = params.q
    e_minus = exp_qw(-rate, t, params, policy)
    e_plus = exp_qw(rate, t, params, policy)
    x_arg = rate * (t - params.w0)
    x_sq = x_arg * x_arg
    terms = [x_arg]  # n = 0 term: q^0 X / [1]_q!
    term = x_arg
    small = 1 if abs(x_arg) < policy.tol else 0
    converged = small >= CONSECUTIVE_SMALL
    if not converged:
        for n in range(policy.max_terms):
            term *= q ** (4 * n + 3) * x_sq / (
                q_number(2 * n + 2, q) * q_number(2 * n + 3, q)
            )
            terms.append(term)
            if abs(term) < policy.tol:
                small += 1
                if small >= CONSECUTIVE_SMALL:
                    converged = True
                    break
            else:
                small = 0
        if not converged:
            raise NonConvergentError(
                f"odd drag series at t={t!r} did not meet its stopping rule "
                f"within {policy.max_terms} terms"
            )
    driven = (1.0 + q) * dp.m * dp.g / dp.k * e_minus * math.fsum(terms)
    return dp.v0 * e_minus / e_plus + driven


def gravity_drag_velocity_iterative(
    dp: DragParams,
    t: float,
    params: DeformationParams,
    n_steps: int,
) -> float:
    """Gravity-plus-drag velocity by backward recursion of the motion equation.

    Starting from v = v0 at the n_steps-th lattice point (which has
    contracted toward the fixed point, where v0 is the exact datum), the
    equation of motion

        (1 - kappa u_j) v(t_j) = -g u_j + (1 + kappa u_j) v(t_{j+1})

    is unwound back to t_0 = t, with u_j = q^j ((q-1)t + w).  Nothing but
    the motion equation is assumed, so this validates both the closed form
    and the series resummation.  Raises ZeroFactorError when a factor
    1 - kappa u_j vanishes within tolerance.
    """
    _check_count(n_steps)
    rate = kappa(dp, params.q)
    u0 = lattice_step(t, params)
    v = dp.v0
    for j in range(n_steps - 1, -1, -1):
        uj = u0 * params.q**j
        denom = 1.0 - rate * uj
        if abs(denom) < ZERO_FACTOR_TOL:
            raise ZeroFactorError(
                f"denominator factor 1 - kappa u_{j} vanishes for t={t!r}, "
                f"q={params.q!r}, w={params.w!r}"
            )
        v = (-dp.g * uj + (1.0 + rate * uj) * v) / denom
    return v


def classical_drag_velocity(dp: DragParams, t: float) -> float:
    """Undeformed resisted fall: v0 e^(-kt/m) + (mg/k)(1 - e^(-kt/m)).

    The q -> 1, w -> 0 limit of every deformed route; approaches the
    terminal velocity mg/k as t grows.
    """
    decay = math.exp(-dp.k * t / dp.m)
    return dp.v0 * decay + dp.m * dp.g / dp.k * (1.0 - decay)


def _q_shifted_checked(a: float, q: float, count: int) -> float:
    """Finite product (a; q)_count with a ZeroFactorError on vanishing factors."""
    value = 1.0
    scaled = a
    for j in range(count):
        factor = 1.0 - scaled
        if abs(factor) < ZERO_FACTOR_TOL:
            raise ZeroFactorError(
                f"factor 1 - q^{j} a vanishes for a={a!r}, q={q!r}"
            )
        value *= factor
        scaled *= q
    return value


def gravity_kernel_iteration_sum(z: float, q: float, n_steps: int) -> float:
    """Driven-response kernel as the iteration writes it.

    S(z) = sum_{j=0}^{n_steps-1} q^j (-z; q)_j / (z; q)_{j+1}, the
    coefficient of -g ((q-1)t + w) accumulated by unwinding the motion
    equation n_steps times.  Raises ZeroFactorError on a vanishing
    denominator factor.
    """
    _check_q(q)
    _check_count(n_steps)
    total: list[float] = []
    qj = 1.0
    num = 1.0  # (-z; q)_j
    den = 1.0  # (z; q)_j
    zj = z  # q^j z
    for j in range(n_steps):
        factor = 1.0 - zj
        if abs(factor) < ZERO_FACTOR_TOL:
            raise ZeroFactorError(
                f"denominator factor 1 - q^{j} z vanishes for z={z!r}, q={q!r}"
            )
        den *= factor
        total.append(qj * num / den)
        num *= 1.0 + zj
        zj *= q
        qj *= q
    return math.fsum(total)


def gravity_kernel_resummed(z: float, q: float, n_steps: int) -> float:
    """Driven-response kernel resummed over odd powers of z.

    The same S(z) as gravity_kernel_iteration_sum, written as

        S(z) = [ sum_n  C(n_steps, 2n+1)_q  q^(n(2n+1))  z^(2n) ] / (z; q)_{n_steps}

    with C(.,.)_q the Gaussian binomial.  The two routes share no
    intermediate state; their agreement for finite n_steps is the
    combinatorial identity behind the odd-series form of the driven
    response.
    """
    _check_q(q)
    _check_count(n_steps)
    den = _q_shifted_checked(z, q, n_steps)
    # Gaussian binomials via the (q; q) factorials, built incrementally.
    qq = [1.0]
    acc = 1.0
    scaled = q
    for _ in range(n_steps):
        acc *= 1.0 - scaled
        scaled *= q
        qq.append(acc)
    terms: list[float] = []
    z_even = 1.0
    for n in range((n_steps + 1) // 2):
        odd = 2 * n + 1
        binom = qq[n_steps] / (qq[odd] * qq[n_steps - odd])
        terms.append(binom * q ** (n * odd) * z_even)
        z_even *= z * z
    return math.fsum(terms) / den
