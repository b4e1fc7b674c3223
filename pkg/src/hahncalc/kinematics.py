"""Deformed kinematics on the (q,w) lattice.

Uniform-velocity and constant-acceleration motion where the time derivative
is the Hahn difference quotient.  Three independent routes to the
constant-acceleration trajectory are provided:

* the closed form x(t) = x0 + v0 t + a t^2/(1+q) (uniform_accel_position),
* a generic fixed-point iteration that telescopes the defining first-order
  difference equation down the lattice (iterate_first_order),
* a second-order pipeline that substitutes h(t) = x(qt+w) - q x(t), solves
  the resulting first-order equation for h, and reconstructs x
  (solve_second_order_constant_accel).

All three agree within truncation error; the iteration is deliberately
ignorant of the closed forms so it can serve as an oracle for them.

Boundary data are anchored at the fixed point w0 = w/(1-q) of the lattice
map t -> qt + w, where the difference quotient degenerates and every
trajectory's value is pinned by x(w0) = x0 + v0 w0 + a w0^2/(1+q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    CONSECUTIVE_SMALL,
    DEFAULT_POLICY,
    W0_BRANCH_RTOL,
    DeformationParams,
    ScalarFunction,
    TruncationPolicy,
    _check_q,
    advance_n,
    lattice_step,
)
from .errors import NonConvergentError

__all__ = [
    "KinematicState",
    "IterationReport",
    "uniform_velocity_position",
    "uniform_accel_velocity",
    "uniform_accel_position",
    "accel_quotient_velocity",
    "position_at_fixed_point",
    "iterate_first_order",
    "solve_second_order_constant_accel",
]


@dataclass(frozen=True)
class KinematicState:
    """Initial data of a one-dimensional trajectory: x(0), v(0), and a."""

    x0: float
    v0: float
    a: float

    def __post_init__(self) -> None:
        for name in ("x0", "v0", "a"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class IterationReport:
    """Result of a lattice iteration.

    value is the computed x(t); steps is the number of lattice increments
    summed; residual is the distance of the last lattice point from the
    fixed point w0, which decays like q**steps * |t - w0|.
    """

    value: float
    steps: int
    residual: float


def uniform_velocity_position(state: KinematicState, t: float) -> float:
    """Position under constant deformed velocity: x0 + v0 t.

    The linear form is undeformed; it satisfies D_t x = v0 exactly because
    the Hahn quotient of a linear function is its slope.
    """
    return state.x0 + state.v0 * t


def uniform_accel_velocity(state: KinematicState, t: float) -> float:
    """Velocity under constant deformed acceleration: v0 + a t."""
    return state.v0 + state.a * t


def uniform_accel_position(state: KinematicState, t: float, q: float) -> float:
    """Closed-form position under constant acceleration.

    x(t) = x0 + v0 t + a t^2 / (1+q).  The quadratic coefficient carries
    1/[2]_q rather than 1/2 because the Hahn derivative of t^2 is
    (1+q)t - (...) rather than 2t; as q -> 1 the classical parabola returns.
    """
    _check_q(q)
    return state.x0 + state.v0 * t + state.a * t * t / (1.0 + q)


def accel_quotient_velocity(
    state: KinematicState, params: DeformationParams
) -> ScalarFunction:
    """Difference-quotient velocity of the closed constant-acceleration form.

    The Hahn quotient of x0 + v0 t + a t^2/(1+q) is

        v0 + a w/(1+q) + a t,

    which exceeds the deformed velocity v0 + a t by a constant that
    vanishes on the unshifted (w = 0) lattice.  This is the right-hand
    side whose first-order difference equation the closed trajectory
    actually satisfies, so feeding it to iterate_first_order reconstructs
    the closed form from the fixed-point anchor alone; feeding v0 + a t
    instead solves a different equation whose solution is
    x0 + v0 t + a t (t - w)/(1+q).
    """
    offset = state.v0 + state.a * params.w / (1.0 + params.q)

    def rhs(s: float) -> float:
        return offset + state.a * s

    return rhs


def position_at_fixed_point(state: KinematicState, params: DeformationParams) -> float:
    """x(w0) for the constant-acceleration trajectory.

    Evaluates the closed form at the lattice fixed point; this is the
    boundary datum every iterative route is anchored to.
    """
    return uniform_accel_position(state, params.w0, params.q)


def iterate_first_order(
    rhs: ScalarFunction,
    t: float,
    params: DeformationParams,
    x_at_w0: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> IterationReport:
    """Solve x(qt+w) - x(t) = ((q-1)t + w) rhs(t) for x(t), given x(w0).

    Writing the equation at the successive lattice points t_k = q^k t + [k]w
    and summing telescopes the unknown down to the fixed point:

        x(t) = x(w0) - sum_k u_k rhs(t_k),   u_k = q^k ((q-1)t + w).

    Increments are accumulated in ascending k with exactly rounded
    summation; the sum stops after CONSECUTIVE_SMALL successive increments
    below policy.tol and raises NonConvergentError if policy.max_terms is
    reached first.
    """
    q = params.q
    u0 = lattice_step(t, params)
    terms: list[float] = []
    qk = 1.0
    small = 0
    steps = 0
    for k in range(policy.max_terms):
        term = -u0 * qk * rhs(advance_n(t, k, params))
        terms.append(term)
        qk *= q
        steps = k + 1
        if abs(term) < policy.tol:
            small += 1
            if small >= CONSECUTIVE_SMALL:
                break
        else:
            small = 0
    else:
        raise NonConvergentError(
            f"first-order iteration at t={t!r} did not meet its stopping "
            f"rule within {policy.max_terms} increments"
        )
    value = x_at_w0 + math.fsum(terms)
    residual = abs(advance_n(t, steps, params) - params.w0)
    return IterationReport(value=value, steps=steps, residual=residual)


def solve_second_order_constant_accel(
    state: KinematicState,
    t: float,
    params: DeformationParams,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Constant-acceleration position via the second-order reduction.

    The substitution h(t) = x(qt+w) - q x(t) turns the second-order lattice
    equation with constant right-hand side a into a first-order equation
    for h whose own right-hand side is q a ((q-1)s + w).  Stage 1 solves
    that equation by lattice telescoping from h(w0) = (1-q) x(w0).  Stage 2
    inverts the substitution: for a trajectory of the form
    x(w0) + C (t-w0) + g (t-w0)^2 the substitution maps the linear part to
    a constant and scales the quadratic coefficient by q^2 - q, so

        g = (h(t) - h(w0)) / ((q^2 - q) (t - w0)^2),
        C = v0 + 2 a w0 / (1+q),

    and x(t) = x(w0) + C (t-w0) + g (t-w0)^2.  Near the fixed point the
    quadratic extraction is 0/0; there the linear part alone is returned,
    which is exact to second order in (t - w0).
    """
    q = params.q
    w0 = params.w0
    x_w0 = position_at_fixed_point(state, params)
    slope = state.v0 + 2.0 * state.a * w0 / (1.0 + q)
    if abs(t - w0) <= W0_BRANCH_RTOL * (1.0 + abs(w0)):
        return x_w0 + slope * (t - w0)

    def rhs_h(s: float) -> float:
        return q * state.a * lattice_step(s, params)

    h_w0 = (1.0 - q) * x_w0
    h_t = iterate_first_order(rhs_h, t, params, h_w0, policy).value
    quad = (h_t - h_w0) / ((q * q - q) * (t - w0) ** 2)
    return x_w0 + slope * (t - w0) + quad * (t - w0) ** 2
