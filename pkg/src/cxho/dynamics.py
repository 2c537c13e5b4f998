"""Two-state time development, coherent closed forms and weak values.

The forward state evolves under the Hamiltonian, the backward (final-time)
state under its metric adjoint, so level n of the forward state picks up
exp(-i*omega*(n+1/2)*dt) while the backward state picks up the conjugate
frequency.  The normalized matrix element between them,
(b|O|a)/(b|a) in the metric inner product, is the weak value sampled along
a trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import VanishingOverlapError
from .fock import FockRep, StateVec, coherent_coeffs, q_inner
from .params import ModelParams

#: Smallest overlap magnitude we are willing to divide by.
OVERLAP_GUARD = 1e-300


def _phases(params: ModelParams, omega: complex, dt: float, n: int) -> np.ndarray:
    return np.exp(-1j * omega * (np.arange(n) + 0.5) * dt)


def evolve_a(a0: StateVec, dt: float, params: ModelParams) -> StateVec:
    """Propagate a forward state by dt (level phases exp(-i*omega*(n+1/2)*dt))."""
    return StateVec(a0.coeffs * _phases(params, params.omega, dt, len(a0)))


def evolve_b(b0: StateVec, dt: float, params: ModelParams) -> StateVec:
    """Propagate a backward state by dt; uses the conjugate frequency."""
    return StateVec(b0.coeffs * _phases(params, np.conj(params.omega), dt, len(b0)))


def coherent_lambda(lambda0: complex, dt: float, which: str,
                    params: ModelParams) -> complex:
    """Closed-form coherent label at time offset dt for an 'A' or 'B' state."""
    if which == "A":
        return lambda0 * np.exp(-1j * params.omega * dt)
    if which == "B":
        return lambda0 * np.exp(-1j * np.conj(params.omega) * dt)
    raise ValueError(f"which must be 'A' or 'B', got {which!r}")


def coherent_state_at(lambda0: complex, dt: float, which: str, n_max: int,
                      params: ModelParams) -> StateVec:
    """Closed-form evolved coherent state, prefactor included.

    Must agree with propagating the coherent coefficients level by level, up
    to the truncation tail.
    """
    omega_i = params.omega.imag
    lam_t = coherent_lambda(lambda0, dt, which, params)
    if which == "A":
        pref = (np.exp(-0.5j * params.omega * dt)
                * np.exp(-0.5 * abs(lambda0) ** 2 * (1 - np.exp(2 * omega_i * dt))))
    elif which == "B":
        pref = (np.exp(-0.5j * np.conj(params.omega) * dt)
                * np.exp(-0.5 * abs(lambda0) ** 2 * (1 - np.exp(-2 * omega_i * dt))))
    else:
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    return StateVec(pref * coherent_coeffs(lam_t, n_max).coeffs)


def weak_value(op: np.ndarray, a: StateVec, b: StateVec) -> complex:
    """Normalized matrix element (b|op|a)/(b|a) in the metric inner product."""
    denom = q_inner(b, a)
    if abs(denom) <= OVERLAP_GUARD:
        raise VanishingOverlapError(f"|overlap| = {abs(denom):.3e}")
    return complex(np.vdot(b.coeffs, op @ a.coeffs) / denom)


def weak_qp_closed(lambda_a_t: complex, lambda_b_t: complex,
                   params: ModelParams) -> tuple[complex, complex]:
    """Closed-form weak values of position and momentum for a coherent pair."""
    mw, hbar = params.momega, params.hbar
    lb_conj = np.conj(lambda_b_t)
    q = np.sqrt(hbar / (2 * mw)) * (lambda_a_t + lb_conj)
    p = -1j * np.sqrt(hbar * mw / 2) * (lambda_a_t - lb_conj)
    return complex(q), complex(p)


@dataclass(frozen=True)
class TwoStateSystem:
    """Boundary states at their own times, both metric-normalized."""

    a0: StateVec
    b0: StateVec
    t_a: float
    t_b: float
    params: ModelParams
    rep: FockRep

    def __post_init__(self):
        for name, state in (("a0", self.a0), ("b0", self.b0)):
            if abs(state.norm - 1.0) > 1e-12:
                raise ValueError(f"{name} must be metric-normalized, "
                                 f"norm = {state.norm!r}")

    def states_at(self, t: float) -> tuple[StateVec, StateVec]:
        return (evolve_a(self.a0, t - self.t_a, self.params),
                evolve_b(self.b0, t - self.t_b, self.params))


@dataclass(frozen=True)
class WeakValueSample:
    t: float
    amplitude: complex
    q_op: complex
    p_op: complex
    q_herm: complex
    p_herm: complex
    h_herm: complex


def ehrenfest_residual(system: TwoStateSystem, t: float,
                       dt_fd: float) -> tuple[complex, complex]:
    """Residuals of d<q>/dt = <p>/m and d<p>/dt = -m*omega^2*<q>.

    Central finite differences of the matrix-route weak values; both
    residuals shrink as O(dt_fd^2).
    """
    if dt_fd <= 0:
        raise ValueError(f"dt_fd must be positive, got {dt_fd!r}")

    def qp_at(time):
        a, b = system.states_at(time)
        return (weak_value(system.rep.q_op, a, b),
                weak_value(system.rep.p_op, a, b))

    q_minus, p_minus = qp_at(t - dt_fd)
    q_mid, p_mid = qp_at(t)
    q_plus, p_plus = qp_at(t + dt_fd)
    dq = (q_plus - q_minus) / (2 * dt_fd)
    dp = (p_plus - p_minus) / (2 * dt_fd)
    m, omega = system.params.m, system.params.omega
    return dq - p_mid / m, dp + m * omega * omega * q_mid


def trajectory(system: TwoStateSystem, times) -> list[WeakValueSample]:
    """Weak values and amplitude along a time grid inside [t_a, t_b].

    Times where the overlap vanishes are skipped (no sample is recorded for
    them); everything else is deterministic in the input order.
    """
    rep = system.rep
    out = []
    for t in times:
        if t < system.t_a - 1e-12 or t > system.t_b + 1e-12:
            raise ValueError(f"time {t!r} outside [{system.t_a}, {system.t_b}]")
        a, b = system.states_at(t)
        amplitude = q_inner(b, a)
        if abs(amplitude) <= OVERLAP_GUARD:
            continue
        out.append(WeakValueSample(
            t=float(t), amplitude=complex(amplitude),
            q_op=weak_value(rep.q_op, a, b),
            p_op=weak_value(rep.p_op, a, b),
            q_herm=weak_value(rep.q_herm, a, b),
            p_herm=weak_value(rep.p_herm, a, b),
            h_herm=weak_value(rep.h_herm, a, b),
        ))
    return out
