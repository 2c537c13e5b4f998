"""Maximization of the transition amplitude over normalized boundary states.

For duration T the amplitude between boundary states a and b is
sum_n conj(b_n) a_n exp(-i*omega*(n+1/2)*T), a bilinear form with the
diagonal kernel D = diag(exp(-i*omega*(n+1/2)*T)).  Its maximum over unit
vectors is the largest singular value of D.  When Im(omega) < 0 that value
is exp(T*Im(omega)/2), achieved only by concentrating both states on level
zero; when Im(omega) = 0 every phase-aligned pair achieves the maximum 1
and the problem is degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError
from .fock import FockRep, StateVec
from .params import ModelParams

#: Relative Im(omega) size below which the spectrum counts as real.
DEGENERACY_RTOL = 1e-12


def _kernel(params: ModelParams, duration: float, n: int) -> np.ndarray:
    return np.exp(-1j * params.omega * (np.arange(n) + 0.5) * duration)


def amplitude(a: StateVec, b: StateVec, duration: float,
              params: ModelParams) -> complex:
    """Transition amplitude between boundary states for the given duration.

    Independent of the common evolution time of the pair.
    """
    if len(a) != len(b):
        raise LengthMismatchError(f"lengths differ: {len(a)} vs {len(b)}")
    return complex(np.vdot(b.coeffs, _kernel(params, duration, len(a)) * a.coeffs))


def is_degenerate(params: ModelParams) -> bool:
    return abs(params.omega.imag) < DEGENERACY_RTOL * abs(params.omega)


def analytic_max(duration: float, params: ModelParams,
                 n_max: int) -> tuple[float, tuple[int, ...]]:
    """Supremum of |amplitude| over unit pairs, and the levels achieving it."""
    if duration <= 0:
        raise ValueError(f"duration must be positive, got {duration!r}")
    if is_degenerate(params):
        return 1.0, tuple(range(n_max))
    return math.exp(0.5 * duration * params.omega.imag), (0,)


@dataclass(frozen=True)
class MaximizationResult:
    a: StateVec
    b: StateVec
    duration: float
    amplitude_abs: float
    analytic_max: float
    ground_overlap: float
    degenerate: bool
    iterations: int
    converged: bool
    seed: int | None
    history: tuple[float, ...]


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    # global phase convention: leading component real positive when it
    # carries any weight
    lead = vec[0]
    if abs(lead) > 1e-12:
        vec = vec * (abs(lead) / lead)
    return vec


def maximize(duration: float, params: ModelParams, n_max: int,
             tol: float = 1e-12, max_iters: int = 10000,
             seed: int | None = 0,
             start: StateVec | None = None) -> MaximizationResult:
    """Find boundary states maximizing |amplitude| by alternating updates.

    Each sweep sets a to the normalized adjoint-kernel image of b and b to
    the normalized kernel image of a, which is power iteration for the top
    singular pair of the diagonal kernel; |amplitude| never decreases.
    Stops once neither |amplitude| nor the iterates move by more than
    ``tol`` (the amplitude stagnates well before the states do, and the
    vanishing of the coordinate weak values needs the states themselves).
    ``converged=False`` flags hitting ``max_iters``; the result is still
    returned.
    """
    if duration <= 0:
        raise ValueError(f"duration must be positive, got {duration!r}")
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    kernel = _kernel(params, duration, n_max)

    if start is not None:
        a_vec = start.coeffs.astype(np.complex128)
        if a_vec.size != n_max:
            raise LengthMismatchError(
                f"start has length {a_vec.size}, expected {n_max}")
        used_seed = None
    else:
        rng = np.random.default_rng(seed)
        a_vec = rng.standard_normal(n_max) + 1j * rng.standard_normal(n_max)
        used_seed = seed
    a_vec = _fix_phase(a_vec / np.linalg.norm(a_vec))
    b_vec = kernel * a_vec
    amp_abs = float(np.linalg.norm(b_vec))  # |b' D a| for the optimal b'
    b_vec = _fix_phase(b_vec / amp_abs)

    history = [amp_abs]
    converged = False
    iterations = 0
    for iterations in range(1, max_iters + 1):
        a_new = np.conj(kernel) * b_vec
        a_new = _fix_phase(a_new / np.linalg.norm(a_new))
        b_new = kernel * a_new
        new_amp = float(np.linalg.norm(b_new))
        b_new = _fix_phase(b_new / new_amp)
        step = max(np.abs(a_new - a_vec).max(), np.abs(b_new - b_vec).max())
        a_vec, b_vec = a_new, b_new
        history.append(new_amp)
        done = abs(new_amp - amp_abs) < tol and step < tol
        amp_abs = new_amp
        if done:
            converged = True
            break

    best, _ = analytic_max(duration, params, n_max)
    return MaximizationResult(
        a=StateVec(a_vec), b=StateVec(b_vec), duration=float(duration),
        amplitude_abs=amp_abs, analytic_max=best,
        ground_overlap=float(abs(a_vec[0])),
        degenerate=is_degenerate(params),
        iterations=iterations, converged=converged,
        seed=used_seed, history=tuple(history),
    )


def max_weak_values(result: MaximizationResult, rep: FockRep
                    ) -> tuple[complex, complex, complex]:
    """Weak values of q_herm, p_herm and h_herm between the maximizers.

    The backward state is transported to the initial time through the
    kernel before forming the normalized matrix elements.  For a
    non-degenerate converged result both coordinate values vanish and the
    energy value is the level-zero entry of h_herm; in the degenerate case
    the values are still returned but carry no such guarantee.
    """
    kernel = _kernel(rep.params, result.duration, result.a.coeffs.size)
    bra = np.conj(result.b.coeffs) * kernel
    denom = bra @ result.a.coeffs
    if abs(denom) <= 1e-300:
        raise ZeroDivisionError("maximizer overlap vanished")

    def wv(op):
        return complex((bra @ (op @ result.a.coeffs)) / denom)

    return wv(rep.q_herm), wv(rep.p_herm), wv(rep.h_herm)
