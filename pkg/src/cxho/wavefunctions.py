"""Position-space wavefunctions and quadrature-based Gram/metric matrices.

Level wavefunctions are Hermite polynomials times a complex Gaussian, with
the complex product m*omega entering everywhere a real frequency would in
the textbook oscillator.  Overlaps between the two bases are analytic in
m*omega and are computed on a contour rotated by -arg(m*omega)/2, which
maps the integrand onto a real Gaussian; same-basis overlaps involve both
m*omega and its conjugate and are computed on the real axis.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._kernels import hermite_table, poly_gauss_eval
from .contour import DEFAULT_NODES, ContourPath, rotated_path
from .errors import (
    AsymmetryWarning,
    ConvergenceViolatedError,
    IllConditionedWarning,
    InvalidPathError,
    NotNormalizableError,
    ValidityExceededError,
)
from .params import ModelParams, regulated_momega

#: Condition-number threshold beyond which the Gram matrix is reported.
COND_LIMIT = 1e12


def hermite(n: int, z):
    """Physicists' Hermite polynomial H_n at complex z (scalar or array).

    Three-term recurrence; equivalent to the generator
    e^{z^2/2} (z - d/dz)^n e^{-z^2/2}.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    z_arr = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    vals = hermite_table(n + 1, z_arr)[n]
    return complex(vals[0]) if np.ndim(z) == 0 else vals.reshape(np.shape(z))


def _level_norms(n_max: int) -> np.ndarray:
    # 1/sqrt(2^n n!) through lgamma to survive large n
    n = np.arange(n_max, dtype=np.float64)
    lg = np.array([math.lgamma(k + 1.0) for k in range(n_max)])
    return np.exp(-0.5 * (lg + n * math.log(2.0)))


@dataclass(frozen=True)
class GaussPoly:
    """Polynomial times Gaussian: p(q - shift) * exp(-gauss_scale*(q-shift)^2/2)."""

    poly_coeffs: np.ndarray
    gauss_scale: complex
    shift: complex = 0j

    def __post_init__(self):
        c = np.array(self.poly_coeffs, dtype=np.complex128)
        c.flags.writeable = False
        object.__setattr__(self, "poly_coeffs", c)

    @property
    def degree(self) -> int:
        return self.poly_coeffs.size - 1

    def __call__(self, q):
        q_arr = np.atleast_1d(np.asarray(q, dtype=np.complex128)).ravel()
        vals = poly_gauss_eval(self.poly_coeffs, self.gauss_scale, self.shift, q_arr)
        return complex(vals[0]) if np.ndim(q) == 0 else vals.reshape(np.shape(q))


def _basis_momega(basis: int, params: ModelParams) -> complex:
    if basis == 1:
        return params.momega
    if basis == 2:
        return np.conj(params.momega)
    raise ValueError(f"basis must be 1 or 2, got {basis!r}")


def eigenfunction(basis: int, n: int, q, params: ModelParams):
    """Level-n wavefunction of basis 1 (or its dual partner, basis 2).

    Valid for n < 1/eps, where the regulator corrections to the polynomial
    part stay negligible; beyond that a ValidityExceededError is raised.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n >= 1.0 / params.eps:
        raise ValidityExceededError(
            f"n = {n} >= 1/eps = {1.0 / params.eps:.6g}")
    mw = _basis_momega(basis, params)
    hbar = params.hbar
    scale = np.sqrt(mw / hbar)
    pref = (mw / (math.pi * hbar)) ** 0.25 * math.exp(
        -0.5 * (math.lgamma(n + 1.0) + n * math.log(2.0)))
    q_arr = np.asarray(q, dtype=np.complex128)
    vals = pref * hermite(n, scale * q_arr) * np.exp(-0.5 * mw / hbar * q_arr**2)
    return vals if np.ndim(q) else complex(vals)


def _resolve_regulators(params: ModelParams, eps, eps_prime) -> tuple[float, float]:
    eps = params.eps if eps is None else float(eps)
    eps_prime = params.eps_prime if eps_prime is None else float(eps_prime)
    if eps < 0 or eps_prime < 0 or eps * eps_prime >= 1:
        raise ValueError(f"invalid regulators ({eps!r}, {eps_prime!r})")
    return eps, eps_prime


def _regulated_data(params: ModelParams, eps: float, eps_prime: float):
    mw = params.momega
    mw1, mw2 = regulated_momega(mw, eps, eps_prime)
    if mw1.real <= 0 or mw2.real <= 0:
        raise ConvergenceViolatedError(
            f"need Re of both shifted m*omega products > 0, got "
            f"{mw1.real:.6g} and {mw2.real:.6g}")
    if mw.real <= eps_prime or (eps > 0 and mw.real >= 1.0 / eps):
        raise ConvergenceViolatedError(
            f"need eps' < Re(m*omega) < 1/eps, got Re = {mw.real:.6g}")
    c = (mw * (1 - eps * eps_prime)
         / (math.pi * params.hbar * (1 - mw * mw * eps * eps))) ** 0.25
    return mw1, mw2, c


def ground_regulated(basis: int, q, params: ModelParams,
                     eps: float | None = None, eps_prime: float | None = None):
    """Finite-regulator ground-state wavefunction.

    Basis 1 is C*exp(-mw1*q^2/(2 hbar)); basis 2 is the conjugate-coefficient
    partner with mw2.  The shared constant C makes the dual overlap of the
    two ground states equal one.  Regulators default to the ones stored in
    ``params``; pass 0 explicitly for the regulator-free forms.
    """
    eps, eps_prime = _resolve_regulators(params, eps, eps_prime)
    mw1, mw2, c = _regulated_data(params, eps, eps_prime)
    if basis == 1:
        alpha, pref = mw1, c
    elif basis == 2:
        alpha, pref = np.conj(mw2), np.conj(c)
    else:
        raise ValueError(f"basis must be 1 or 2, got {basis!r}")
    q_arr = np.asarray(q, dtype=np.complex128)
    vals = pref * np.exp(-0.5 * alpha / params.hbar * q_arr**2)
    return vals if np.ndim(q) else complex(vals)


def excited_regulated(basis: int, n: int, params: ModelParams,
                      eps: float | None = None,
                      eps_prime: float | None = None) -> GaussPoly:
    """Finite-regulator level-n wavefunction as an exact GaussPoly.

    The ladder differential operator (q - (hbar/beta) d/dq) is applied n
    times through a polynomial-coefficient recurrence, never by numerical
    differentiation.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    eps, eps_prime = _resolve_regulators(params, eps, eps_prime)
    mw1, mw2, c = _regulated_data(params, eps, eps_prime)
    hbar, mw = params.hbar, params.momega
    if basis == 1:
        alpha, beta = mw1, mw2
        step = np.sqrt(mw / (2 * hbar)) * (1 + eps_prime / mw) / math.sqrt(1 - eps * eps_prime)
        pref = c
    elif basis == 2:
        alpha, beta = np.conj(mw2), np.conj(mw1)
        mwc = np.conj(mw)
        step = np.sqrt(mwc / (2 * hbar)) * (1 - eps_prime / mwc) / math.sqrt(1 - eps * eps_prime)
        pref = np.conj(c)
    else:
        raise ValueError(f"basis must be 1 or 2, got {basis!r}")

    # (q - (hbar/beta) d/dq) maps p(q) e^{-alpha q^2/(2 hbar)} to
    # [(1 + alpha/beta) q p - (hbar/beta) p'] e^{-alpha q^2/(2 hbar)}
    poly = np.array([1.0 + 0j])
    grow = 1.0 + alpha / beta
    for _ in range(n):
        shifted = np.concatenate(([0j], grow * poly))
        deriv = poly[1:] * np.arange(1, poly.size)
        shifted[:deriv.size] -= (hbar / beta) * deriv
        poly = shifted
    scale = pref * step**n * math.exp(-0.5 * math.lgamma(n + 1.0))
    return GaussPoly(poly_coeffs=scale * poly, gauss_scale=alpha / hbar)


def coherent_wavefunction(basis: int, lam: complex, q, params: ModelParams):
    """Displaced-Gaussian form of the coherent state wavefunction."""
    mw = _basis_momega(basis, params)
    if mw.real <= 0:
        raise NotNormalizableError(
            f"coherent states need Re(m*omega) > 0, got {mw.real:.6g}")
    hbar = params.hbar
    pref = (np.exp(0.5 * (lam * lam - abs(lam) ** 2))
            * (mw / (math.pi * hbar)) ** 0.25)
    center = lam * np.sqrt(2 * hbar / mw)
    q_arr = np.asarray(q, dtype=np.complex128)
    vals = pref * np.exp(-0.5 * mw / hbar * (q_arr - center) ** 2)
    return vals if np.ndim(q) else complex(vals)


def _check_path_converges(momega: complex, path: ContourPath) -> None:
    phi = cmath.phase(path.direction)
    if (momega * path.direction**2).real <= 0:
        raise InvalidPathError(
            f"Gaussian integrand grows along a path at angle {phi:.6g} "
            f"for arg(m*omega) = {cmath.phase(momega):.6g}")


def default_cross_path(params: ModelParams, n_max: int,
                       n_nodes: int = DEFAULT_NODES,
                       half_width: float | None = None) -> ContourPath:
    """Contour at angle -arg(m*omega)/2 sized for levels up to n_max."""
    if half_width is None:
        half_width = 12.0 * math.sqrt(params.hbar * n_max / params.r)
    return rotated_path(-params.theta / 2, half_width, n_nodes)


def cross_gram(params: ModelParams, n_max: int,
               path: ContourPath | None = None,
               n_nodes: int = DEFAULT_NODES) -> np.ndarray:
    """Dual-basis overlap matrix by contour quadrature; contracts to identity.

    Entry (m, n) integrates the analytic-in-m*omega product of the dual
    partner of level m with level n.  The default contour is the ray at
    -arg(m*omega)/2, on which the integrand is a real Gaussian.
    """
    if not params.normalizable:
        raise NotNormalizableError(
            f"|arg(m*omega)| = {abs(params.theta):.6g} >= pi/2")
    if n_max >= 1.0 / params.eps:
        raise ValidityExceededError(
            f"n_max = {n_max} >= 1/eps = {1.0 / params.eps:.6g}")
    if path is None:
        path = default_cross_path(params, n_max, n_nodes)
    mw, hbar = params.momega, params.hbar
    _check_path_converges(mw, path)
    x = np.sqrt(mw / hbar) * path.nodes
    table = hermite_table(n_max, x)
    envelope = path.weights * np.exp(-x * x) * path.direction
    raw = (table * envelope) @ table.T
    norms = _level_norms(n_max)
    return np.sqrt(mw / (math.pi * hbar)) * np.outer(norms, norms) * raw


@dataclass(frozen=True)
class GramMatrices:
    """Same-basis Gram matrix S, its inverse (the metric matrix), and the
    dual-basis cross matrix, with the condition number of S."""

    S: np.ndarray
    Qmat: np.ndarray
    cross: np.ndarray
    condition_number: float


def gram_and_metric(params: ModelParams, n_max: int,
                    n_nodes: int = DEFAULT_NODES,
                    half_width: float | None = None) -> GramMatrices:
    """Gram matrix of the mode basis, the metric matrix, and the cross matrix.

    S is integrated on the real axis, where its integrand decays like
    exp(-Re(m*omega) q^2 / hbar).  The metric matrix is the inverse of S via
    a Cholesky factorization of the symmetrized S.  Ill conditioning beyond
    1e12 is reported through IllConditionedWarning but the result is still
    returned.
    """
    if not params.normalizable:
        raise NotNormalizableError(
            f"|arg(m*omega)| = {abs(params.theta):.6g} >= pi/2")
    mw, hbar = params.momega, params.hbar
    if half_width is None:
        half_width = 12.0 * math.sqrt(hbar * n_max / mw.real)
    path = rotated_path(0.0, half_width, n_nodes)
    x = np.sqrt(mw / hbar) * path.nodes
    table = hermite_table(n_max, x)
    envelope = path.weights * np.exp(-mw.real / hbar * path.nodes.real**2)
    raw = (np.conj(table) * envelope) @ table.T
    norms = _level_norms(n_max)
    s_mat = math.sqrt(params.r / (math.pi * hbar)) * np.outer(norms, norms) * raw

    asym = float(np.abs(s_mat - s_mat.conj().T).max() / np.abs(s_mat).max())
    if asym > 1e-10:
        warnings.warn(f"relative Gram matrix asymmetry {asym:.3e} exceeds 1e-10",
                      AsymmetryWarning)
    s_mat = 0.5 * (s_mat + s_mat.conj().T)

    cond = float(np.linalg.cond(s_mat))
    if cond > COND_LIMIT:
        warnings.warn(f"Gram matrix condition number {cond:.3e} exceeds "
                      f"{COND_LIMIT:g}", IllConditionedWarning)
    try:
        factor = scipy.linalg.cho_factor(s_mat)
        q_mat = scipy.linalg.cho_solve(factor, np.eye(n_max, dtype=np.complex128))
    except np.linalg.LinAlgError:
        warnings.warn("Cholesky failed; falling back to a generic inverse",
                      IllConditionedWarning)
        q_mat = np.linalg.inv(s_mat)
    q_mat = 0.5 * (q_mat + q_mat.conj().T)

    cross = cross_gram(params, n_max, n_nodes=n_nodes)
    return GramMatrices(S=s_mat, Qmat=q_mat, cross=cross, condition_number=cond)
