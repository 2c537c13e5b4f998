"""Model parameters, validity conditions and the angle-plane classification.

The oscillator is defined by a complex mass ``m`` and a complex angular
frequency ``omega``.  Convergence of the underlying path integral restricts
the pair of arguments (theta_m, theta_omega) to a closed parallelogram:

    0 <= theta_m <= pi          (Im m >= 0)
    -pi <= theta_m + 2*theta_omega <= 0     (Im(m omega^2) <= 0)

Inside that parallelogram the model decomposes into three theories selected
by the sign of Re(m) (usual, imaginary and flipped time) and into five
regions selected by the sign pattern of the real and imaginary parts of the
quadratic potential.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateDivisionError,
    KineticDivergenceError,
    OutOfDomainError,
    PotentialDivergenceError,
    RegulatorError,
)

#: Absolute tolerance (radians) for all angle comparisons.  Boundary values
#: belong to the boundary region they label.
ANGLE_TOL = 1e-9


class Theory(str, Enum):
    UTT = "UTT"
    ITT = "ITT"
    FTT = "FTT"


class Potential(str, Enum):
    HO = "HO"
    IHO = "IHO"
    FREE_IMAG = "FREE_IMAG"


# Region -> potential label for each theory, from the sign pattern of the
# (frame-transformed) real and imaginary parts of the quadratic potential.
POTENTIAL_TABLE = {
    Theory.UTT: {1: Potential.HO, 2: Potential.HO, 3: Potential.FREE_IMAG,
                 4: Potential.IHO, 5: Potential.IHO},
    Theory.ITT: {1: Potential.FREE_IMAG, 2: Potential.HO, 3: Potential.HO,
                 4: Potential.HO, 5: Potential.FREE_IMAG},
    Theory.FTT: {1: Potential.IHO, 2: Potential.IHO, 3: Potential.FREE_IMAG,
                 4: Potential.HO, 5: Potential.HO},
}


@dataclass(frozen=True)
class ModelParams:
    """Validated model parameters with cached polar data.

    Construct through :func:`validate`; the cached fields are trusted
    downstream without re-checking.
    """

    m: complex
    omega: complex
    hbar: float
    eps: float
    eps_prime: float
    r_m: float
    theta_m: float
    r_omega: float
    theta_omega: float
    momega: complex
    r: float
    theta: float
    momega_sq: complex

    @property
    def normalizable(self) -> bool:
        """True when |arg(m*omega)| < pi/2, i.e. Re(m*omega) > 0."""
        return abs(self.theta) < math.pi / 2 - ANGLE_TOL


@dataclass(frozen=True)
class DerivedScales:
    """Scalar scales derived from the parameters.

    ``m_eff`` is the complex mass appearing once position and momentum are
    rotated to their metric-Hermitian versions; ``m_herm``/``omega_herm``
    and ``m_anti``/``omega_anti`` parametrize the Hermitian and
    anti-Hermitian parts of the Hamiltonian.  ``m_anti`` is ``None`` when
    sin(theta_omega) = 0 (the anti part vanishes identically there).
    ``momega_1``/``momega_2`` are the regulator-shifted m*omega products of
    the two finite-width ground states.
    """

    m_eff: complex
    m_herm: float
    omega_herm: float
    m_anti: float | None
    omega_anti: float
    momega_1: complex
    momega_2: complex
    normalizable: bool


@dataclass(frozen=True)
class PhaseClassification:
    theory: Theory
    region: int
    potential: Potential
    excluded_corner: bool
    normalizable: bool
    frame_factor: complex


def validate(m: complex, omega: complex, hbar: float = 1.0,
             eps: float = 1e-3, eps_prime: float = 1e-3,
             tol: float = ANGLE_TOL) -> ModelParams:
    """Check the convergence conditions and cache polar data.

    Raises
    ------
    KineticDivergenceError
        If Im(m) < 0 (equivalently arg(m) outside [0, pi]).
    PotentialDivergenceError
        If theta_m + 2*theta_omega falls outside [-pi, 0].
    RegulatorError
        If eps <= 0, eps' <= 0 or eps*eps' >= 1.
    """
    for name, value in (("m", m), ("omega", omega)):
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValueError(f"{name} must be finite, got {value!r}")
    for name, value in (("hbar", hbar), ("eps", eps), ("eps_prime", eps_prime)):
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar!r}")
    if eps <= 0 or eps_prime <= 0 or eps * eps_prime >= 1:
        raise RegulatorError(
            f"need eps > 0, eps' > 0 and eps*eps' < 1, got ({eps!r}, {eps_prime!r})")

    r_m, theta_m = cmath.polar(m)
    r_omega, theta_omega = cmath.polar(omega)
    if r_m == 0 or r_omega == 0:
        raise ValueError("m and omega must be nonzero")
    if theta_m < -tol or theta_m > math.pi + tol:
        raise KineticDivergenceError(
            f"Im(m) < 0 makes the kinetic term diverge (arg m = {theta_m:.6g})")
    theta_m = min(max(theta_m, 0.0), math.pi)

    # omega on the negative real axis has principal argument +pi, but the
    # admissible range lies in [-pi, 0]; fold it onto the lower edge when
    # that lands inside the parallelogram.
    if theta_omega > tol and theta_m + 2 * (theta_omega - 2 * math.pi) >= -math.pi - tol:
        theta_omega -= 2 * math.pi
    s = theta_m + 2 * theta_omega
    if s < -math.pi - tol or s > tol:
        raise PotentialDivergenceError(
            f"Im(m*omega^2) > 0 makes the potential diverge "
            f"(arg m + 2 arg omega = {s:.6g})")

    m, omega = complex(m), complex(omega)
    return ModelParams(
        m=m, omega=omega, hbar=float(hbar),
        eps=float(eps), eps_prime=float(eps_prime),
        r_m=r_m, theta_m=theta_m, r_omega=r_omega, theta_omega=theta_omega,
        momega=m * omega, r=r_m * r_omega, theta=theta_m + theta_omega,
        momega_sq=m * omega * omega,
    )


def classify_phase(theta_m: float, theta_omega: float,
                   tol: float = ANGLE_TOL) -> PhaseClassification:
    """Classify a point of the (theta_m, theta_omega) plane.

    The theory label follows the sign of Re(m): UTT for theta_m in
    [0, pi/2), ITT on the line theta_m = pi/2, FTT for (pi/2, pi].  The
    region index 1..5 follows s = theta_m + 2*theta_omega through
    {0}, (-pi/2, 0), {-pi/2}, (-pi, -pi/2), {-pi}; the boundary lines own
    their labels.  Raises OutOfDomainError outside the parallelogram.
    """
    if theta_m < -tol or theta_m > math.pi + tol:
        raise OutOfDomainError(f"theta_m = {theta_m:.6g} outside [0, pi]")
    s = theta_m + 2 * theta_omega
    if s < -math.pi - 2 * tol or s > 2 * tol:
        raise OutOfDomainError(
            f"theta_m + 2*theta_omega = {s:.6g} outside [-pi, 0]")

    if abs(s) <= tol:
        region = 1
    elif abs(s + math.pi / 2) <= tol:
        region = 3
    elif abs(s + math.pi) <= tol:
        region = 5
    elif s > -math.pi / 2:
        region = 2
    else:
        region = 4

    if abs(theta_m - math.pi / 2) <= tol:
        theory = Theory.ITT
        frame_factor = -1j
    elif theta_m < math.pi / 2:
        theory = Theory.UTT
        frame_factor = 1 + 0j
    else:
        theory = Theory.FTT
        frame_factor = -1 + 0j

    theta = theta_m + theta_omega
    normalizable = abs(theta) < math.pi / 2 - tol
    # |theta| reaches pi/2 only at the two corners (0, -pi/2) and (pi, -pi/2).
    excluded_corner = not normalizable

    return PhaseClassification(
        theory=theory, region=region,
        potential=POTENTIAL_TABLE[theory][region],
        excluded_corner=excluded_corner, normalizable=normalizable,
        frame_factor=frame_factor,
    )


def new_frame(params: ModelParams, tol: float = ANGLE_TOL
              ) -> tuple[complex, complex, complex]:
    """Unit factor and transformed (mass, frequency) giving Re(m_new) > 0.

    Returns ``(a, m_new, omega_new)`` with ``m_new = a*m`` and
    ``omega_new = omega/a``; time transforms as ``t -> a*t`` so that
    ``omega*t = omega_new*(a*t)`` holds identically.
    """
    if abs(params.theta_m - math.pi / 2) <= tol:
        a = -1j
    elif params.theta_m < math.pi / 2:
        a = 1 + 0j
    else:
        a = -1 + 0j
    return a, a * params.m, params.omega / a


def derived(params: ModelParams, tol: float = ANGLE_TOL) -> DerivedScales:
    """Compute the derived scalar scales for validated parameters.

    Raises DegenerateDivisionError when cos(theta_omega) = 0 (the two
    excluded corners), where the Hermitian-part mass is not defined.
    """
    cos_w = math.cos(params.theta_omega)
    sin_w = math.sin(params.theta_omega)
    if abs(cos_w) <= tol:
        raise DegenerateDivisionError(
            "cos(arg omega) = 0: Hermitian-part scales undefined at the corners")
    m_anti = None if abs(sin_w) <= tol else -params.r_m / sin_w
    mw = params.momega
    eps, eps_p = params.eps, params.eps_prime
    return DerivedScales(
        m_eff=params.r_m * cmath.exp(-1j * params.theta_omega),
        m_herm=params.r_m / cos_w,
        omega_herm=params.r_omega * cos_w,
        m_anti=m_anti,
        omega_anti=-params.r_omega * sin_w,
        momega_1=(mw - eps_p) / (1 - mw * eps),
        momega_2=(mw + eps_p) / (1 + mw * eps),
        normalizable=params.normalizable,
    )


def regulated_momega(momega: complex, eps: float, eps_prime: float
                     ) -> tuple[complex, complex]:
    """The two regulator-shifted m*omega products (basis 1, basis 2).

    Defined for any eps, eps_prime >= 0; both reduce to ``momega`` in the
    regulator-free limit.
    """
    return ((momega - eps_prime) / (1 - momega * eps),
            (momega + eps_prime) / (1 + momega * eps))


def eigenvalue(params: ModelParams, n: int) -> complex:
    """Level value hbar*omega*(n + 1/2)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return params.hbar * params.omega * (n + 0.5)


def phase_grid(resolution: int
               ) -> list[tuple[float, float, PhaseClassification]]:
    """Uniform grid over the closed parallelogram with classifications.

    Rows are ordered by theta_m, then theta_omega ascending inside each row.
    ``resolution = 2`` yields exactly the four corners.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    out = []
    for i in range(resolution):
        theta_m = math.pi * i / (resolution - 1)
        hi = -theta_m / 2
        lo = hi - math.pi / 2
        for j in range(resolution):
            theta_omega = lo + (hi - lo) * j / (resolution - 1)
            out.append((theta_m, theta_omega, classify_phase(theta_m, theta_omega)))
    return out
