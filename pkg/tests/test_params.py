import cmath
import math

import numpy as np
import pytest

from cxho.errors import (
    DegenerateDivisionError,
    KineticDivergenceError,
    OutOfDomainError,
    PotentialDivergenceError,
    RegulatorError,
)
from cxho.params import (
    Potential,
    Theory,
    classify_phase,
    derived,
    eigenvalue,
    new_frame,
    phase_grid,
    regulated_momega,
    validate,
)

PI = math.pi


def angles_to_params(theta_m, theta_omega, r_m=1.0, r_omega=1.0, **kw):
    return validate(r_m * cmath.exp(1j * theta_m),
                    r_omega * cmath.exp(1j * theta_omega), **kw)


class TestValidate:
    def test_real_positive_parameters(self):
        p = validate(1, 1, hbar=1.0, eps=1e-3, eps_prime=1e-3)
        assert p.theta_m == 0.0
        assert p.theta_omega == 0.0
        assert p.theta == 0.0
        assert p.normalizable

    def test_positive_momega_sq_angle_rejected(self):
        with pytest.raises(PotentialDivergenceError):
            validate(1, cmath.exp(1j * PI / 4))

    def test_negative_im_mass_rejected(self):
        with pytest.raises(KineticDivergenceError):
            validate(cmath.exp(-1j * PI / 6), 1)

    def test_regulator_errors(self):
        for eps, eps_p in [(0.0, 1e-3), (1e-3, 0.0), (-1e-3, 1e-3), (2.0, 0.5)]:
            with pytest.raises(RegulatorError):
                validate(1, 1, eps=eps, eps_prime=eps_p)

    def test_nonfinite_and_zero_inputs(self):
        with pytest.raises(ValueError):
            validate(complex("nan"), 1)
        with pytest.raises(ValueError):
            validate(0, 1)
        with pytest.raises(ValueError):
            validate(1, 0)
        with pytest.raises(ValueError):
            validate(1, 1, hbar=-1.0)

    def test_negative_real_axis_omega_folds_to_lower_edge(self):
        # omega = -1 has principal argument +pi; with m = -1 the point is the
        # (pi, -pi) corner of the parallelogram
        p = validate(-1, -1)
        assert p.theta_m == pytest.approx(PI)
        assert p.theta_omega == pytest.approx(-PI)
        assert p.normalizable

    def test_negative_real_axis_omega_invalid_for_positive_mass(self):
        with pytest.raises(PotentialDivergenceError):
            validate(1, -1)

    def test_corner_not_normalizable(self):
        p = validate(1, -1j)
        assert not p.normalizable

    def test_cached_products(self):
        p = validate(2j, 0.5 * cmath.exp(-1j * PI / 3))
        assert p.momega == pytest.approx(2j * 0.5 * cmath.exp(-1j * PI / 3))
        assert p.r == pytest.approx(1.0)
        assert p.theta == pytest.approx(PI / 2 - PI / 3)
        assert p.momega_sq == pytest.approx(p.momega * p.omega)


class TestClassifyPhase:
    def test_origin_is_usual_oscillator(self):
        c = classify_phase(0.0, 0.0)
        assert (c.theory, c.region, c.potential) == (Theory.UTT, 1, Potential.HO)
        assert c.normalizable and not c.excluded_corner

    def test_imaginary_mass_line_region3(self):
        c = classify_phase(PI / 2, -PI / 2)
        assert (c.theory, c.region, c.potential) == (Theory.ITT, 3, Potential.HO)

    def test_excluded_corners(self):
        for theta_m in (0.0, PI):
            c = classify_phase(theta_m, -PI / 2)
            assert c.excluded_corner
            assert not c.normalizable

    def test_out_of_domain(self):
        with pytest.raises(OutOfDomainError):
            classify_phase(-0.1, 0.0)
        with pytest.raises(OutOfDomainError):
            classify_phase(0.5, 0.1)
        with pytest.raises(OutOfDomainError):
            classify_phase(0.5, -2.0)

    def test_region_boundaries_own_their_labels(self):
        # s = theta_m + 2*theta_omega exactly on the three boundary lines
        assert classify_phase(0.3, -0.15).region == 1
        assert classify_phase(0.3, -0.15 - PI / 4).region == 3
        assert classify_phase(0.3, -0.15 - PI / 2).region == 5

    def test_partition_on_random_interior_points(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            theta_m = rng.uniform(0, PI)
            theta_omega = rng.uniform(-theta_m / 2 - PI / 2, -theta_m / 2)
            c = classify_phase(theta_m, theta_omega)
            s = theta_m + 2 * theta_omega
            # independent re-derivation of the region index
            if abs(s) <= 1e-9:
                expected = 1
            elif abs(s + PI / 2) <= 1e-9:
                expected = 3
            elif abs(s + PI) <= 1e-9:
                expected = 5
            elif s > -PI / 2:
                expected = 2
            else:
                expected = 4
            assert c.region == expected
            assert c.theory == (Theory.ITT if abs(theta_m - PI / 2) <= 1e-9
                                else Theory.UTT if theta_m < PI / 2 else Theory.FTT)

    def test_frame_factor_values(self):
        assert classify_phase(0.3, -0.2).frame_factor == 1
        assert classify_phase(PI / 2, -1.0).frame_factor == -1j
        assert classify_phase(2.0, -1.2).frame_factor == -1


class TestNewFrame:
    def test_imaginary_mass(self):
        p = validate(2j, cmath.exp(-1j * 2.0))
        a, m_new, omega_new = new_frame(p)
        assert a == -1j
        assert m_new == pytest.approx(2.0)
        assert omega_new == pytest.approx(1j * p.omega)

    def test_negative_mass(self):
        p = validate(-1 + 0.01j, cmath.exp(-1.8j))
        a, m_new, omega_new = new_frame(p)
        assert a == -1
        assert m_new == pytest.approx(1 - 0.01j)

    def test_identity_frame(self):
        p = validate(1, 1)
        a, m_new, omega_new = new_frame(p)
        assert a == 1 and m_new == p.m and omega_new == p.omega

    def test_frequency_time_product_preserved_exactly(self):
        rng = np.random.default_rng(3)
        for theta_m in (0.2, PI / 2, 2.9):
            p = angles_to_params(theta_m, -theta_m / 2 - 0.3)
            a, _, omega_new = new_frame(p)
            assert abs(a) == pytest.approx(1.0, abs=1e-15)
            for _ in range(10):
                t = rng.uniform(-5, 5)
                assert omega_new * (a * t) == p.omega * t

    def test_new_mass_real_part_positive(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            theta_m = rng.uniform(0, PI)
            p = angles_to_params(theta_m, -theta_m / 2 - 0.2)
            _, m_new, _ = new_frame(p)
            assert m_new.real > 0 or abs(m_new.real) < 1e-12


class TestDerived:
    def test_hermitian_part_mass(self):
        p = angles_to_params(PI / 3, -PI / 6, r_m=2.0)
        d = derived(p)
        assert d.m_herm == pytest.approx(2 / math.cos(PI / 6))
        assert d.m_herm == pytest.approx(4 / math.sqrt(3), rel=1e-12)

    def test_real_frequency_limit(self):
        # theta_omega = 0 forces theta_m = 0 inside the parallelogram
        p = validate(1.5, 2.0, eps=1e-4, eps_prime=1e-4)
        d = derived(p)
        assert d.m_herm == pytest.approx(1.5)
        assert d.omega_herm == pytest.approx(2.0)
        assert d.m_anti is None

    def test_regulator_free_products(self):
        one, two = regulated_momega(1 + 0j, 0.0, 0.0)
        assert one == 1 and two == 1

    def test_corner_degenerate(self):
        p = validate(1, -1j)
        with pytest.raises(DegenerateDivisionError):
            derived(p)

    def test_consistency_identities(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            theta_m = rng.uniform(0, PI)
            lo, hi = -theta_m / 2 - PI / 2, -theta_m / 2
            theta_omega = rng.uniform(lo + 0.05, hi - 0.05)
            p = angles_to_params(theta_m, theta_omega,
                                 r_m=rng.uniform(0.5, 3), r_omega=rng.uniform(0.5, 3))
            d = derived(p)
            if d.m_anti is not None:
                assert d.m_herm == pytest.approx(
                    -math.tan(p.theta_omega) * d.m_anti, rel=1e-12)
                assert (d.m_herm * d.omega_herm) ** 2 == pytest.approx(
                    (d.m_anti * d.omega_anti) ** 2, rel=1e-12)
            assert d.m_herm * d.omega_herm == pytest.approx(p.r_m * p.r_omega,
                                                            rel=1e-12)
            assert d.m_eff == pytest.approx(p.r_m * cmath.exp(-1j * p.theta_omega))


class TestEigenvalue:
    def test_direct_formula(self):
        p = validate(1, 1 - 0.1j)
        assert eigenvalue(p, 2) == pytest.approx(2.5 - 0.25j)
        assert eigenvalue(p, 0) == pytest.approx(p.hbar * p.omega / 2)

    def test_real_frequency_levels_real(self):
        p = validate(1, 1)
        for n in range(6):
            assert eigenvalue(p, n).imag == 0.0

    def test_negative_level_rejected(self):
        with pytest.raises(ValueError):
            eigenvalue(validate(1, 1), -1)

    def test_imaginary_part_ordering(self):
        # Im(lambda_n) strictly decreasing iff Im(omega) < 0, constant iff real
        p = validate(1, cmath.exp(-0.3j))
        ims = [eigenvalue(p, n).imag for n in range(8)]
        assert all(a > b for a, b in zip(ims, ims[1:]))
        assert max(ims) == ims[0]
        p_real = validate(1, 1)
        ims_real = [eigenvalue(p_real, n).imag for n in range(8)]
        assert all(v == 0 for v in ims_real)


# Hand enumeration of the 3x3 grid: regions follow s = theta_m+2*theta_omega
# through {-pi, -pi/2, 0} in each row, theory follows theta_m, potential from
# the per-theory interpretation tables.
GRID3_EXPECTED = [
    (0.0, -PI / 2, Theory.UTT, 5, Potential.IHO, True),
    (0.0, -PI / 4, Theory.UTT, 3, Potential.FREE_IMAG, False),
    (0.0, 0.0, Theory.UTT, 1, Potential.HO, False),
    (PI / 2, -3 * PI / 4, Theory.ITT, 5, Potential.FREE_IMAG, False),
    (PI / 2, -PI / 2, Theory.ITT, 3, Potential.HO, False),
    (PI / 2, -PI / 4, Theory.ITT, 1, Potential.FREE_IMAG, False),
    (PI, -PI, Theory.FTT, 5, Potential.HO, False),
    (PI, -3 * PI / 4, Theory.FTT, 3, Potential.FREE_IMAG, False),
    (PI, -PI / 2, Theory.FTT, 1, Potential.IHO, True),
]


class TestPhaseGrid:
    def test_resolution_two_gives_corners(self):
        grid = phase_grid(2)
        assert len(grid) == 4
        excluded = [(tm, tw) for tm, tw, c in grid if c.excluded_corner]
        assert excluded == [(0.0, -PI / 2), (PI, -PI / 2)]

    def test_resolution_three_matches_hand_enumeration(self):
        grid = phase_grid(3)
        assert len(grid) == 9
        for (tm, tw, c), (etm, etw, etheory, eregion, epot, eexcl) in zip(
                grid, GRID3_EXPECTED):
            assert tm == pytest.approx(etm, abs=1e-15)
            assert tw == pytest.approx(etw, abs=1e-15)
            assert c.theory == etheory
            assert c.region == eregion
            assert c.potential == epot
            assert c.excluded_corner == eexcl

    def test_every_grid_point_classifies(self):
        for resolution in (2, 5, 17):
            grid = phase_grid(resolution)
            assert len(grid) == resolution * resolution

    def test_bad_resolution(self):
        with pytest.raises(ValueError):
            phase_grid(1)
