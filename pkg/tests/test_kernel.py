import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasestretch.core import DegenerateParameterError, PstParams, make_frequency_grid
from phasestretch.kernel import build_localization_kernel, build_warped_kernel, phase_profile

# frozen from a 50-digit evaluation of the profile formula
PROFILE_AT_HALF_RMAX = 0.19869028857786599

REFERENCE = dict(warp=12.15, strength=0.48)


class TestPhaseProfile:
    def test_zero_radius_gives_zero(self):
        for warp in (0.5, 3.0, 12.15):
            assert phase_profile(0.0, warp, 0.7, 1.0) == 0.0

    def test_rmax_gives_strength_exactly(self):
        assert phase_profile(0.70711, 12.15, 0.48, 0.70711) == 0.48
        assert phase_profile(0.3, 2.0, 1.7, 0.3) == 1.7

    def test_pinned_value(self):
        value = phase_profile(0.35355, 12.15, 0.48, 0.70711)
        assert abs(value - PROFILE_AT_HALF_RMAX) < 1e-12

    def test_degenerate_parameters(self):
        with pytest.raises(DegenerateParameterError):
            phase_profile(0.1, 0.0, 0.5, 0.5)
        with pytest.raises(DegenerateParameterError):
            phase_profile(0.0, 1.0, 0.5, 0.0)

    def test_domain_violations(self):
        with pytest.raises(ValueError):
            phase_profile(-0.1, 1.0, 0.5, 0.5)
        with pytest.raises(ValueError):
            phase_profile(0.6, 1.0, 0.5, 0.5)
        with pytest.raises(ValueError):
            phase_profile(0.1, -1.0, 0.5, 0.5)
        with pytest.raises(ValueError):
            phase_profile(0.1, 1.0, -0.5, 0.5)

    @settings(max_examples=100, deadline=None)
    @given(
        warp=st.floats(1e-3, 50.0),
        strength=st.floats(0.0, 10.0),
        r_max=st.floats(1e-3, 1.0),
        t1=st.floats(0.0, 1.0),
        t2=st.floats(0.0, 1.0),
    )
    def test_monotone_nondecreasing(self, warp, strength, r_max, t1, t2):
        lo, hi = sorted((t1 * r_max, t2 * r_max))
        hi = min(hi, r_max)
        assert phase_profile(lo, warp, strength, r_max) <= phase_profile(hi, warp, strength, r_max)

    @settings(max_examples=100, deadline=None)
    @given(
        warp=st.floats(1e-3, 50.0),
        strength=st.floats(1e-6, 10.0),
        t=st.floats(0.0, 1.0),
    )
    def test_linear_in_strength(self, warp, strength, t):
        r_max = 0.70711
        r = t * r_max
        assert phase_profile(r, warp, 2 * strength, r_max) == 2 * phase_profile(
            r, warp, strength, r_max
        )

    def test_small_radius_expansion(self):
        warp, strength, r_max = REFERENCE["warp"], REFERENCE["strength"], np.sqrt(0.5)
        x_max = warp * r_max
        denom = x_max * np.arctan(x_max) - 0.5 * np.log1p(x_max**2)
        r = 1e-4 * r_max
        lhs = phase_profile(r, warp, strength, r_max) * denom / strength
        rhs = warp**2 * r**2 / 2 - warp**4 * r**4 / 12
        assert abs(lhs - rhs) / abs(rhs) < 1e-6


class TestWarpedKernel:
    def test_zero_strength_is_identity(self):
        grid = make_frequency_grid(16, 16)
        pk = build_warped_kernel(grid, PstParams(strength=0.0, warp=12.15))
        assert np.array_equal(pk.phi, np.zeros((16, 16)))
        assert np.array_equal(pk.kernel, np.ones((16, 16), complex))

    def test_unit_modulus_everywhere(self):
        grid = make_frequency_grid(33, 47)
        pk = build_warped_kernel(grid, PstParams(**REFERENCE))
        deviating = np.abs(np.abs(pk.kernel) - 1.0) > 1e-12
        assert int(deviating.sum()) == 0

    def test_dc_phase_zero_and_peak_at_rmax(self):
        grid = make_frequency_grid(32, 24)
        pk = build_warped_kernel(grid, PstParams(**REFERENCE))
        assert pk.phi[0, 0] == 0.0
        at_rmax = pk.phi[grid.r == grid.r_max]
        assert np.all(at_rmax == REFERENCE["strength"])
        assert np.all(pk.phi >= 0.0)
        assert np.all(pk.phi <= REFERENCE["strength"])

    def test_even_symmetry_exact(self):
        for shape in [(16, 16), (15, 9), (16, 9), (1, 8)]:
            grid = make_frequency_grid(*shape)
            pk = build_warped_kernel(grid, PstParams(**REFERENCE))
            rows, cols = shape
            mirrored = pk.phi[np.ix_((-np.arange(rows)) % rows, (-np.arange(cols)) % cols)]
            assert np.array_equal(pk.phi, mirrored)

    def test_matches_per_bin_scalar_profile(self):
        grid = make_frequency_grid(64, 64)
        pk = build_warped_kernel(grid, PstParams(**REFERENCE))
        for j in range(64):
            for k in range(64):
                expected = phase_profile(
                    grid.r[j, k], REFERENCE["warp"], REFERENCE["strength"], grid.r_max
                )
                assert pk.phi[j, k] == expected

    def test_degenerate_warp_propagates(self):
        grid = make_frequency_grid(8, 8)
        with pytest.raises(DegenerateParameterError):
            build_warped_kernel(grid, PstParams(strength=0.5, warp=0.0))


class TestLocalizationKernel:
    def test_identity_mode(self):
        grid = make_frequency_grid(8, 8)
        lk = build_localization_kernel(grid, None)
        assert lk.sigma is None
        assert np.array_equal(lk.weights, np.ones((8, 8)))

    def test_large_sigma_limit(self):
        grid = make_frequency_grid(8, 8)
        lk = build_localization_kernel(grid, 1e9)
        assert np.all(np.abs(lk.weights - 1.0) < 1e-12)

    def test_gaussian_on_4x4(self):
        grid = make_frequency_grid(4, 4)
        lk = build_localization_kernel(grid, 0.1)
        assert lk.weights[0, 0] == 1.0
        at_rmax = lk.weights[grid.r == grid.r_max][0]
        assert at_rmax == pytest.approx(np.exp(-grid.r_max**2 / 0.02), rel=1e-12)
        assert at_rmax == pytest.approx(1.3887943864964021e-11, rel=1e-10)

    def test_nonincreasing_in_radius(self):
        grid = make_frequency_grid(12, 10)
        lk = build_localization_kernel(grid, 0.2)
        order = np.argsort(grid.r.ravel())
        assert np.all(np.diff(lk.weights.ravel()[order]) <= 1e-15)
        assert np.all((lk.weights >= 0.0) & (lk.weights <= 1.0))

    def test_nonpositive_sigma_rejected(self):
        grid = make_frequency_grid(4, 4)
        with pytest.raises(ValueError):
            build_localization_kernel(grid, 0.0)
        with pytest.raises(ValueError):
            build_localization_kernel(grid, -0.5)
