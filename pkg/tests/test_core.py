import numpy as np
import pytest
from conftest import dft2_direct, idft2_direct, rel_linf
from hypothesis import given, settings
from hypothesis import strategies as st

from phasestretch.core import (
    PstParams,
    as_image,
    forward_spectrum,
    inverse_field,
    make_frequency_grid,
)


class TestFrequencyGrid:
    def test_standard_dft_ordering_length_4(self):
        grid = make_frequency_grid(4, 1)
        assert np.array_equal(grid.u[:, 0], [0.0, 0.25, -0.5, -0.25])
        assert np.array_equal(grid.v, np.zeros((4, 1)))

    def test_corner_radius_4x4(self):
        grid = make_frequency_grid(4, 4)
        assert abs(grid.r_max - np.sqrt(0.5)) < 1e-15

    @pytest.mark.parametrize("shape", [(1, 1), (2, 3), (8, 8), (5, 1), (1, 7)])
    def test_dc_bin_radius_is_zero(self, shape):
        grid = make_frequency_grid(*shape)
        assert grid.r[0, 0] == 0.0

    def test_r_max_positive_beyond_1x1(self):
        assert make_frequency_grid(1, 1).r_max == 0.0
        assert make_frequency_grid(2, 1).r_max > 0.0

    @pytest.mark.parametrize("rows,cols", [(0, 4), (4, 0), (0, 0), (-1, 3)])
    def test_zero_sized_dimension_rejected(self, rows, cols):
        with pytest.raises(ValueError):
            make_frequency_grid(rows, cols)

    @settings(max_examples=60, deadline=None)
    @given(rows=st.integers(1, 17), cols=st.integers(1, 17))
    def test_conjugate_symmetric_layout(self, rows, cols):
        grid = make_frequency_grid(rows, cols)
        for j in range(rows):
            jm = (-j) % rows
            if rows % 2 == 0 and j == rows // 2:
                assert jm == j  # Nyquist bin is its own mirror
            else:
                assert np.array_equal(grid.u[j], -grid.u[jm])
        for k in range(cols):
            km = (-k) % cols
            if cols % 2 == 0 and k == cols // 2:
                assert km == k
            else:
                assert np.array_equal(grid.v[:, k], -grid.v[:, km])
        # the radius is symmetric bin for bin with no exceptions
        mirrored = grid.r[np.ix_((-np.arange(rows)) % rows, (-np.arange(cols)) % cols)]
        assert np.array_equal(grid.r, mirrored)


class TestSpectrum:
    def test_constant_image_has_only_dc(self):
        img = np.full((6, 5), 3.25)
        spec = forward_spectrum(img)
        assert spec[0, 0] == pytest.approx(3.25 * 30, rel=1e-12)
        off_dc = spec.copy()
        off_dc[0, 0] = 0.0
        assert np.max(np.abs(off_dc)) < 1e-9 * 3.25 * 30

    def test_unit_impulse_at_origin_is_flat(self):
        img = np.zeros((8, 8))
        img[0, 0] = 1.0
        assert np.allclose(forward_spectrum(img), 1.0, atol=1e-12)

    def test_round_trip_and_direct_oracle_8x8(self):
        rng = np.random.default_rng(42)
        img = rng.uniform(-1, 1, (8, 8))
        spec = forward_spectrum(img)
        assert rel_linf(spec, dft2_direct(img)) < 1e-9
        back = inverse_field(spec)
        assert rel_linf(back.real, img) < 1e-10
        assert np.max(np.abs(back.imag)) < 1e-10

    def test_inverse_of_zero_spectrum(self):
        assert np.array_equal(inverse_field(np.zeros((4, 6), complex)), np.zeros((4, 6)))

    def test_inverse_of_pure_dc(self):
        spec = np.zeros((4, 6), complex)
        spec[0, 0] = 24.0
        assert np.allclose(inverse_field(spec), 1.0, atol=1e-12)

    def test_forward_of_inverse_on_random_spectrum(self):
        rng = np.random.default_rng(7)
        spec = rng.normal(size=(9, 5)) + 1j * rng.normal(size=(9, 5))
        assert rel_linf(forward_spectrum(inverse_field(spec)), spec) < 1e-10
        assert rel_linf(inverse_field(spec), idft2_direct(spec)) < 1e-9

    def test_non_finite_pixels_rejected(self):
        img = np.ones((4, 4))
        img[1, 2] = np.nan
        with pytest.raises(ValueError):
            forward_spectrum(img)
        img[1, 2] = np.inf
        with pytest.raises(ValueError):
            forward_spectrum(img)

    @settings(max_examples=40, deadline=None)
    @given(rows=st.integers(1, 16), cols=st.integers(1, 16), seed=st.integers(0, 2**31))
    def test_round_trip_property(self, rows, cols, seed):
        img = np.random.default_rng(seed).uniform(-5, 5, (rows, cols))
        assert rel_linf(inverse_field(forward_spectrum(img)).real, img) < 1e-10

    @settings(max_examples=40, deadline=None)
    @given(rows=st.integers(1, 16), cols=st.integers(1, 16), seed=st.integers(0, 2**31))
    def test_parseval(self, rows, cols, seed):
        img = np.random.default_rng(seed).uniform(-5, 5, (rows, cols))
        spec = forward_spectrum(img)
        lhs = np.sum(np.abs(img) ** 2)
        rhs = np.sum(np.abs(spec) ** 2) / (rows * cols)
        assert abs(lhs - rhs) <= 1e-9 * max(lhs, 1e-300)


class TestAsImage:
    def test_trace_becomes_column(self):
        arr = as_image([1, 2, 3])
        assert arr.shape == (3, 1)

    def test_integers_convert_without_rescaling(self):
        arr = as_image(np.arange(6, dtype=np.uint8).reshape(2, 3))
        assert arr.dtype == np.float64
        assert np.array_equal(arr, np.arange(6.0).reshape(2, 3))

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            as_image(np.zeros((2, 2, 2)))
        with pytest.raises(ValueError):
            as_image(np.zeros((0, 3)))
        with pytest.raises(ValueError):
            as_image([np.nan, 1.0])


class TestPstParams:
    def test_defaults_are_valid(self):
        params = PstParams(strength=0.48, warp=12.15)
        assert params.taylor_order == 4
        assert params.localization_sigma is None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"strength": -0.1, "warp": 1.0},
            {"strength": 0.1, "warp": -1.0},
            {"strength": 0.1, "warp": 1.0, "localization_sigma": 0.0},
            {"strength": 0.1, "warp": 1.0, "taylor_order": 3},
            {"strength": 0.1, "warp": 1.0, "taylor_order": 0},
            {"strength": 0.1, "warp": 1.0, "threshold_min": 0.1},
            {"strength": 0.1, "warp": 1.0, "threshold_max": -0.1},
            {"strength": float("nan"), "warp": 1.0},
        ],
    )
    def test_invalid_params_rejected(self, kwargs):
        with pytest.raises(ValueError):
            PstParams(**kwargs)
