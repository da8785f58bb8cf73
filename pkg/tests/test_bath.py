import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate

from conftest import truncated_g0
from dynamics import (
    Dispersion, DomainError, InfraredDivergenceError, KernelKind, KernelSamples, QuadratureConfig,
    QuadratureError, SpectralDensity, TimeGrid, analytic_full_line_kernel, bose_occupation, continued_kernel,
    eval_spectral_density, golden_rule_rate, kernel_full_thermal, kernel_restricted_thermal,
    kernel_zero_t, partition_restricted, restricted_state_trace
)
from dynamics.bath import THERMAL_CUTOFF


class TestSpectralDensity:
    def test_peak_value(self, lorentz):
        assert eval_spectral_density(lorentz, 5.0) == pytest.approx(4.0)

    def test_scales_with_coupling_squared(self):
        spec = SpectralDensity(g=2.0, gamma=1.0, center=5.0)
        assert eval_spectral_density(spec, 5.0) == pytest.approx(16.0)

    def test_zero_outside_window(self):
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_min=1.0, omega_max=10.0)
        assert eval_spectral_density(spec, 12.0) == 0.0
        assert eval_spectral_density(spec, 0.5) == 0.0
        assert eval_spectral_density(spec, 10.0) > 0.0

    def test_vectorised_and_non_negative(self, lorentz):
        values = eval_spectral_density(lorentz, np.linspace(0, 50, 101))
        assert values.shape == (101,)
        assert np.all(values >= 0)

    def test_negative_frequency_rejected(self, lorentz):
        with pytest.raises(DomainError):
            eval_spectral_density(lorentz, -0.1)

    @pytest.mark.parametrize('kwargs', [
        dict(g=-1.0, gamma=1.0, center=5.0),
        dict(g=1.0, gamma=0.0, center=5.0),
        dict(g=1.0, gamma=1.0, center=0.0),
        dict(g=1.0, gamma=1.0, center=5.0, omega_min=-1.0),
        dict(g=1.0, gamma=1.0, center=5.0, omega_min=3.0, omega_max=3.0),
    ])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(DomainError):
            SpectralDensity(**kwargs)

    def test_golden_rule_rate_on_resonance(self):
        spec = SpectralDensity(g=0.1, gamma=1.0, center=5.0)
        assert golden_rule_rate(spec, 5.0) == pytest.approx(4 * 0.1 ** 2 / 1.0)


class TestZeroTemperatureKernel:
    def test_zero_coupling_gives_zero_kernel(self, coarse_grid):
        spec = SpectralDensity(g=0.0, gamma=1.0, center=5.0)
        kernel = kernel_zero_t(spec, coarse_grid)
        assert np.all(kernel.values == 0)
        assert kernel.kind is KernelKind.ZERO_T

    def test_value_at_zero_matches_closed_form(self, lorentz, quad, coarse_grid):
        kernel = kernel_zero_t(lorentz, coarse_grid, quad)
        lo, hi = lorentz.window(quad)
        exact = truncated_g0(lorentz, lo, hi)
        assert kernel.values[0].real == pytest.approx(exact, abs=1e-8)
        assert kernel.values[0].imag == pytest.approx(0.0, abs=1e-12)
        # untruncated half-line value g^2 (1/2 + arctan(2 center / gamma) / pi)
        assert kernel.values[0].real == pytest.approx(0.5 + math.atan(10.0) / math.pi, abs=2 * quad.tail_tol)
        assert kernel.values[0].real == pytest.approx(0.9682, abs=2e-3)

    def test_modulus_bounded_by_value_at_zero(self, lorentz, quad):
        kernel = kernel_zero_t(lorentz, TimeGrid(0.05, 200), quad)
        assert np.all(np.abs(kernel.values) <= kernel.values[0].real + quad.abs_tol * kernel.values[0].real)

    def test_full_line_mode_matches_exponential(self, lorentz, quad, coarse_grid):
        kernel = kernel_zero_t(lorentz, coarse_grid, quad, full_line=True)
        exact = analytic_full_line_kernel(lorentz, coarse_grid)
        assert len(kernel) == 10
        assert kernel.full_line
        assert np.max(np.abs(kernel.values - exact.values)) <= 2.5 * quad.tail_tol * lorentz.g ** 2

    def test_refinement_stays_within_estimate(self, lorentz, coarse_grid):
        coarse = kernel_zero_t(lorentz, coarse_grid, QuadratureConfig())
        fine = kernel_zero_t(lorentz, coarse_grid, QuadratureConfig(points_per_period=4))
        bound = max(coarse.error_estimate, 1e-9 * coarse.values[0].real)
        assert np.max(np.abs(coarse.values - fine.values)) <= 10 * bound
        assert coarse.panels > 0

    def test_unreachable_tolerance_raises(self, lorentz):
        quad = QuadratureConfig(nodes_per_panel=1, abs_tol=1e-15, max_refinements=0)
        with pytest.raises(QuadratureError) as info:
            kernel_zero_t(lorentz, TimeGrid(0.1, 20), quad)
        assert info.value.estimate > 0
        assert info.value.panels >= 1

    def test_truncated_window_warns(self, caplog, coarse_grid):
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_max=8.0)
        with caplog.at_level('WARNING', logger='dynamics.bath'):
            kernel_zero_t(spec, coarse_grid)
        assert 'tail' in caplog.text


class TestRestrictedThermalKernel:
    def test_cold_limit_vanishes(self, lorentz, coarse_grid):
        kernel = kernel_restricted_thermal(lorentz, 1e4, coarse_grid)
        assert kernel.kind is KernelKind.RESTRICTED_THERMAL
        assert np.max(np.abs(kernel.values)) <= 1e-6 * lorentz.g ** 2

    def test_value_at_zero_between_zero_and_g0(self, lorentz, coarse_grid):
        thermal = kernel_restricted_thermal(lorentz, 0.5, coarse_grid)
        zero_t = kernel_zero_t(lorentz, coarse_grid)
        assert 0 < thermal.values[0].real < zero_t.values[0].real
        assert thermal.beta == 0.5

    def test_continuation_identity(self, lorentz, quad, coarse_grid):
        beta = 0.5
        thermal = kernel_restricted_thermal(lorentz, beta, coarse_grid, quad)
        continued = continued_kernel(lorentz, coarse_grid.times - 1j * beta)
        g0 = kernel_zero_t(lorentz, coarse_grid, quad).values[0].real
        assert np.max(np.abs(thermal.values - continued)) <= 10 * quad.abs_tol * g0

    def test_full_line_mode_is_shifted_exponential(self, lorentz, coarse_grid):
        beta = 0.5
        kernel = kernel_restricted_thermal(lorentz, beta, coarse_grid, full_line=True)
        tau = coarse_grid.times - 1j * beta
        expected = lorentz.g ** 2 * np.exp(-lorentz.gamma * tau / 2) * np.exp(-1j * lorentz.center * tau)
        assert_allclose(kernel.values, expected, rtol=1e-12)

    def test_continued_kernel_needs_window_from_zero(self, coarse_grid):
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_min=0.5)
        with pytest.raises(DomainError):
            continued_kernel(spec, coarse_grid.times - 0.5j)

    def test_nonpositive_beta_rejected(self, lorentz, coarse_grid):
        with pytest.raises(DomainError):
            kernel_restricted_thermal(lorentz, 0.0, coarse_grid)

    def test_modulus_bounded_by_value_at_zero(self, lorentz, quad):
        kernel = kernel_restricted_thermal(lorentz, 0.5, TimeGrid(0.05, 200), quad)
        k0 = kernel.values[0].real
        assert np.all(np.abs(kernel.values) <= k0 + quad.abs_tol * k0)

    def test_window_stops_at_thermal_cutoff(self, lorentz, quad, coarse_grid):
        kernel = kernel_restricted_thermal(lorentz, 0.5, coarse_grid, quad)
        assert kernel.window == (0.0, THERMAL_CUTOFF / 0.5)
        assert kernel.window[1] < lorentz.upper_edge(quad)
        info = kernel.describe()
        assert (info['window_lo'], info['window_hi']) == kernel.window


class TestFullThermalKernel:
    def test_infrared_divergence(self, lorentz, coarse_grid):
        with pytest.raises(InfraredDivergenceError):
            kernel_full_thermal(lorentz, 0.5, coarse_grid)

    def test_zero_coupling(self, coarse_grid):
        spec = SpectralDensity(g=0.0, gamma=1.0, center=5.0, omega_min=0.5)
        assert np.all(kernel_full_thermal(spec, 0.5, coarse_grid).values == 0)

    @pytest.mark.filterwarnings('error::RuntimeWarning')
    def test_cold_limit_vanishes(self, coarse_grid):
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_min=0.5)
        kernel = kernel_full_thermal(spec, 1e4, coarse_grid)
        assert np.max(np.abs(kernel.values)) <= 1e-12

    def test_modulus_bounded_by_value_at_zero(self, quad):
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_min=0.5)
        kernel = kernel_full_thermal(spec, 0.5, TimeGrid(0.05, 200), quad)
        k0 = kernel.values[0].real
        assert np.all(np.abs(kernel.values) <= k0 + quad.abs_tol * k0)
        assert kernel.window == (0.5, 0.5 + THERMAL_CUTOFF / 0.5)

    @pytest.mark.filterwarnings('error::RuntimeWarning')
    def test_bose_occupation(self):
        omega = np.array([0.5, 5.0, 50.0])
        assert_allclose(bose_occupation(0.5, omega), 1 / np.expm1(0.5 * omega), rtol=1e-14)
        assert np.all(bose_occupation(1e4, omega) == 0.0)

    def test_positive_at_zero(self, coarse_grid):
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_min=0.5)
        kernel = kernel_full_thermal(spec, 0.5, coarse_grid)
        assert kernel.values[0].real > 0
        assert kernel.kind is KernelKind.FULL_THERMAL

    def test_series_of_restricted_kernels(self, quad):
        beta, terms = 0.5, 50
        spec = SpectralDensity(g=1.0, gamma=1.0, center=5.0, omega_min=0.5)
        grid = TimeGrid(0.25, 8)
        full = kernel_full_thermal(spec, beta, grid, quad)
        partial = sum(kernel_restricted_thermal(spec, n * beta, grid, quad).values for n in range(1, terms + 1))
        g0 = kernel_zero_t(spec, grid, quad).values[0].real
        bound = (quad.abs_tol + math.exp(-terms * beta * spec.omega_min)) * g0
        assert np.max(np.abs(partial - full.values)) <= bound


class TestPartition:
    def test_preset_parameters(self):
        z = partition_restricted(Dispersion(100.0), 0.5)
        assert z == pytest.approx(math.exp(math.pi ** 2 / 150))
        assert z == pytest.approx(1.0680, abs=1e-4)

    def test_matches_k_integral(self):
        beta, slope = 0.5, 100.0
        half, _ = integrate.quad(lambda k: math.log(-math.expm1(-beta * slope * k)), 0, np.inf)
        assert partition_restricted(Dispersion(slope), beta) == pytest.approx(math.exp(-2 * half), rel=1e-6)

    def test_cold_limit(self):
        assert partition_restricted(Dispersion(100.0), 1e6) == pytest.approx(1.0, abs=1e-6)

    def test_depends_on_product_only(self):
        assert partition_restricted(Dispersion(100.0), 0.5) == pytest.approx(
            partition_restricted(Dispersion(25.0), 2.0))

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            partition_restricted(Dispersion(100.0), 0.0)
        with pytest.raises(DomainError):
            Dispersion(0.0)
        with pytest.raises(DomainError):
            Dispersion(1.0, kind='quadratic')

    def test_restricted_state_trace(self):
        disp = Dispersion(100.0)
        z = partition_restricted(disp, 0.5)
        assert restricted_state_trace(disp, 0.5, 1.0) == pytest.approx(1 / z)
        assert restricted_state_trace(disp, 0.5, 0.3) < 1


class TestKernelSamples:
    def test_values_are_read_only(self):
        kernel = KernelSamples(0.1, np.ones(4))
        with pytest.raises(ValueError):
            kernel.values[0] = 2.0

    def test_thermal_kind_needs_beta(self):
        with pytest.raises(DomainError):
            KernelSamples(0.1, np.ones(4), KernelKind.FULL_THERMAL)

    def test_describe(self):
        kernel = KernelSamples(0.1, np.ones(4), KernelKind.RESTRICTED_THERMAL, beta=0.5, panels=3)
        info = kernel.describe()
        assert info['kind'] == 'restricted_thermal'
        assert info['panels'] == 3
        assert_allclose(kernel.times, [0.0, 0.1, 0.2, 0.3])
