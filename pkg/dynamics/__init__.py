from .errors import (
    ThermalRWAError, DomainError, DimensionError, KernelKindError,
    QuadratureError, InfraredDivergenceError, OracleStabilityError
)
from .grid import TimeGrid
from .bath import (
    SpectralDensity, Dispersion, KernelKind, KernelSamples, QuadratureConfig,
    eval_spectral_density, kernel_zero_t, kernel_restricted_thermal, kernel_full_thermal,
    partition_restricted, continued_kernel, analytic_full_line_kernel,
    golden_rule_rate, restricted_state_trace, bose_occupation
)
from .memory_solver import (
    Trajectory, DriveFunction, SolverConfig,
    solve_amplitude, solve_driven_amplitude, analytic_exponential_amplitude, step_halving_error
)
from .observables import (
    FriedrichsInitial, OscillatorInitial, ObservableSeries,
    thermal_injection, excited_population, oscillator_moments,
    one_photon_amplitude, driven_response, fit_decay_rate
)
from .oracle import (
    DiscreteBath, OracleConfig, OneExcitationAmplitudes,
    discretize_bath, propagate_one_excitation, iter_one_excitation,
    oracle_population, oracle_oscillator_moments, discrete_kernel, recurrence_time, rk4_substeps
)

__all__ = [
    'ThermalRWAError', 'DomainError', 'DimensionError', 'KernelKindError',
    'QuadratureError', 'InfraredDivergenceError', 'OracleStabilityError',
    'TimeGrid',
    'SpectralDensity', 'Dispersion', 'KernelKind', 'KernelSamples', 'QuadratureConfig',
    'eval_spectral_density', 'kernel_zero_t', 'kernel_restricted_thermal', 'kernel_full_thermal',
    'partition_restricted', 'continued_kernel', 'analytic_full_line_kernel',
    'golden_rule_rate', 'restricted_state_trace', 'bose_occupation',
    'Trajectory', 'DriveFunction', 'SolverConfig',
    'solve_amplitude', 'solve_driven_amplitude', 'analytic_exponential_amplitude', 'step_halving_error',
    'FriedrichsInitial', 'OscillatorInitial', 'ObservableSeries',
    'thermal_injection', 'excited_population', 'oscillator_moments',
    'one_photon_amplitude', 'driven_response', 'fit_decay_rate',
    'DiscreteBath', 'OracleConfig', 'OneExcitationAmplitudes',
    'discretize_bath', 'propagate_one_excitation', 'iter_one_excitation',
    'oracle_population', 'oracle_oscillator_moments', 'discrete_kernel', 'recurrence_time', 'rk4_substeps'
]
