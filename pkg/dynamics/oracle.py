"""
Brute-force reference: the continuum of bath modes is replaced by M midpoint
modes and the (M + 1)-dimensional one-excitation Schroedinger equation is
integrated with classical RK4.  The Hamiltonian is an arrowhead matrix (system
level coupled to every mode) so one step costs O(M).

The Hamiltonian is real symmetric, hence so is its propagator, and a single run
started from |1> yields both psi_11(t) and every psi_1k(t).
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from .bath import KernelKind, KernelSamples, QuadratureConfig, SpectralDensity, bose_occupation
from .errors import DomainError, InfraredDivergenceError, OracleStabilityError
from .grid import TimeGrid, frozen
from .observables import ObservableSeries, OscillatorInitial

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DiscreteBath:
    frequencies: np.ndarray
    couplings: np.ndarray
    window: Tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, 'frequencies', frozen(self.frequencies, float))
        object.__setattr__(self, 'couplings', frozen(self.couplings, float))
        if self.frequencies.shape != self.couplings.shape or self.frequencies.ndim != 1:
            raise DomainError("frequencies and couplings must be 1-d arrays of equal length")
        if np.any(self.frequencies <= 0) or np.any(np.diff(self.frequencies) <= 0):
            raise DomainError("mode frequencies must be positive and strictly increasing")
        if np.any(self.couplings < 0):
            raise DomainError("mode couplings must be non-negative")

    @property
    def count(self) -> int:
        return self.frequencies.size

    @property
    def spacing(self) -> float:
        return (self.window[1] - self.window[0]) / self.count

    @property
    def total_weight(self) -> float:
        """Sum of g_j^2, the discrete G(0)."""
        return float(np.sum(self.couplings ** 2))


@dataclass(frozen=True)
class OracleConfig:
    """RK4 substeps keep |h| * ||H|| below max_phase unless fixed explicitly."""

    max_phase: float = 0.1
    substeps: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.max_phase <= 1:
            raise DomainError(f"max_phase must lie in (0, 1], got {self.max_phase}")
        if self.substeps is not None and (int(self.substeps) != self.substeps or self.substeps < 1):
            raise DomainError("substeps must be a positive integer")


@dataclass(frozen=True, eq=False)
class OneExcitationAmplitudes:
    dt: float
    system: np.ndarray
    modes: np.ndarray
    norm_drift: float


def discretize_bath(spec: SpectralDensity, modes: int,
                    window: Optional[Tuple[float, float]] = None,
                    quad: Optional[QuadratureConfig] = None) -> DiscreteBath:
    """Midpoint modes w_j = lo + (j + 1/2) dw with g_j = sqrt(J(w_j) dw / (2 pi))."""
    if int(modes) != modes or modes < 1:
        raise DomainError(f"need at least one mode, got {modes}")
    lo, hi = window if window is not None else spec.window(quad or QuadratureConfig())
    if not spec.omega_min <= lo < hi <= spec.omega_max:
        raise DomainError(
            f"window [{lo}, {hi}] outside the spectral density support [{spec.omega_min}, {spec.omega_max}]"
        )
    step = (hi - lo) / modes
    frequencies = lo + (np.arange(modes) + 0.5) * step
    couplings = np.sqrt(spec(frequencies) * step / (2 * math.pi))
    return DiscreteBath(frequencies, couplings, (lo, hi))


def discrete_kernel(bath: DiscreteBath, grid: TimeGrid) -> KernelSamples:
    """sum_j g_j^2 exp(-i w_j t), the discretised zero-temperature kernel."""
    values = np.exp(-1j * np.outer(grid.times, bath.frequencies)) @ bath.couplings ** 2
    return KernelSamples(grid.dt, values, KernelKind.ZERO_T)


def recurrence_time(bath: DiscreteBath) -> float:
    return 2 * math.pi / bath.spacing


def rk4_substeps(bath: DiscreteBath, omega: float, dt: float, cfg: OracleConfig) -> int:
    # spectral radius bound of the arrowhead matrix
    radius = max(float(np.max(np.abs(bath.frequencies))), abs(omega)) + float(np.linalg.norm(bath.couplings))
    if cfg.substeps is None:
        return max(1, math.ceil(dt * radius / cfg.max_phase))
    phase = dt * radius / cfg.substeps
    if phase > cfg.max_phase:
        raise OracleStabilityError(
            f"{cfg.substeps} substeps per grid step give phase {phase:.3g} > {cfg.max_phase:g}", phase
        )
    return cfg.substeps


def iter_one_excitation(bath: DiscreteBath, omega: float, grid: TimeGrid,
                        cfg: Optional[OracleConfig] = None) -> Iterator[np.ndarray]:
    """Yield psi(n dt) = exp(-i H n dt)|1> for n = 0..steps; psi[0] is psi_11, psi[1:] the psi_1k."""
    cfg = cfg or OracleConfig()
    substeps = rk4_substeps(bath, omega, grid.dt, cfg)
    if grid.t_max > 0.5 * recurrence_time(bath):
        logger.warning("t_max = %.3g exceeds half the recurrence time %.3g of %d modes",
                       grid.t_max, recurrence_time(bath), bath.count)
    w = bath.frequencies
    g = bath.couplings
    h = grid.dt / substeps

    def rhs(psi):
        out = np.empty_like(psi)
        out[0] = omega * psi[0] + g @ psi[1:]
        out[1:] = w * psi[1:] + g * psi[0]
        return -1j * out

    psi = np.zeros(bath.count + 1, dtype=complex)
    psi[0] = 1.0
    yield psi
    for _ in range(grid.steps):
        for _ in range(substeps):
            k1 = rhs(psi)
            k2 = rhs(psi + 0.5 * h * k1)
            k3 = rhs(psi + 0.5 * h * k2)
            k4 = rhs(psi + h * k3)
            psi = psi + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        yield psi


def propagate_one_excitation(bath: DiscreteBath, omega: float, grid: TimeGrid,
                             cfg: Optional[OracleConfig] = None) -> OneExcitationAmplitudes:
    """All amplitudes stored; memory grows as (steps + 1) * (M + 1)."""
    states = np.array(list(iter_one_excitation(bath, omega, grid, cfg)))
    drift = float(np.max(np.abs(np.sum(np.abs(states) ** 2, axis=1) - 1)))
    return OneExcitationAmplitudes(grid.dt, states[:, 0].copy(), states[:, 1:].copy(), drift)


def oracle_population(bath: DiscreteBath, omega: float, beta: float, p: float, Z: float,
                      grid: TimeGrid, cfg: Optional[OracleConfig] = None) -> ObservableSeries:
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    weights = np.exp(-beta * bath.frequencies)
    population = np.empty(grid.size)
    drift = 0.0
    for n, psi in enumerate(iter_one_excitation(bath, omega, grid, cfg)):
        modes = np.abs(psi[1:]) ** 2
        system = abs(psi[0]) ** 2
        population[n] = (p * system + (1 - p) * (weights @ modes)) / Z
        drift = max(drift, abs(system + modes.sum() - 1))
    logger.info("oracle population: %d modes, %d steps, norm drift %.2e", bath.count, grid.steps, drift)
    return ObservableSeries(grid.dt, population)


def oracle_oscillator_moments(bath: DiscreteBath, omega: float, beta: float, init: OscillatorInitial,
                              grid: TimeGrid, cfg: Optional[OracleConfig] = None) -> ObservableSeries:
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if bath.window[0] == 0 and bath.total_weight > 0:
        raise InfraredDivergenceError("Bose occupations need a window with omega_min > 0")
    occupations = bose_occupation(beta, bath.frequencies)
    occupation = np.empty(grid.size)
    system = np.empty(grid.size, dtype=complex)
    for n, psi in enumerate(iter_one_excitation(bath, omega, grid, cfg)):
        system[n] = psi[0]
        occupation[n] = abs(psi[0]) ** 2 * init.n + occupations @ (np.abs(psi[1:]) ** 2)
    logger.info("oracle oscillator: %d modes, %d steps", bath.count, grid.steps)
    return ObservableSeries(grid.dt, occupation, system * init.a, system ** 2 * init.a2)
