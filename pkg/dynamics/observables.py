"""
Excited-state population of the finite-temperature Friedrichs model and moments
of the RWA oscillator, built from the zero-temperature amplitude x(t) and a
thermal kernel K through the thermal injection integral

    F(t) = 2 Re int_0^t dtau x*(tau) int_0^tau ds K(tau - s) x(s).
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .bath import Dispersion, KernelKind, KernelSamples, partition_restricted
from .errors import DomainError, KernelKindError
from .grid import check_length, check_step, frozen
from .memory_solver import DriveFunction, Trajectory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FriedrichsInitial:
    """p |1><1| plus (1 - p) times the restricted thermal bath, normalised by Z."""

    p: float
    Z: float
    beta: float

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise DomainError(f"p must lie in [0, 1], got {self.p}")
        if not self.Z >= 1:
            raise DomainError(f"partition constant must be >= 1, got {self.Z}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")

    @classmethod
    def from_dispersion(cls, p: float, beta: float, disp: Dispersion) -> 'FriedrichsInitial':
        return cls(p, partition_restricted(disp, beta), beta)

    @property
    def ground_weight(self) -> float:
        return (1 - self.p) / self.Z


@dataclass(frozen=True)
class OscillatorInitial:
    a: complex = 0j
    n: float = 0.0
    a2: complex = 0j

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"<a+a(0)> must be non-negative, got {self.n}")
        if abs(self.a) ** 2 > self.n * (1 + 1e-12):
            raise DomainError(f"|<a(0)>|^2 = {abs(self.a) ** 2:g} exceeds <a+a(0)> = {self.n:g}")

    @classmethod
    def vacuum(cls) -> 'OscillatorInitial':
        return cls()


@dataclass(frozen=True, eq=False)
class ObservableSeries:
    """population is rho11 or <a+a>; mean_a and mean_a2 are set for the oscillator."""

    dt: float
    population: np.ndarray
    mean_a: Optional[np.ndarray] = None
    mean_a2: Optional[np.ndarray] = None
    tolerance: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, 'population', frozen(self.population, float))
        for name in ('mean_a', 'mean_a2'):
            if getattr(self, name) is not None:
                object.__setattr__(self, name, frozen(getattr(self, name)))
        for name in ('population', 'mean_a', 'mean_a2'):
            values = getattr(self, name)
            if values is not None and not np.all(np.isfinite(values)):
                raise DomainError(f"{name} series is not finite")
        low = float(np.min(self.population))
        if low < -self.tolerance:
            logger.warning("population dips to %.3e, below -%.0e", low, self.tolerance)

    def __len__(self) -> int:
        return self.population.size

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.population.size) * self.dt


def thermal_injection(x: Trajectory, kernel: KernelSamples) -> np.ndarray:
    """F(n dt) without prefactor; inner product trapezoid then outer cumulative trapezoid."""
    check_step(x.dt, kernel.dt, 'kernel')
    check_length(len(kernel), len(x), 'kernel samples')
    h = x.dt
    xv = x.values
    k = kernel.values[:xv.size]
    conv = np.convolve(k, xv)[:xv.size]
    inner = h * (conv - 0.5 * k * xv[0] - 0.5 * k[0] * xv)
    return cumulative_trapezoid(2 * np.real(np.conj(xv) * inner), dx=h, initial=0)


def _require(kernel: KernelSamples, kind: KernelKind, observable: str):
    if kernel.kind is not kind:
        raise KernelKindError(f"{observable} needs a {kind.value} kernel, got {kernel.kind.value}")


def excited_population(x: Trajectory, kernel: KernelSamples, init: FriedrichsInitial) -> ObservableSeries:
    """rho11 = (p |x|^2 + (1 - p) F) / Z with the restricted thermal kernel."""
    _require(kernel, KernelKind.RESTRICTED_THERMAL, 'excited population')
    if not math.isclose(kernel.beta, init.beta, rel_tol=1e-12):
        raise DomainError(f"kernel beta {kernel.beta} differs from initial state beta {init.beta}")
    injection = thermal_injection(x, kernel)
    population = (init.p * x.modulus_squared() + (1 - init.p) * injection) / init.Z
    return ObservableSeries(x.dt, population)


def oscillator_moments(x: Trajectory, kernel: KernelSamples, init: OscillatorInitial) -> ObservableSeries:
    _require(kernel, KernelKind.FULL_THERMAL, 'oscillator moments')
    occupation = x.modulus_squared() * init.n + thermal_injection(x, kernel)
    return ObservableSeries(x.dt, occupation, x.values * init.a, x.values ** 2 * init.a2)


def driven_response(x: Trajectory, drive: DriveFunction, initial: complex = 0j) -> Trajectory:
    """psi(t) = x(t) psi(0) - i int_0^t x(t - s) f(s) ds."""
    h = x.dt
    xv = x.values
    f = drive.sample(x.grid)
    conv = np.convolve(xv, f)[:xv.size]
    integral = h * (conv - 0.5 * xv * f[0] - 0.5 * xv[0] * f)
    return Trajectory(h, xv * initial - 1j * integral)


def one_photon_amplitude(x: Trajectory, g_k: complex, omega_k: float) -> Trajectory:
    return driven_response(x, DriveFunction.mode(g_k, omega_k))


def fit_decay_rate(values, dt: float, t_start: float, t_stop: float) -> float:
    """Least-squares rate r of values ~ exp(-r t) on [t_start, t_stop]."""
    values = np.asarray(values, dtype=float)
    times = np.arange(values.size) * dt
    window = (times >= t_start - 1e-12) & (times <= t_stop + 1e-12)
    if window.sum() < 2:
        raise DomainError(f"fit window [{t_start}, {t_stop}] holds fewer than two samples")
    if np.any(values[window] <= 0):
        raise DomainError("exponential fit needs a positive series")
    slope, _ = np.polyfit(times[window], np.log(values[window]), 1)
    return float(-slope)
