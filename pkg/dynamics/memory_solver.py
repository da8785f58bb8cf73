"""
Scalar Volterra integro-differential equations of the one-excitation sector.

    dx/dt = -i Omega x - int_0^t G(t - s) x(s) ds - i f(t),   x(0) = initial

The memory integral uses the product trapezoid rule on the kernel grid and the
local part a trapezoid predictor-corrector step.  Integration runs in the frame
rotating at Omega, where free evolution is exact.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bath import KernelKind, KernelSamples
from .errors import DomainError, KernelKindError
from .grid import TimeGrid, check_length, check_step, frozen

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """values[n] ~ x(n * dt); values[0] is the initial condition as supplied."""

    dt: float
    values: np.ndarray

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"trajectory time step must be positive, got {self.dt}")
        object.__setattr__(self, 'values', frozen(self.values))

    def __len__(self) -> int:
        return self.values.size

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid(self.dt, self.values.size - 1)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def modulus_squared(self) -> np.ndarray:
        return np.abs(self.values) ** 2


@dataclass(frozen=True)
class DriveFunction:
    """Inhomogeneity f(t); ``frequency`` and ``coupling`` are set for a single bath mode."""

    func: Callable[[np.ndarray], np.ndarray]
    frequency: Optional[float] = None
    coupling: Optional[complex] = None

    @classmethod
    def mode(cls, coupling: complex, frequency: float) -> 'DriveFunction':
        """f(t) = coupling * exp(-i frequency t)."""
        return cls(lambda t: coupling * np.exp(-1j * frequency * t), frequency, coupling)

    @classmethod
    def zero(cls) -> 'DriveFunction':
        return cls(np.zeros_like)

    def sample(self, grid: TimeGrid) -> np.ndarray:
        values = np.broadcast_to(np.asarray(self.func(grid.times), dtype=complex), (grid.size,))
        if not np.all(np.isfinite(values)):
            raise DomainError(f"drive is not bounded on [0, {grid.t_max:g}]")
        return values


@dataclass(frozen=True)
class SolverConfig:
    dt: float
    corrector_iterations: int = 2
    step_halving: bool = False

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"solver step must be positive, got {self.dt}")
        if int(self.corrector_iterations) != self.corrector_iterations or self.corrector_iterations < 1:
            raise DomainError("corrector_iterations must be an integer >= 1")

    def halved(self) -> 'SolverConfig':
        return SolverConfig(0.5 * self.dt, self.corrector_iterations, self.step_halving)


def _integrate(omega: float, kernel: KernelSamples, forcing: np.ndarray, initial: complex,
               steps: int, cfg: SolverConfig) -> Trajectory:
    if kernel.kind is not KernelKind.ZERO_T:
        raise KernelKindError(f"amplitude equation needs the zero-temperature kernel, got {kernel.kind.value}")
    check_step(kernel.dt, cfg.dt, 'kernel')
    check_length(len(kernel), steps + 1, 'kernel samples')

    h = cfg.dt
    rot = np.exp(1j * omega * h * np.arange(steps + 1))
    k = kernel.values[:steps + 1] * rot
    f = forcing * rot
    trap = 0.5 * h * k[0]

    y = np.empty(steps + 1, dtype=complex)
    y[0] = initial
    slope = -1j * f[0]
    for m in range(1, steps + 1):
        hist = h * (0.5 * k[m] * y[0] + np.dot(k[m - 1:0:-1], y[1:m]))
        guess = y[m - 1] + h * slope
        for _ in range(cfg.corrector_iterations):
            guess = y[m - 1] + 0.5 * h * (slope - (hist + trap * guess) - 1j * f[m])
        y[m] = guess
        slope = -(hist + trap * guess) - 1j * f[m]

    logger.debug("volterra solve: %d steps of %.3g", steps, h)
    return Trajectory(h, y * np.conj(rot))


def solve_amplitude(omega: float, kernel: KernelSamples, steps: int, cfg: SolverConfig) -> Trajectory:
    """Homogeneous amplitude x(t) with x(0) = 1."""
    return _integrate(omega, kernel, np.zeros(steps + 1, dtype=complex), 1.0, steps, cfg)


def solve_driven_amplitude(omega: float, kernel: KernelSamples, drive: DriveFunction,
                           initial: complex, steps: int, cfg: SolverConfig) -> Trajectory:
    forcing = drive.sample(TimeGrid(cfg.dt, steps))
    return _integrate(omega, kernel, forcing, initial, steps, cfg)


def analytic_exponential_amplitude(omega: float, g: float, gamma: float, grid: TimeGrid) -> Trajectory:
    """Exact x(t) for the kernel g^2 exp(-gamma t/2) exp(-i omega t).

    x = exp(-i omega t) y(t) where y solves y'' + (gamma/2) y' + g^2 y = 0 with y(0) = 1, y'(0) = 0;
    at critical damping (d = 0) sinh(d t)/d is replaced by its limit t.
    """
    if g < 0 or not gamma > 0:
        raise DomainError(f"need g >= 0 and gamma > 0, got g={g}, gamma={gamma}")
    t = grid.times
    q = 0.25 * gamma
    d = np.sqrt(complex(q ** 2 - g ** 2))
    if d == 0:
        envelope = np.exp(-q * t) * (1 + q * t)
    else:
        # exp(-q t) folded into cosh and sinh; Re d <= q keeps both factors bounded
        grow = np.exp((d - q) * t)
        decay = np.exp(-(d + q) * t)
        envelope = (0.5 * (grow + decay) + 0.5 * q * (grow - decay) / d).real
    return Trajectory(grid.dt, np.exp(-1j * omega * t) * envelope)


def step_halving_error(coarse: Trajectory, fine: Trajectory) -> float:
    """Richardson estimate of the coarse-grid error, 4/3 max |x_h - x_h/2|, for a second-order scheme."""
    check_step(coarse.dt, 2 * fine.dt, 'halved trajectory')
    check_length(len(fine), 2 * len(coarse) - 1, 'halved trajectory')
    return 4 * float(np.max(np.abs(coarse.values - fine.values[:2 * len(coarse) - 1:2]))) / 3
