"""
Memory kernels of a Lorentz reservoir.

G(t) is the positive-frequency Fourier transform of the spectral density,

    G(t) = int_0^inf dw/(2 pi) exp(-i w t) J(w),

and the thermal kernels insert the weights exp(-beta w) (restricted, one- and
zero-particle sector) or 1/(exp(beta w) - 1) (full Bose occupation).  All three
are sampled on a uniform time grid by panel-wise Gauss-Legendre quadrature with
panels narrower than a fraction of the shortest oscillation period on the grid.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate
from scipy.special import roots_legendre

from .errors import DomainError, InfraredDivergenceError, QuadratureError
from .grid import TimeGrid, frozen

logger = logging.getLogger(__name__)

# exp(-37) < 1e-16
THERMAL_CUTOFF = 37.0


class DensityKind(Enum):
    LORENTZ = 'lorentz'


class KernelKind(Enum):
    ZERO_T = 'zero_t'
    RESTRICTED_THERMAL = 'restricted_thermal'
    FULL_THERMAL = 'full_thermal'


@dataclass(frozen=True)
class SpectralDensity:
    """Lorentz spectral density gamma g^2 / ((gamma/2)^2 + (w - center)^2) on a window."""

    g: float
    gamma: float
    center: float
    omega_min: float = 0.0
    omega_max: float = math.inf
    kind: DensityKind = DensityKind.LORENTZ

    def __post_init__(self):
        if self.kind is not DensityKind.LORENTZ:
            raise DomainError(f"unsupported spectral density {self.kind}")
        if self.g < 0:
            raise DomainError(f"coupling g must be non-negative, got {self.g}")
        if not self.gamma > 0:
            raise DomainError(f"width gamma must be positive, got {self.gamma}")
        if not self.center > 0:
            raise DomainError(f"center frequency must be positive, got {self.center}")
        if not 0 <= self.omega_min < self.omega_max:
            raise DomainError(
                f"window [{self.omega_min}, {self.omega_max}] must satisfy 0 <= omega_min < omega_max"
            )

    def lorentzian(self, omega) -> np.ndarray:
        """The Lorentz profile without the window cut."""
        omega = np.asarray(omega, dtype=float)
        half = 0.5 * self.gamma
        return self.gamma * self.g ** 2 / (half ** 2 + (omega - self.center) ** 2)

    def __call__(self, omega) -> np.ndarray:
        omega = np.asarray(omega, dtype=float)
        inside = (omega >= self.omega_min) & (omega <= self.omega_max)
        return np.where(inside, self.lorentzian(omega), 0.0)

    @property
    def peak(self) -> float:
        return 4 * self.g ** 2 / self.gamma

    def tail_bound(self, upper: float) -> float:
        """Upper bound of int_upper^inf J dw/(2 pi)."""
        if upper <= self.center:
            return math.inf
        return self.g ** 2 * self.gamma / (2 * math.pi * (upper - self.center))

    def upper_edge(self, quad: 'QuadratureConfig') -> float:
        if math.isfinite(self.omega_max):
            return self.omega_max
        return self.center + self.gamma / (2 * math.pi * quad.tail_tol)

    def window(self, quad: 'QuadratureConfig') -> Tuple[float, float]:
        return self.omega_min, self.upper_edge(quad)


@dataclass(frozen=True)
class Dispersion:
    """Linear dispersion w_k = slope * |k|."""

    slope: float
    kind: str = 'linear'

    def __post_init__(self):
        if self.kind != 'linear':
            raise DomainError(f"only linear dispersion has a closed-form partition constant, got {self.kind}")
        if not self.slope > 0:
            raise DomainError(f"dispersion slope must be positive, got {self.slope}")


@dataclass(frozen=True)
class QuadratureConfig:
    points_per_period: int = 2
    nodes_per_panel: int = 12
    abs_tol: float = 1e-9
    tail_tol: float = 1e-3
    max_refinements: int = 4
    probes: int = 16
    chunk: int = 256

    def __post_init__(self):
        for name in ('points_per_period', 'nodes_per_panel', 'probes', 'chunk'):
            if int(getattr(self, name)) != getattr(self, name) or getattr(self, name) < 1:
                raise DomainError(f"{name} must be a positive integer")
        if self.max_refinements < 0:
            raise DomainError("max_refinements must be non-negative")
        for name in ('abs_tol', 'tail_tol'):
            if not 0 < getattr(self, name) < 1:
                raise DomainError(f"{name} must lie in (0, 1), got {getattr(self, name)}")


@dataclass(frozen=True, eq=False)
class KernelSamples:
    """values[n] ~ kernel(n * dt), tagged with the kernel it approximates."""

    dt: float
    values: np.ndarray
    kind: KernelKind = KernelKind.ZERO_T
    beta: Optional[float] = None
    error_estimate: float = 0.0
    panels: int = 0
    full_line: bool = False
    # frequency interval actually integrated, after the thermal cutoff
    window: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"kernel time step must be positive, got {self.dt}")
        if self.kind is not KernelKind.ZERO_T and not (self.beta is not None and self.beta > 0):
            raise DomainError(f"{self.kind.value} kernel needs a positive beta")
        object.__setattr__(self, 'values', frozen(self.values))

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.values.size) * self.dt

    def describe(self) -> dict:
        lo, hi = self.window if self.window is not None else (None, None)
        return {
            'kind': self.kind.value,
            'beta': self.beta,
            'full_line': self.full_line,
            'panels': self.panels,
            'error_estimate': self.error_estimate,
            'value_at_zero': self.values[0].real,
            'window_lo': lo,
            'window_hi': hi,
        }


def eval_spectral_density(spec: SpectralDensity, omega):
    """J(omega) for non-negative frequencies; zero outside the window."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise DomainError("spectral density is defined for non-negative frequencies only")
    value = spec(omega)
    return float(value) if value.ndim == 0 else value


def golden_rule_rate(spec: SpectralDensity, omega: float) -> float:
    """Weak-coupling decay rate J(omega) of a level at frequency omega."""
    return float(eval_spectral_density(spec, omega))


def _weight(kind: KernelKind, beta: Optional[float]) -> Optional[Callable]:
    if kind is KernelKind.RESTRICTED_THERMAL:
        return lambda omega: np.exp(-beta * omega)
    if kind is KernelKind.FULL_THERMAL:
        return lambda omega: bose_occupation(beta, omega)
    return None


def bose_occupation(beta: float, omega) -> np.ndarray:
    """1/(exp(beta w) - 1) for w > 0, written to stay finite at large beta w."""
    x = beta * np.asarray(omega, dtype=float)
    return np.exp(-x) / -np.expm1(-x)


def _panel_rule(lo: float, hi: float, count: int, nodes: int):
    x, w = roots_legendre(nodes)
    edges = np.linspace(lo, hi, count + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    omega = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return omega, weights


def _fourier(times: np.ndarray, omega: np.ndarray, amplitudes: np.ndarray, chunk: int) -> np.ndarray:
    out = np.empty(times.size, dtype=complex)
    for start in range(0, times.size, chunk):
        stop = start + chunk
        out[start:stop] = np.exp(-1j * np.outer(times[start:stop], omega)) @ amplitudes
    return out


def _sample_kernel(spec: SpectralDensity, grid: TimeGrid, quad: QuadratureConfig,
                   kind: KernelKind, beta: Optional[float] = None,
                   full_line: bool = False) -> KernelSamples:
    lo, hi = spec.window(quad)
    if full_line:
        lo = 2 * spec.center - hi
    width = min(2 * math.pi / (grid.t_max * quad.points_per_period), 0.5 * spec.gamma)
    if beta is not None:
        hi = min(hi, lo + THERMAL_CUTOFF / beta)
        width = min(width, 2.0 / beta)
    if spec.g == 0:
        return KernelSamples(grid.dt, np.zeros(grid.size), kind, beta, full_line=full_line, window=(lo, hi))

    if math.isfinite(spec.omega_max) and spec.tail_bound(spec.omega_max) > quad.tail_tol * spec.g ** 2:
        logger.warning("window edge %.4g leaves a Lorentz tail above tail_tol = %.1e",
                       spec.omega_max, quad.tail_tol)
    density = spec.lorentzian if full_line else spec
    weight = _weight(kind, beta)
    count = max(1, math.ceil((hi - lo) / width))

    def amplitudes(panels: int):
        omega, weights = _panel_rule(lo, hi, panels, quad.nodes_per_panel)
        amp = weights * density(omega) / (2 * math.pi)
        if weight is not None:
            amp = amp * weight(omega)
        return omega, amp

    probe_index = np.unique(np.linspace(0, grid.steps, min(quad.probes, grid.size)).round().astype(int))
    probe_times = grid.times[probe_index]
    for _ in range(quad.max_refinements + 1):
        coarse = _fourier(probe_times, *amplitudes(count), quad.chunk)
        fine = _fourier(probe_times, *amplitudes(2 * count), quad.chunk)
        scale = max(abs(fine[0]), np.finfo(float).tiny)
        estimate = float(np.max(np.abs(coarse - fine)))
        logger.debug("%s kernel: %d panels, estimate %.3e", kind.value, count, estimate)
        if estimate <= quad.abs_tol * scale:
            break
        count *= 2
    else:
        raise QuadratureError(f"{kind.value} kernel did not reach abs_tol = {quad.abs_tol:g}",
                              estimate, count)

    values = _fourier(grid.times, *amplitudes(count), quad.chunk)
    logger.info("%s kernel on [%.4g, %.4g]: %d panels, %d samples, estimate %.2e",
                kind.value, lo, hi, count, grid.size, estimate)
    return KernelSamples(grid.dt, values, kind, beta, estimate, count, full_line, (lo, hi))


def kernel_zero_t(spec: SpectralDensity, grid: TimeGrid, quad: Optional[QuadratureConfig] = None,
                  full_line: bool = False) -> KernelSamples:
    """Zero-temperature kernel G(n dt).

    With ``full_line`` the window is mirrored about the Lorentz center so that the
    quadrature approaches the full-line value g^2 exp(-gamma t/2) exp(-i center t).
    """
    return _sample_kernel(spec, grid, quad or QuadratureConfig(), KernelKind.ZERO_T, full_line=full_line)


def kernel_restricted_thermal(spec: SpectralDensity, beta: float, grid: TimeGrid,
                              quad: Optional[QuadratureConfig] = None,
                              full_line: bool = False) -> KernelSamples:
    """Restricted thermal kernel: G with the extra weight exp(-beta w).

    The full-line comparison mode has no convergent frequency integral and is
    returned as the continuation G(t - i beta) of the closed-form kernel.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if full_line:
        return analytic_full_line_kernel(spec, grid, beta, KernelKind.RESTRICTED_THERMAL)
    return _sample_kernel(spec, grid, quad or QuadratureConfig(), KernelKind.RESTRICTED_THERMAL, beta)


def kernel_full_thermal(spec: SpectralDensity, beta: float, grid: TimeGrid,
                        quad: Optional[QuadratureConfig] = None,
                        full_line: bool = False) -> KernelSamples:
    """Thermal kernel with Bose weight 1/(exp(beta w) - 1)."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if full_line:
        return analytic_full_line_kernel(spec, grid, beta, KernelKind.FULL_THERMAL)
    if spec.g > 0 and spec.omega_min == 0:
        raise InfraredDivergenceError(
            "Bose-weighted kernel diverges at omega = 0; set a positive omega_min"
        )
    return _sample_kernel(spec, grid, quad or QuadratureConfig(), KernelKind.FULL_THERMAL, beta)


def analytic_full_line_kernel(spec: SpectralDensity, grid: TimeGrid, beta: Optional[float] = None,
                              kind: KernelKind = KernelKind.ZERO_T) -> KernelSamples:
    """Closed-form kernels of the Lorentzian extended to the whole frequency line.

    ZERO_T gives g^2 exp(-(gamma/2 + i center) t), RESTRICTED_THERMAL the same at
    t - i beta, FULL_THERMAL the sum over t - i n beta for n >= 1.
    """
    rate = 0.5 * spec.gamma + 1j * spec.center
    t = grid.times
    values = spec.g ** 2 * np.exp(-rate * t)
    if kind is KernelKind.RESTRICTED_THERMAL:
        values = values * np.exp(1j * rate * beta)
    elif kind is KernelKind.FULL_THERMAL:
        q = np.exp(1j * rate * beta)
        values = values * q / (1 - q)
    return KernelSamples(grid.dt, values, kind, beta, full_line=True, window=(-math.inf, math.inf))


def continued_kernel(spec: SpectralDensity, times, epsabs: float = 1e-13) -> np.ndarray:
    """Half-line G(tau) at complex times tau = t - i beta with t, beta >= 0.

    The frequency contour is turned onto the negative imaginary axis: the Lorentz
    pole gives the full-line term g^2 exp(-(gamma/2 + i center) tau) and the
    rotated ray adds -i/(2 pi) int_0^inf exp(-v tau) J(-i v) dv.  The upper
    window edge is ignored.
    """
    if spec.omega_min != 0:
        raise DomainError("contour rotation needs a window starting at omega = 0")
    taus = np.atleast_1d(np.asarray(times, dtype=complex))
    if np.any(taus.real < 0) or np.any(taus.imag > 0):
        raise DomainError("continued kernel is defined for Re tau >= 0 and Im tau <= 0")
    half = 0.5 * spec.gamma
    rate = half + 1j * spec.center

    def rotated_density(v):
        return spec.gamma * spec.g ** 2 / (half ** 2 + (spec.center + 1j * v) ** 2)

    out = np.empty(taus.size, dtype=complex)
    for i, tau in enumerate(taus):
        t, beta = tau.real, -tau.imag

        def part(v, which):
            value = np.exp(-v * t) * rotated_density(v)
            return value.real if which == 're' else value.imag

        if beta > 0:
            pieces = {
                (which, w): integrate.quad(part, 0, np.inf, args=(which,), weight=w, wvar=beta,
                                           epsabs=epsabs, limlst=100)[0]
                for which in ('re', 'im') for w in ('cos', 'sin')
            }
            cos_part = pieces[('re', 'cos')] + 1j * pieces[('im', 'cos')]
            sin_part = pieces[('re', 'sin')] + 1j * pieces[('im', 'sin')]
            ray = cos_part + 1j * sin_part
        else:
            ray = (integrate.quad(part, 0, np.inf, args=('re',), epsabs=epsabs, limit=400)[0]
                   + 1j * integrate.quad(part, 0, np.inf, args=('im',), epsabs=epsabs, limit=400)[0])
        out[i] = spec.g ** 2 * np.exp(-rate * tau) - 1j * ray / (2 * math.pi)
    return out


def partition_restricted(disp: Dispersion, beta: float) -> float:
    """Z = exp(-int dk ln(1 - exp(-beta w_k))) = exp(pi^2 / (3 beta c)) for w_k = c|k|."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    return math.exp(math.pi ** 2 / (3 * beta * disp.slope))


def restricted_state_trace(disp: Dispersion, beta: float, p: float) -> float:
    """Trace of the one- and zero-particle restricted initial state, at most 1."""
    z = partition_restricted(disp, beta)
    return (1 + (1 - p) * 2 / (beta * disp.slope)) / z
