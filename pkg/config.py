"""
Scenario files: flat ``key = value`` text, ``#`` comments, one scenario per file.

    model = friedrichs
    g = 0.5          # coupling
    beta = 0.5
"""
import io
import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Callable, Dict, Optional, Tuple

from dotenv.parser import parse_stream

from dynamics import (
    Dispersion, DomainError, FriedrichsInitial, OscillatorInitial, QuadratureConfig,
    SolverConfig, SpectralDensity, ThermalRWAError, TimeGrid, partition_restricted
)
from dynamics.oracle import OracleConfig

MODELS = ('friedrichs', 'oscillator', 'oracle-compare')
COMPARE_OBSERVABLES = ('population', 'occupation')


class ConfigError(ThermalRWAError):
    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None,
                 key: Optional[str] = None, related: Tuple[str, ...] = ()):
        super().__init__(message)
        self.message = message
        self.line = line
        self.path = path
        self.key = key
        # every key the failed constraint reads, most specific first
        self.related = related or ((key,) if key else ())

    def __str__(self):
        where = self.path or '<config>'
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def _parse_optional_float(raw: str) -> Optional[float]:
    value = raw.strip().lower()
    if value in ('', 'auto'):
        return None
    return float(value)


def _parse_int(raw: str) -> int:
    return int(raw.strip())


def _choice(options) -> Callable[[str], str]:
    def parse(raw: str) -> str:
        value = raw.strip().lower()
        if value not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got {raw!r}")
        return value
    return parse


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved scenario. Absolute units; gamma = 1 makes them gamma units."""

    model: str
    omega: float = 5.0
    center: Optional[float] = None
    gamma: float = 1.0
    g: float = 0.5
    beta: float = 0.5
    p: float = 0.3
    c: float = 100.0
    omega_min: Optional[float] = None
    omega_max: Optional[float] = None
    t_max: float = 10.0
    dt: float = 1e-3
    full_line: bool = False
    compare_observable: str = 'population'
    a0_re: float = 0.0
    a0_im: float = 0.0
    n0: float = 0.0
    a2_re: float = 0.0
    a2_im: float = 0.0
    quad_points_per_period: int = 2
    quad_nodes_per_panel: int = 12
    quad_abs_tol: float = 1e-9
    quad_tail_tol: float = 1e-3
    quad_max_refinements: int = 4
    quad_probes: int = 16
    quad_chunk: int = 256
    solver_corrector_iterations: int = 2
    solver_step_halving: bool = False
    oracle_modes: int = 2000
    oracle_max_phase: float = 0.1
    output: Optional[str] = None

    def validate(self):
        """Raise ConfigError naming the offending key."""
        checks = [
            ('model', self.model in MODELS, f"model must be one of {', '.join(MODELS)}"),
            ('omega', self.omega > 0, "omega must be positive"),
            ('center', self.center is None or self.center > 0, "center must be positive"),
            ('gamma', self.gamma > 0, "gamma must be positive"),
            ('g', self.g >= 0, "g must be non-negative"),
            ('beta', self.beta > 0, "beta must be positive"),
            ('p', 0 <= self.p <= 1, "p must lie in [0, 1]"),
            ('c', self.c > 0, "dispersion slope c must be positive"),
            ('omega_min', self.omega_min is None or self.omega_min >= 0, "omega_min must be non-negative"),
            ('omega_max', self.omega_max is None or self.omega_max > self.resolved_omega_min,
             "omega_max must exceed omega_min"),
            ('t_max', self.t_max > 0, "t_max must be positive"),
            ('dt', self.dt > 0, "dt must be positive"),
            ('compare_observable', self.compare_observable in COMPARE_OBSERVABLES,
             f"compare_observable must be one of {', '.join(COMPARE_OBSERVABLES)}"),
            ('n0', self.n0 >= 0, "n0 must be non-negative"),
            ('quad_points_per_period', self.quad_points_per_period >= 1, "quad_points_per_period must be at least 1"),
            ('quad_nodes_per_panel', self.quad_nodes_per_panel >= 1, "quad_nodes_per_panel must be at least 1"),
            ('quad_abs_tol', 0 < self.quad_abs_tol < 1, "quad_abs_tol must lie in (0, 1)"),
            ('quad_tail_tol', 0 < self.quad_tail_tol < 1, "quad_tail_tol must lie in (0, 1)"),
            ('quad_max_refinements', self.quad_max_refinements >= 0, "quad_max_refinements must be non-negative"),
            ('quad_probes', self.quad_probes >= 1, "quad_probes must be at least 1"),
            ('quad_chunk', self.quad_chunk >= 1, "quad_chunk must be at least 1"),
            ('solver_corrector_iterations', self.solver_corrector_iterations >= 1,
             "solver_corrector_iterations must be at least 1"),
            ('oracle_modes', self.oracle_modes >= 1, "oracle_modes must be at least 1"),
            ('oracle_max_phase', 0 < self.oracle_max_phase <= 1, "oracle_max_phase must lie in (0, 1]"),
        ]
        for key, ok, message in checks:
            if not ok:
                raise ConfigError(message, key=key)
        # constraints spanning several keys; blamed on the first of them set in the file
        builders = [
            (('t_max', 'dt'), self.grid),
            (tuple(f.name for f in fields(self) if f.name.startswith('quad_')), self.quadrature),
            (('solver_corrector_iterations', 'dt'), self.solver),
            (('oracle_max_phase',), self.oracle),
            (('a0_re', 'a0_im', 'n0', 'a2_re', 'a2_im'), self.oscillator_initial),
            (('omega_max', 'omega_min', 'center', 'g', 'gamma'), self.spectral_density),
        ]
        for keys, build in builders:
            try:
                build()
            except DomainError as exc:
                raise ConfigError(str(exc), key=keys[0], related=keys) from exc

    @property
    def needs_bose_weight(self) -> bool:
        return self.model == 'oscillator' or (
            self.model == 'oracle-compare' and self.compare_observable == 'occupation'
        )

    @property
    def resolved_omega_min(self) -> float:
        if self.omega_min is not None:
            return self.omega_min
        return 0.5 * self.gamma if self.needs_bose_weight else 0.0

    @property
    def resolved_center(self) -> float:
        return self.omega if self.center is None else self.center

    @property
    def a0(self) -> complex:
        return complex(self.a0_re, self.a0_im)

    @property
    def a2(self) -> complex:
        return complex(self.a2_re, self.a2_im)

    def spectral_density(self) -> SpectralDensity:
        omega_max = math.inf if self.omega_max is None else self.omega_max
        return SpectralDensity(self.g, self.gamma, self.resolved_center, self.resolved_omega_min, omega_max)

    def dispersion(self) -> Dispersion:
        return Dispersion(self.c)

    def grid(self) -> TimeGrid:
        return TimeGrid.from_span(self.t_max, self.dt)

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(
            points_per_period=self.quad_points_per_period,
            nodes_per_panel=self.quad_nodes_per_panel,
            abs_tol=self.quad_abs_tol,
            tail_tol=self.quad_tail_tol,
            max_refinements=self.quad_max_refinements,
            probes=self.quad_probes,
            chunk=self.quad_chunk,
        )

    def solver(self) -> SolverConfig:
        return SolverConfig(self.dt, self.solver_corrector_iterations, self.solver_step_halving)

    def oracle(self) -> OracleConfig:
        return OracleConfig(max_phase=self.oracle_max_phase)

    def friedrichs_initial(self) -> FriedrichsInitial:
        return FriedrichsInitial.from_dispersion(self.p, self.beta, self.dispersion())

    def oscillator_initial(self) -> OscillatorInitial:
        return OscillatorInitial(self.a0, self.n0, self.a2)

    def as_manifest(self) -> Dict[str, Any]:
        """Every resolved parameter plus the gamma-scaled combinations."""
        spec = self.spectral_density()
        resolved = asdict(self)
        resolved.update({
            'center': spec.center,
            'omega_min': spec.omega_min,
            'omega_max': spec.upper_edge(self.quadrature()),
            'omega_over_gamma': self.omega / self.gamma,
            'g_over_gamma': self.g / self.gamma,
            'beta_gamma': self.beta * self.gamma,
            'gamma_t_max': self.gamma * self.t_max,
            'gamma_dt': self.gamma * self.dt,
            'partition_Z': partition_restricted(self.dispersion(), self.beta),
            'spectral_peak': spec.peak,
        })
        return resolved


PARSERS: Dict[str, Callable[[str], Any]] = {
    'model': _choice(MODELS),
    'full_line': _parse_bool,
    'compare_observable': _choice(COMPARE_OBSERVABLES),
    'center': _parse_optional_float,
    'omega_min': _parse_optional_float,
    'omega_max': _parse_optional_float,
    'quad_points_per_period': _parse_int,
    'quad_nodes_per_panel': _parse_int,
    'quad_max_refinements': _parse_int,
    'quad_probes': _parse_int,
    'quad_chunk': _parse_int,
    'solver_corrector_iterations': _parse_int,
    'solver_step_halving': _parse_bool,
    'oracle_modes': _parse_int,
    'output': str.strip,
}
for _field in fields(ScenarioConfig):
    PARSERS.setdefault(_field.name, float)


def _binding_line(binding) -> int:
    # the marked text includes any blank lines before the binding
    text = binding.original.string
    return binding.original.line + text[:len(text) - len(text.lstrip())].count('\n')


def parse_config(text: str, path: Optional[str] = None, defaults: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
    values: Dict[str, Any] = dict(defaults or {})
    lines: Dict[str, int] = {}
    for binding in parse_stream(io.StringIO(text)):
        line = _binding_line(binding)
        if binding.error:
            raise ConfigError(f"cannot parse {binding.original.string.strip()!r}", line, path)
        if binding.key is None:
            continue
        key = binding.key.strip().lower()
        if key not in PARSERS:
            raise ConfigError(f"unknown key {key!r}", line, path, key)
        if key in lines:
            raise ConfigError(f"duplicate key {key!r}, first set on line {lines[key]}", line, path, key)
        if binding.value is None:
            raise ConfigError(f"key {key!r} has no value", line, path, key)
        try:
            values[key] = PARSERS[key](binding.value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", line, path, key) from exc
        lines[key] = line

    if 'model' not in lines and 'model' not in values:
        raise ConfigError("missing required key 'model'", None, path, 'model')
    config = ScenarioConfig(**values)
    try:
        config.validate()
    except ConfigError as exc:
        key = next((name for name in exc.related if name in lines), exc.key)
        raise ConfigError(exc.message, lines.get(key), path, key, exc.related) from exc
    return config


def load_config(path: str, defaults: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
    with open(path, encoding='utf-8') as handle:
        return parse_config(handle.read(), path, defaults)


def figure1_preset(g_over_gamma: float, output: Optional[str] = None) -> ScenarioConfig:
    """Omega/gamma = 5, p = 0.3, beta gamma = 0.5, c = 100 gamma, gamma t in [0, 10]."""
    if not g_over_gamma > 0:
        raise DomainError(f"g/gamma must be positive, got {g_over_gamma}")
    return ScenarioConfig(
        model='friedrichs', omega=5.0, gamma=1.0, g=float(g_over_gamma), beta=0.5, p=0.3,
        c=100.0, t_max=10.0, dt=1e-3, output=output,
    )


def with_model(config: ScenarioConfig, model: str) -> ScenarioConfig:
    changed = replace(config, model=model)
    changed.validate()
    return changed
