import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from config import ScenarioConfig
from dynamics import (
    KernelSamples, Trajectory, golden_rule_rate, kernel_zero_t, solve_amplitude, step_halving_error
)

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    """Steps, manifest entries and kernels gathered while a scenario runs."""

    steps: List[Dict[str, str]] = field(default_factory=list)
    manifest: Dict[str, Any] = field(default_factory=dict)
    kernels: Dict[str, KernelSamples] = field(default_factory=dict)

    def step(self, title: str, description: str):
        self.steps.append({'title': title, 'description': description})
        logger.info("%s: %s", title, description)

    def kernel(self, name: str, samples: KernelSamples):
        self.kernels[name] = samples
        for key, value in samples.describe().items():
            self.manifest[f'kernel_{name}_{key}'] = value


class BaseScenario(ABC):
    """Base class for all scenarios."""

    @abstractmethod
    def run(self, config: ScenarioConfig) -> dict:
        """Run the model; returns 'result' (a table), 'series', 'steps', 'manifest' and 'kernels'."""
        pass

    @abstractmethod
    def get_name(self) -> str:
        """Return the name of the scenario."""
        pass

    @abstractmethod
    def get_description(self) -> str:
        """Return a short description of the scenario."""
        pass

    @abstractmethod
    def get_parameters(self) -> list:
        """Return the config keys the scenario reads."""
        pass

    def solve_zero_temperature(self, config: ScenarioConfig, report: RunReport) -> Trajectory:
        """Zero-temperature kernel and amplitude x(t), with an optional step-halving check."""
        spec = config.spectral_density()
        grid = config.grid()
        quad = config.quadrature()
        solver = config.solver()

        kernel = kernel_zero_t(spec, grid, quad, full_line=config.full_line)
        report.kernel('zero_t', kernel)
        report.step('Zero-temperature kernel',
                    f'G(0) = {kernel.values[0].real:.6g} from {kernel.panels} panels '
                    f'(estimate {kernel.error_estimate:.2e})')

        x = solve_amplitude(config.omega, kernel, grid.steps, solver)
        report.step('Amplitude', f'{grid.steps} steps of dt = {grid.dt:g}, |x(t_max)| = {abs(x.values[-1]):.6g}')
        report.manifest.update({
            'solver_scheme': 'product trapezoid memory, trapezoid predictor-corrector',
            'solver_dt': solver.dt,
            'solver_max_abs_x': float(np.max(np.abs(x.values))),
            'golden_rule_rate': golden_rule_rate(spec, config.omega),
        })

        if solver.step_halving:
            fine_grid = grid.halved()
            fine_kernel = kernel_zero_t(spec, fine_grid, quad, full_line=config.full_line)
            fine = solve_amplitude(config.omega, fine_kernel, fine_grid.steps, solver.halved())
            error = step_halving_error(x, fine)
            report.manifest['solver_step_halving_error'] = error
            report.step('Step halving', f'estimated amplitude error {error:.2e}')
        return x
