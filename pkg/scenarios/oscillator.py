from typing import Any, Dict, List

from components.tables import create_oscillator_table
from config import ScenarioConfig
from dynamics import kernel_full_thermal, oscillator_moments

from .base_scenario import BaseScenario, RunReport


class OscillatorScenario(BaseScenario):
    def get_name(self) -> str:
        return "RWA oscillator"

    def get_description(self) -> str:
        return """
        A harmonic mode coupled to a Gaussian thermal bath. First and second
        moments evolve as <a(t)> = x <a(0)>, <a^2(t)> = x^2 <a^2(0)> and
        <a+a>(t) = |x|^2 <a+a(0)> + F(t) with the Bose-weighted kernel.
        """

    def get_parameters(self) -> List[str]:
        return ['omega', 'center', 'gamma', 'g', 'beta', 'omega_min', 'omega_max', 't_max', 'dt',
                'a0_re', 'a0_im', 'n0', 'a2_re', 'a2_im', 'full_line']

    def moments(self, config: ScenarioConfig, report: RunReport):
        x = self.solve_zero_temperature(config, report)
        thermal = kernel_full_thermal(config.spectral_density(), config.beta, config.grid(),
                                      config.quadrature(), full_line=config.full_line)
        report.kernel('full_thermal', thermal)
        series = oscillator_moments(x, thermal, config.oscillator_initial())
        report.manifest.update({
            'occupation_initial': float(series.population[0]),
            'occupation_final': float(series.population[-1]),
        })
        report.step('Moments', f'<a+a>(t_max) = {series.population[-1]:.6g}')
        return series

    def run(self, config: ScenarioConfig) -> Dict[str, Any]:
        report = RunReport()
        report.step('Initialize', f'Omega = {config.omega:g}, g = {config.g:g}, beta = {config.beta:g}, '
                                  f'omega_min = {config.resolved_omega_min:g}')
        series = self.moments(config, report)
        return {
            'result': create_oscillator_table(series),
            'series': series,
            'steps': report.steps,
            'manifest': report.manifest,
            'kernels': report.kernels,
        }
