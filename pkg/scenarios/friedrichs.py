from typing import Any, Dict, List

from components.tables import create_population_table
from config import ScenarioConfig
from dynamics import excited_population, kernel_restricted_thermal, restricted_state_trace

from .base_scenario import BaseScenario, RunReport


class FriedrichsScenario(BaseScenario):
    def get_name(self) -> str:
        return "Finite-temperature Friedrichs model"

    def get_description(self) -> str:
        return """
        A two-level system in the one- and zero-particle restriction of a thermal
        bath. The excited-state population is

            rho11(t) = (p |x(t)|^2 + (1 - p) F(t)) / Z

        where x solves the zero-temperature amplitude equation and F injects
        excitation through the restricted thermal kernel G(t - i beta).
        """

    def get_parameters(self) -> List[str]:
        return ['omega', 'center', 'gamma', 'g', 'beta', 'p', 'c', 'omega_min', 'omega_max',
                't_max', 'dt', 'full_line']

    def populations(self, config: ScenarioConfig, report: RunReport):
        x = self.solve_zero_temperature(config, report)
        thermal = kernel_restricted_thermal(config.spectral_density(), config.beta, config.grid(),
                                            config.quadrature(), full_line=config.full_line)
        report.kernel('restricted_thermal', thermal)
        init = config.friedrichs_initial()
        series = excited_population(x, thermal, init)
        report.manifest.update({
            'initial_trace': restricted_state_trace(config.dispersion(), config.beta, config.p),
            'initial_ground_weight': init.ground_weight,
            'rho11_initial': float(series.population[0]),
            'rho11_final': float(series.population[-1]),
        })
        report.step('Population', f'rho11(0) = {series.population[0]:.6g}, '
                                  f'rho11(t_max) = {series.population[-1]:.6g}')
        return series

    def run(self, config: ScenarioConfig) -> Dict[str, Any]:
        report = RunReport()
        report.step('Initialize', f'Omega = {config.omega:g}, g = {config.g:g}, beta = {config.beta:g}, '
                                  f'p = {config.p:g}, Z = {config.friedrichs_initial().Z:.8g}')
        series = self.populations(config, report)
        return {
            'result': create_population_table(series),
            'series': series,
            'steps': report.steps,
            'manifest': report.manifest,
            'kernels': report.kernels,
        }
