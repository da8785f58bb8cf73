from typing import Any, Dict, List

import numpy as np

from components.tables import create_comparison_table
from config import ScenarioConfig
from dynamics import (
    discretize_bath, oracle_oscillator_moments, oracle_population, recurrence_time, rk4_substeps
)

from .base_scenario import BaseScenario, RunReport
from .friedrichs import FriedrichsScenario
from .oscillator import OscillatorScenario


class OracleCompareScenario(BaseScenario):
    def get_name(self) -> str:
        return "Volterra pipeline vs finite-mode oracle"

    def get_description(self) -> str:
        return """
        Runs the memory-kernel pipeline and a brute-force propagation of M
        discretised bath modes over the same frequency window, and reports the
        pointwise difference of rho11 (compare_observable = population) or of
        <a+a> (compare_observable = occupation).
        """

    def get_parameters(self) -> List[str]:
        return ['compare_observable', 'oracle_modes', 'oracle_max_phase'] + sorted(
            set(FriedrichsScenario().get_parameters()) | set(OscillatorScenario().get_parameters())
        )

    def run(self, config: ScenarioConfig) -> Dict[str, Any]:
        report = RunReport()
        spec = config.spectral_density()
        grid = config.grid()
        bath = discretize_bath(spec, config.oracle_modes, spec.window(config.quadrature()))
        report.step('Discretize bath', f'{bath.count} modes on [{bath.window[0]:g}, {bath.window[1]:g}], '
                                       f'recurrence time {recurrence_time(bath):.4g}')

        if config.compare_observable == 'population':
            label = 'rho11'
            volterra = FriedrichsScenario().populations(config, report)
            init = config.friedrichs_initial()
            oracle = oracle_population(bath, config.omega, config.beta, init.p, init.Z, grid, config.oracle())
        else:
            label = 'n'
            volterra = OscillatorScenario().moments(config, report)
            oracle = oracle_oscillator_moments(bath, config.omega, config.beta, config.oscillator_initial(),
                                               grid, config.oracle())

        table = create_comparison_table(volterra, oracle, label)
        max_diff = float(np.max(table['abs_diff']))
        report.manifest.update({
            'oracle_modes': bath.count,
            'oracle_spacing': bath.spacing,
            'oracle_recurrence_time': recurrence_time(bath),
            'oracle_rk4_substeps': rk4_substeps(bath, config.omega, grid.dt, config.oracle()),
            'oracle_total_weight': bath.total_weight,
            'max_abs_diff': max_diff,
        })
        report.step('Compare', f'max |{label} volterra - oracle| = {max_diff:.3e}')
        return {
            'result': table,
            'series': volterra,
            'steps': report.steps,
            'manifest': report.manifest,
            'kernels': report.kernels,
        }
