from .base_scenario import BaseScenario, RunReport
from .friedrichs import FriedrichsScenario
from .oscillator import OscillatorScenario
from .oracle_compare import OracleCompareScenario

__all__ = ['BaseScenario', 'RunReport', 'FriedrichsScenario', 'OscillatorScenario', 'OracleCompareScenario']
