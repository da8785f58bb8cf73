class ThermalRWAError(Exception):
    """Base class for every failure raised by the dynamics package."""


class DomainError(ThermalRWAError, ValueError):
    """A physical parameter lies outside the domain where the model is defined."""


class DimensionError(ThermalRWAError, ValueError):
    """Two sampled objects do not share a time grid."""


class KernelKindError(ThermalRWAError, TypeError):
    """A kernel of the wrong kind was passed to an observable."""


class InfraredDivergenceError(DomainError):
    """The Bose-weighted frequency integral diverges at the lower window edge."""


class QuadratureError(ThermalRWAError):
    """Panel refinement could not reach the requested tolerance."""

    def __init__(self, message: str, estimate: float, panels: int):
        super().__init__(f"{message} (error estimate {estimate:.3e} with {panels} panels)")
        self.estimate = estimate
        self.panels = panels


class OracleStabilityError(ThermalRWAError):
    """The fixed RK4 step of the oracle propagator is too large."""

    def __init__(self, message: str, phase: float):
        super().__init__(f"{message} (phase per step {phase:.3f})")
        self.phase = phase
