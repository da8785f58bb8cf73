from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid t_n = n * dt for n = 0..steps."""

    dt: float
    steps: int

    def __post_init__(self):
        if not self.dt > 0:
            raise DomainError(f"time step must be positive, got {self.dt}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise DomainError(f"grid needs at least one step, got {self.steps}")
        object.__setattr__(self, 'steps', int(self.steps))

    @classmethod
    def from_span(cls, t_max: float, dt: float) -> 'TimeGrid':
        steps = t_max / dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise DomainError(f"t_max = {t_max} is not an integer number of steps dt = {dt}")
        return cls(dt=dt, steps=int(round(steps)))

    @property
    def size(self) -> int:
        return self.steps + 1

    @property
    def t_max(self) -> float:
        return self.steps * self.dt

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.size) * self.dt

    def halved(self) -> 'TimeGrid':
        return TimeGrid(dt=self.dt / 2, steps=2 * self.steps)


def check_step(dt_a: float, dt_b: float, what: str = "samples"):
    if not np.isclose(dt_a, dt_b, rtol=1e-12, atol=0.0):
        raise DimensionError(f"{what} use time step {dt_a}, expected {dt_b}")


def check_length(available: int, required: int, what: str = "samples"):
    if available < required:
        raise DimensionError(f"{what} hold {available} points, need {required}")


def frozen(values, dtype=complex) -> np.ndarray:
    """Copy into a read-only array."""
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array
