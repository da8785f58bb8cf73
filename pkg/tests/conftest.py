import math

import pytest

from dynamics import QuadratureConfig, SpectralDensity, TimeGrid


@pytest.fixture
def lorentz():
    return SpectralDensity(g=1.0, gamma=1.0, center=5.0)


@pytest.fixture
def quad():
    return QuadratureConfig()


@pytest.fixture
def coarse_grid():
    return TimeGrid(dt=0.5, steps=9)


def truncated_g0(spec: SpectralDensity, lo: float, hi: float) -> float:
    """Closed-form int_lo^hi J dw / (2 pi) of the Lorentzian."""
    half = 0.5 * spec.gamma
    return spec.g ** 2 / math.pi * (math.atan((hi - spec.center) / half) - math.atan((lo - spec.center) / half))


def write_config(path, **entries):
    lines = ['# generated for a test'] + [f'{key} = {value}' for key, value in entries.items()]
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return str(path)
