import os
from typing import Any, Dict

import numpy as np
import pandas as pd

from dynamics import KernelSamples, ObservableSeries

FLOAT_FORMAT = '%.12e'


def create_population_table(series: ObservableSeries) -> pd.DataFrame:
    """Columns t, rho11."""
    return pd.DataFrame({'t': series.times, 'rho11': series.population})


def create_oscillator_table(series: ObservableSeries) -> pd.DataFrame:
    """Columns t, n and the re_/im_ parts of <a> and <a^2>."""
    mean_a = np.zeros(len(series), dtype=complex) if series.mean_a is None else series.mean_a
    mean_a2 = np.zeros(len(series), dtype=complex) if series.mean_a2 is None else series.mean_a2
    return pd.DataFrame({
        't': series.times,
        'n': series.population,
        're_a': mean_a.real,
        'im_a': mean_a.imag,
        're_a2': mean_a2.real,
        'im_a2': mean_a2.imag,
    })


def create_comparison_table(volterra: ObservableSeries, oracle: ObservableSeries, label: str) -> pd.DataFrame:
    """Side-by-side columns ``<label>_volterra``, ``<label>_oracle`` and abs_diff."""
    return pd.DataFrame({
        't': volterra.times,
        f'{label}_volterra': volterra.population,
        f'{label}_oracle': oracle.population,
        'abs_diff': np.abs(volterra.population - oracle.population),
    })


def create_kernel_table(kernel: KernelSamples) -> pd.DataFrame:
    return pd.DataFrame({'t': kernel.times, 're': kernel.values.real, 'im': kernel.values.imag})


def _ensure_parent(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def write_table(frame: pd.DataFrame, path: str) -> str:
    """Header row, fixed float format, LF line endings."""
    _ensure_parent(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return path


def format_value(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j"
    return str(value)


def write_manifest(entries: Dict[str, Any], path: str) -> str:
    """One ``key = value`` line per entry, sorted by key."""
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        for key in sorted(entries):
            handle.write(f"{key} = {format_value(entries[key])}\n")
    return path
