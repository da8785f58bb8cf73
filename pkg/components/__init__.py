from .tables import (
    create_population_table, create_oscillator_table, create_comparison_table,
    create_kernel_table, write_table, write_manifest
)

__all__ = [
    'create_population_table', 'create_oscillator_table', 'create_comparison_table',
    'create_kernel_table', 'write_table', 'write_manifest'
]
