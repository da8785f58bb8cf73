import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional

from components.tables import create_kernel_table, write_manifest, write_table
from config import ConfigError, ScenarioConfig, figure1_preset, load_config, with_model
from dynamics import DomainError, ThermalRWAError
from scenarios import FriedrichsScenario, OracleCompareScenario, OscillatorScenario
from settings import Settings, configure_logging

logger = logging.getLogger('thermalrwa')

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# Scenarios - organized by category
SCENARIOS = {
    'models': {
        'friedrichs': FriedrichsScenario(),
        'oscillator': OscillatorScenario(),
    },
    'verification': {
        'oracle-compare': OracleCompareScenario(),
    },
}

# Flatten for easy access
ALL_SCENARIOS = {}
for category in SCENARIOS.values():
    ALL_SCENARIOS.update(category)

PRESETS = {
    'figure1': figure1_preset,
}


def run_scenario(config: ScenarioConfig, settings: Optional[Settings] = None,
                 dump_kernels: bool = False) -> Dict[str, str]:
    """Run one scenario and write its CSV and manifest; returns the written paths."""
    settings = settings or Settings()
    scenario = ALL_SCENARIOS[config.model]
    logger.info("running %s", scenario.get_name())
    outcome = scenario.run(config)

    csv_path = config.output or settings.default_output(config.model)
    manifest = config.as_manifest()
    manifest.update(outcome['manifest'])
    manifest['output'] = csv_path
    manifest['scenario'] = scenario.get_name()

    written = {'result': write_table(outcome['result'], csv_path)}
    written['manifest'] = write_manifest(manifest, f"{csv_path}.manifest")
    if dump_kernels:
        stem, _ = os.path.splitext(csv_path)
        for name, kernel in outcome['kernels'].items():
            written[f'kernel_{name}'] = write_table(create_kernel_table(kernel), f"{stem}.kernel_{name}.csv")
    for path in written.values():
        logger.info("wrote %s", path)
    return written


def _report_failure(source: str, exc: Exception) -> int:
    if isinstance(exc, ConfigError):
        if exc.path is None:
            exc.path = source
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    if isinstance(exc, OSError):
        print(f"{source}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logger.error("%s: numerical failure: %s", source, exc)
    print(f"{source}: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_NUMERICAL


def run_config_file(path: str, settings: Settings, dump_kernels: bool = False,
                    model: Optional[str] = None, log_level: Optional[str] = None) -> int:
    """Load, run and write one scenario file; returns its exit code."""
    if log_level:
        configure_logging(log_level)
    try:
        config = load_config(path, settings.config_defaults())
        if model is not None:
            config = with_model(config, model)
        run_scenario(config, settings, dump_kernels)
    except (ThermalRWAError, OSError) as exc:
        return _report_failure(path, exc)
    return EXIT_OK


def _run_many(paths: List[str], settings: Settings, dump_kernels: bool, jobs: int,
              log_level: Optional[str]) -> int:
    if jobs <= 1 or len(paths) == 1:
        codes = [run_config_file(path, settings, dump_kernels) for path in paths]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_config_file, path, settings, dump_kernels, None, log_level)
                       for path in paths]
            codes = [future.result() for future in futures]
    return max(codes)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='thermalrwa',
        description='Finite-temperature non-Markovian dynamics of the Friedrichs model and the RWA oscillator.',
    )
    parser.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='run one or more scenario files')
    run.add_argument('configs', nargs='+')
    run.add_argument('--jobs', type=int, default=1, help='scenario files run in parallel processes')
    run.add_argument('--dump-kernels', action='store_true', help='also write every kernel as t, re, im CSV')

    preset = commands.add_parser('preset', help='run a built-in parameter set')
    preset.add_argument('name', choices=sorted(PRESETS))
    preset.add_argument('--g', type=float, required=True, help='coupling in units of gamma')
    preset.add_argument('--out', required=True, help='result CSV; the manifest goes to <out>.manifest')
    preset.add_argument('--dump-kernels', action='store_true')

    compare = commands.add_parser('compare', help='run a scenario file against the finite-mode oracle')
    compare.add_argument('config')
    compare.add_argument('--dump-kernels', action='store_true')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = Settings()
    configure_logging(args.log_level, settings)

    if args.command == 'run':
        return _run_many(args.configs, settings, args.dump_kernels, args.jobs, args.log_level)
    if args.command == 'compare':
        return run_config_file(args.config, settings, args.dump_kernels, model='oracle-compare')

    try:
        config = PRESETS[args.name](args.g, output=args.out)
    except DomainError as exc:
        print(f"preset {args.name}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        run_scenario(config, settings, args.dump_kernels)
    except (ThermalRWAError, OSError) as exc:
        return _report_failure(f"preset {args.name}", exc)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
