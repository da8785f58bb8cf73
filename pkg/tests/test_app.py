import pandas as pd
import pytest

from app import ALL_SCENARIOS, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, build_parser, main, run_scenario
from config import parse_config
from conftest import write_config

SMALL = dict(t_max=1.0, dt=0.01)


def read_manifest(path):
    entries = {}
    with open(path, encoding='utf-8') as handle:
        for line in handle:
            key, _, value = line.rstrip('\n').partition(' = ')
            entries[key] = value
    return entries


@pytest.fixture
def friedrichs_config(tmp_path):
    return write_config(tmp_path / 'friedrichs.cfg', model='friedrichs', g=0.5,
                        output=tmp_path / 'out' / 'friedrichs.csv', **SMALL)


class TestRun:
    def test_friedrichs_outputs(self, tmp_path, friedrichs_config):
        assert main(['run', friedrichs_config]) == EXIT_OK
        csv = tmp_path / 'out' / 'friedrichs.csv'
        table = pd.read_csv(csv)
        assert list(table.columns) == ['t', 'rho11']
        assert len(table) == 101
        manifest = read_manifest(f'{csv}.manifest')
        assert manifest['model'] == 'friedrichs'
        assert float(manifest['g']) == 0.5
        assert float(manifest['rho11_initial']) == pytest.approx(table['rho11'][0])
        assert 'kernel_zero_t_panels' in manifest
        assert 'solver_scheme' in manifest
        assert float(manifest['kernel_restricted_thermal_window_hi']) == 74.0
        assert int(manifest['quad_probes']) == 16
        assert list(manifest) == sorted(manifest)

    def test_reruns_are_byte_identical(self, tmp_path, friedrichs_config):
        csv = tmp_path / 'out' / 'friedrichs.csv'
        assert main(['run', friedrichs_config]) == EXIT_OK
        first = csv.read_bytes(), (tmp_path / 'out' / 'friedrichs.csv.manifest').read_bytes()
        assert main(['run', friedrichs_config]) == EXIT_OK
        second = csv.read_bytes(), (tmp_path / 'out' / 'friedrichs.csv.manifest').read_bytes()
        assert first == second
        assert b'\r\n' not in first[0]

    def test_oscillator_columns(self, tmp_path):
        path = write_config(tmp_path / 'osc.cfg', model='oscillator', n0=1.0, a0_re=0.5,
                            output=tmp_path / 'osc.csv', **SMALL)
        assert main(['run', path]) == EXIT_OK
        table = pd.read_csv(tmp_path / 'osc.csv')
        assert list(table.columns) == ['t', 'n', 're_a', 'im_a', 're_a2', 'im_a2']
        assert table['n'][0] == pytest.approx(1.0)
        assert table['re_a'][0] == pytest.approx(0.5)
        assert float(read_manifest(tmp_path / 'osc.csv.manifest')['omega_min']) == 0.5

    def test_dump_kernels(self, tmp_path, friedrichs_config):
        assert main(['run', '--dump-kernels', friedrichs_config]) == EXIT_OK
        for name in ('zero_t', 'restricted_thermal'):
            kernel = pd.read_csv(tmp_path / 'out' / f'friedrichs.kernel_{name}.csv')
            assert list(kernel.columns) == ['t', 're', 'im']
            assert len(kernel) == 101

    def test_default_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv('THERMALRWA_OUTPUT_DIR', str(tmp_path / 'results'))
        path = write_config(tmp_path / 'scenario.cfg', model='friedrichs', **SMALL)
        assert main(['run', path]) == EXIT_OK
        assert (tmp_path / 'results' / 'friedrichs.csv').exists()

    def test_parallel_jobs(self, tmp_path):
        paths = [
            write_config(tmp_path / f'{g}.cfg', model='friedrichs', g=g, output=tmp_path / f'{g}.csv', **SMALL)
            for g in (0.5, 1.0)
        ]
        assert main(['run', '--jobs', '2'] + paths) == EXIT_OK
        assert (tmp_path / '0.5.csv').exists()
        assert (tmp_path / '1.0.csv').exists()


class TestFailures:
    def test_invalid_config(self, tmp_path, capsys):
        path = write_config(tmp_path / 'bad.cfg', model='friedrichs', p=1.5)
        assert main(['run', path]) == EXIT_CONFIG
        assert f'{path}:3:' in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(['run', str(tmp_path / 'absent.cfg')]) == EXIT_CONFIG

    def test_infrared_divergence_is_numerical(self, tmp_path, capsys):
        path = write_config(tmp_path / 'osc.cfg', model='oscillator', omega_min=0,
                            output=tmp_path / 'osc.csv', **SMALL)
        assert main(['run', path]) == EXIT_NUMERICAL
        assert 'InfraredDivergenceError' in capsys.readouterr().err
        assert not (tmp_path / 'osc.csv').exists()

    def test_worst_exit_code_wins(self, tmp_path, friedrichs_config):
        bad = write_config(tmp_path / 'bad.cfg', model='friedrichs', bogus=1)
        assert main(['run', friedrichs_config, bad]) == EXIT_CONFIG

    def test_bad_preset_coupling(self, tmp_path, capsys):
        assert main(['preset', 'figure1', '--g', '-1', '--out', str(tmp_path / 'x.csv')]) == EXIT_CONFIG
        assert 'g/gamma' in capsys.readouterr().err


class TestCompare:
    def test_population_comparison(self, tmp_path):
        path = write_config(tmp_path / 'cmp.cfg', model='friedrichs', oracle_modes=100, omega_max=20,
                            output=tmp_path / 'cmp.csv', **SMALL)
        assert main(['compare', path]) == EXIT_OK
        table = pd.read_csv(tmp_path / 'cmp.csv')
        assert list(table.columns) == ['t', 'rho11_volterra', 'rho11_oracle', 'abs_diff']
        manifest = read_manifest(tmp_path / 'cmp.csv.manifest')
        assert manifest['model'] == 'oracle-compare'
        assert int(manifest['oracle_modes']) == 100
        assert int(manifest['oracle_rk4_substeps']) >= 1
        assert float(manifest['max_abs_diff']) == pytest.approx(table['abs_diff'].max(), rel=1e-6)
        assert float(manifest['max_abs_diff']) < 1e-2

    def test_occupation_comparison(self, tmp_path):
        config = parse_config(
            f'model = oracle-compare\ncompare_observable = occupation\noracle_modes = 100\nomega_max = 20\n'
            f't_max = 1\ndt = 0.01\nn0 = 1\noutput = {tmp_path / "occ.csv"}\n'
        )
        written = run_scenario(config)
        table = pd.read_csv(written['result'])
        assert list(table.columns) == ['t', 'n_volterra', 'n_oracle', 'abs_diff']
        assert table['abs_diff'].max() < 1e-2


class TestRegistry:
    def test_models_are_registered(self):
        assert set(ALL_SCENARIOS) == {'friedrichs', 'oscillator', 'oracle-compare'}
        for scenario in ALL_SCENARIOS.values():
            assert scenario.get_name()
            assert scenario.get_description().strip()
            assert 'omega' in scenario.get_parameters()

    def test_parser_requires_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
