"""End-to-end tests of the command-line front end."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import yaml

from main import dispatch
from src.runner import GroupoidFlowRunner
from src.utils.errors import ConfigError
from src.utils.run_config import validate_run_config


def write_config(tmp_path: Path, name: str, data: dict) -> str:
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data))
    return str(path)


DAE_CONFIG = {
    'A': [[1, 0], [0, 0]],
    'B': [[0, 0], [0, 1]],
    'b': [0, 't'],
    'x_guess': [1.0, -7.0],
    'N': 3,
}

EXTRACT_CONFIG = {
    'realization': {'kind': 'pair', 'n': 2},
    'constraints': {'matrix': [[-1, 0, 1, 0], [0, 1, 0, 0]], 'rhs': [0, 1]},
}


class TestSubcommands:
    def test_dae_csv(self, tmp_path):
        out = tmp_path / 'dae.csv'
        config = write_config(tmp_path, 'dae.yaml', {**DAE_CONFIG, 'output': str(out)})
        assert dispatch(['dae', '--config', config]) == 0
        text = out.read_text()
        assert text.startswith("# groupoid-flow v1 dae\n")
        frame = pd.read_csv(out, comment='#')
        assert list(frame.columns) == ['k', 't', 'x1', 'x2', 'constraint_residual', 'regular']
        assert frame['x1'].iloc[-1] == pytest.approx(1.0)
        assert frame['x2'].iloc[-1] == pytest.approx(0.3)

    def test_out_flag_overrides_config(self, tmp_path):
        configured = tmp_path / 'configured.csv'
        override = tmp_path / 'override.csv'
        config = write_config(tmp_path, 'dae.yaml', {**DAE_CONFIG, 'output': str(configured)})
        assert dispatch(['dae', '--config', config, '--out', str(override)]) == 0
        assert override.exists()
        assert not configured.exists()

    def test_extract_prints_chain(self, tmp_path, capsys):
        config = write_config(tmp_path, 'extract.yaml', EXTRACT_CONFIG)
        assert dispatch(['extract', '--config', config]) == 0
        assert "stabilized at k=1" in capsys.readouterr().out

    def test_classify_singular_lagrangian(self, tmp_path):
        out = tmp_path / 'classify.csv'
        config = write_config(tmp_path, 'classify.yaml', {
            'lagrangian': {'catalog': 'singular', 'parameters': {'h': 0.1}},
            'points': [[1.0, 0.0, 1.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 2.0, 0.0, 3.0]],
            'depth': 3,
            'seeds': 8,
            'output': str(out),
        })
        assert dispatch(['classify', '--config', config]) == 0
        frame = pd.read_csv(out, comment='#')
        assert list(frame['forward_depth']) == [0, 1, 3]
        assert list(frame['inconclusive']) == [0, 0, 0]

    def test_del_reruns_are_byte_identical(self, tmp_path):
        config = write_config(tmp_path, 'del.yaml', {
            'lagrangian': {'catalog': 'midpoint_oscillator', 'parameters': {'h': 0.1}},
            'initial': [0.0, 0.1],
            'steps': 10,
        })
        first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'
        assert dispatch(['del', '--config', config, '-o', str(first)]) == 0
        assert dispatch(['del', '--config', config, '-o', str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert len(pd.read_csv(first, comment='#')) == 11

    def test_del_reports_momenta_and_residuals(self, tmp_path):
        out = tmp_path / 'del.csv'
        config = write_config(tmp_path, 'del.yaml', {
            'lagrangian': {'catalog': 'midpoint_oscillator', 'parameters': {'h': 0.1}},
            'initial': [0.0, 0.1],
            'steps': 4,
        })
        assert dispatch(['del', '--config', config, '-o', str(out)]) == 0
        frame = pd.read_csv(out, comment='#')
        assert list(frame.columns) == ['k', 'q0', 'q1', 'p0', 'L', 'del_residual']
        assert frame['p0'].iloc[0] == pytest.approx(0.9975)
        assert frame['del_residual'].iloc[:-1].max() < 1e-9
        assert pd.isna(frame['del_residual'].iloc[-1])

    def test_sleigh_stays_on_constraint(self, tmp_path):
        out = tmp_path / 'sleigh.csv'
        config = write_config(tmp_path, 'sleigh.yaml', {
            'params': {'m': 1.0, 'a': 0.5, 'b': 0.0, 'J': 1.0},
            'initial': [0.2, 1.0, 0.10033467208545055],
            'steps': 3,
        })
        assert dispatch(['sleigh', '--config', config, '-o', str(out)]) == 0
        frame = pd.read_csv(out, comment='#')
        assert len(frame) == 4
        assert frame['membership'].max() < 1e-8
        assert pd.isna(frame['nh_del_residual'].iloc[0])
        assert frame['nh_del_residual'].iloc[1:].max() < 1e-9

    def test_flow_rows(self, tmp_path):
        out = tmp_path / 'flow.csv'
        config = write_config(tmp_path, 'flow.yaml', {
            'hamiltonian': '0.5*p^2 + 0.5*q^2',
            't': 0.5,
            'grid': [[1.0, 0.0], [0.0, 1.0]],
        })
        assert dispatch(['flow', '--config', config, '-o', str(out)]) == 0
        frame = pd.read_csv(out, comment='#')
        assert list(frame.columns) == ['q0', 'q1', 'p0', 'p1']
        assert frame['p0'].iloc[1] == pytest.approx(-1.0)

    def test_show_config(self, capsys):
        assert dispatch(['show-config']) == 0
        assert "Configuration is valid" in capsys.readouterr().out


class TestExitCodes:
    def test_unknown_key_is_rejected_before_output(self, tmp_path):
        out = tmp_path / 'dae.csv'
        config = write_config(tmp_path, 'dae.yaml', {**DAE_CONFIG, 'output': str(out), 'colour': 'red'})
        assert dispatch(['dae', '--config', config]) == 2
        assert not out.exists()

    def test_bad_expression(self, tmp_path):
        config = write_config(tmp_path, 'flow.yaml', {
            'hamiltonian': '0.5*p^2 +',
            't': 0.5,
            'grid': [[1.0, 0.0]],
        })
        assert dispatch(['flow', '--config', config]) == 2

    def test_missing_config_file(self, tmp_path):
        assert dispatch(['dae', '--config', str(tmp_path / 'absent.yaml')]) == 2

    def test_unknown_option(self):
        assert dispatch(['dae', '--frobnicate']) == 2

    def test_higher_index_dae(self, tmp_path):
        out = tmp_path / 'dae.csv'
        config = write_config(tmp_path, 'dae.yaml', {
            'A': [[1, 0], [0, 0]],
            'B': [[0, -1], [1, 0]],
            'b': [0, 0],
            'x_guess': [0.0, 1.0],
            'N': 3,
            'output': str(out),
        })
        assert dispatch(['dae', '--config', config]) == 3
        frame = pd.read_csv(out, comment='#')
        assert len(frame) == 1
        assert frame['regular'].iloc[0] == 0

    def test_linalg_failure_is_numerical(self, tmp_path, monkeypatch):
        def singular(self, config):
            raise np.linalg.LinAlgError("Singular matrix")

        monkeypatch.setattr(GroupoidFlowRunner, 'run', singular)
        config = write_config(tmp_path, 'dae.yaml', DAE_CONFIG)
        assert dispatch(['dae', '--config', config]) == 3

    def test_unstabilized_chain(self, tmp_path):
        config = write_config(tmp_path, 'extract.yaml', {
            'realization': {'kind': 'pair', 'n': 2},
            'constraints': {'matrix': [[1, 0, 0, 0], [0, -1, 1, 0]], 'rhs': [0, 0]},
            'max_iter': 1,
        })
        assert dispatch(['extract', '--config', config]) == 4


class TestRunConfigValidation:
    def test_missing_required_key(self):
        with pytest.raises(ConfigError, match="missing"):
            validate_run_config({'A': [[1]], 'B': [[1]], 'b': [0]}, 'dae')

    def test_kind_must_match_subcommand(self):
        with pytest.raises(ConfigError, match="does not match"):
            validate_run_config({**DAE_CONFIG, 'kind': 'sleigh'}, 'dae')

    def test_classify_needs_exactly_one_equation(self):
        with pytest.raises(ConfigError):
            validate_run_config({**EXTRACT_CONFIG, 'points': [[0, 1, 0, 1]],
                                 'lagrangian': {'catalog': 'singular'}}, 'classify')

    def test_tolerance_overrides(self):
        config = validate_run_config({**DAE_CONFIG, 'tolerances': {'newton_tol': 1e-12}}, 'dae')
        assert config.tolerances == {'newton_tol': 1e-12}
        with pytest.raises(ConfigError):
            validate_run_config({**DAE_CONFIG, 'tolerances': {'newton_tol': -1.0}}, 'dae')

    def test_defaults_are_filled_in(self):
        config = validate_run_config(DAE_CONFIG, 'dae')
        assert config.get('h') == 0.1
        assert config.get('annihilator') == 'projector'
        assert config.output is None

    def test_sleigh_initial_needs_three_coordinates(self):
        with pytest.raises(ConfigError):
            validate_run_config({'initial': [0.0, 1.0], 'steps': 2}, 'sleigh')
