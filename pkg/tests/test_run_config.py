"""Tests for configuration loading."""

import json
from pathlib import Path

import pytest

from src.config import DEFAULT_CONFIG_PATH, RunConfig, build_run_config, load_run_config
from src.errors import ConfigValidationError
from src.exact import ExactMatrix, GaussRational

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    monkeypatch.delenv('STAR_ORDER', raising=False)
    monkeypatch.delenv('STAR_LOG_LEVEL', raising=False)
    monkeypatch.chdir(tmp_path)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestLoading:
    def test_repository_yaml(self):
        config = load_run_config(str(REPO_ROOT / DEFAULT_CONFIG_PATH))
        assert config.nvars == 2
        assert config.lambda_matrix == ExactMatrix([[0, 1], [-1, 0]])
        assert config.quad_a[0, 1] == GaussRational.parse("1/2")
        assert config.twistor_d.shape == (4, 4)
        assert config.validation['jacobi']['enabled']

    def test_repository_toml(self):
        config = load_run_config(str(REPO_ROOT / "config" / "examples" / "symplectic4.toml"))
        assert config.nvars == 4
        assert config.order == 6
        assert config.quad_a[2, 2] == -1

    def test_repository_json(self):
        config = load_run_config(str(REPO_ROOT / "config" / "examples" / "twistor.json"))
        assert config.output_mode == "json"
        assert config.twistor_d[2, 3] == GaussRational(0, 1)
        assert config.quad_a is None

    def test_missing_default_falls_back(self):
        config = load_run_config()
        assert config == RunConfig.default()

    def test_missing_explicit_path(self, tmp_path):
        with pytest.raises(ConfigValidationError):
            load_run_config(str(tmp_path / "absent.yaml"))

    def test_unsupported_suffix(self, tmp_path):
        with pytest.raises(ConfigValidationError):
            load_run_config(write(tmp_path, "config.ini", "[algebra]"))

    def test_malformed_yaml(self, tmp_path):
        with pytest.raises(ConfigValidationError):
            load_run_config(write(tmp_path, "bad.yaml", "algebra: [unclosed"))

    def test_malformed_json(self, tmp_path):
        with pytest.raises(ConfigValidationError):
            load_run_config(write(tmp_path, "bad.json", "{"))

    def test_env_overrides(self, tmp_path, monkeypatch):
        path = write(tmp_path, "run.json", json.dumps({'algebra': {'nvars': 2}}))
        monkeypatch.setenv('STAR_ORDER', '7')
        monkeypatch.setenv('STAR_LOG_LEVEL', 'debug')
        config = load_run_config(path)
        assert config.order == 7
        assert config.logging['level'] == 'DEBUG'

    def test_bad_env_order(self, tmp_path, monkeypatch):
        path = write(tmp_path, "run.json", json.dumps({'algebra': {'nvars': 2}}))
        monkeypatch.setenv('STAR_ORDER', 'many')
        with pytest.raises(ConfigValidationError):
            load_run_config(path)


class TestValidation:
    def test_nvars_only(self):
        config = build_run_config({'algebra': {'nvars': 4}})
        assert config.lambda_matrix[0, 2] == 1
        assert config.order == 4

    @pytest.mark.parametrize("algebra", [
        {},
        {'nvars': 3},
        {'lambda': [["0", "1"], ["1", "0"]]},
        {'lambda': [["0", "1"], ["-1", "0"]], 'nvars': 4},
        {'lambda': [[0.0, 1.0], [-1.0, 0.0]]},
        {'lambda': [["0", "x"], ["-x", "0"]]},
        {'lambda': "identity"},
        {'nvars': 2, 'quad_a': [["1", "2"], ["3", "1"]]},
        {'nvars': 2, 'quad_a': [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]},
        {'nvars': 2, 'twistor_d': [["0", "1"], ["-1", "0"]]},
        {'nvars': 2, 'order': -1},
        {'nvars': 2, 'order': "four"},
        {'nvars': True},
    ])
    def test_rejects(self, algebra):
        with pytest.raises(ConfigValidationError):
            build_run_config({'algebra': algebra})

    def test_rejects_output_mode(self):
        with pytest.raises(ConfigValidationError):
            build_run_config({'algebra': {'nvars': 2}, 'output': {'mode': 'xml'}})

    def test_integer_entries_accepted(self):
        config = build_run_config({'algebra': {'lambda': [[0, 1], [-1, 0]], 'quad_b': [[1, 0], [0, 0]]}})
        assert config.quad_b[0, 0] == 1

    def test_to_dict_reloads(self):
        config = build_run_config({'algebra': {'nvars': 2, 'quad_a': [["0", "1/2"], ["1/2", "0"]]}})
        reloaded = build_run_config(config.to_dict())
        assert reloaded.lambda_matrix == config.lambda_matrix
        assert reloaded.quad_a == config.quad_a
        assert reloaded.quad_b is None
        assert reloaded.order == config.order

class TestTopLevelFields:
    def test_top_level_json(self, tmp_path):
        path = write(tmp_path, "run.json", json.dumps({
            'lambda': [["0", "2"], ["-2", "0"]],
            'quad_a': [["0", "1/2"], ["1/2", "0"]],
            'order': 3,
        }))
        config = load_run_config(path)
        assert config.nvars == 2
        assert config.lambda_matrix[0, 1] == 2
        assert config.quad_a[1, 0] == GaussRational.parse("1/2")
        assert config.order == 3

    def test_top_level_toml(self, tmp_path):
        path = write(tmp_path, "run.toml", 'order = 2\nlambda = [["0", "1"], ["-1", "0"]]\n')
        config = load_run_config(path)
        assert config.order == 2
        assert config.lambda_matrix == ExactMatrix([[0, 1], [-1, 0]])

    def test_top_level_wins_over_section(self):
        config = build_run_config({'order': 5, 'algebra': {'nvars': 2, 'order': 1}})
        assert config.order == 5
        assert config.nvars == 2

    @pytest.mark.parametrize("fields", [
        {'lambda': [["0", "1"], ["1", "0"]]},
        {'nvars': 2, 'quad_b': [["1", "2"], ["3", "1"]]},
        {'nvars': 2, 'order': -3},
    ])
    def test_top_level_rejects(self, fields):
        with pytest.raises(ConfigValidationError):
            build_run_config(fields)

    def test_to_dict_is_top_level(self):
        data = RunConfig.default().to_dict()
        assert 'algebra' not in data
        assert data['lambda'] == [["0", "1"], ["-1", "0"]]
        assert data['quad_a'] == [["0", "1/2"], ["1/2", "0"]]
        assert build_run_config(json.loads(json.dumps(data))).quad_a == RunConfig.default().quad_a
