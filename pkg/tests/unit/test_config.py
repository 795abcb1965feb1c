import pytest

from parahoric.config.config_manager import ConfigManager, RunConfig
from parahoric.config.settings import DEFAULT_Q_VALUES, color_enabled, precision_for
from parahoric.utils.validation import ArgumentError, RangeError


def test_run_config_defaults():
    config = RunConfig()
    assert config.q_values == DEFAULT_Q_VALUES
    assert config.output_format == "json"
    assert config.to_dict()["q_values"] == list(DEFAULT_Q_VALUES)


@pytest.mark.parametrize(
    "kwargs,error",
    [
        ({"output_format": "xml"}, ArgumentError),
        ({"rmin": 20, "rmax": 10}, RangeError),
        ({"rmax": -1}, RangeError),
        ({"q_values": (2, 6)}, RangeError),
        ({"jobs": 0}, RangeError),
    ],
)
def test_run_config_validation(kwargs, error):
    with pytest.raises(error):
        RunConfig(**kwargs)


def test_config_file_and_overrides(config_file):
    manager = ConfigManager(str(config_file))
    config = manager.build("check", {"rmax": 20, "jobs": None})
    assert config.subcommand == "check"
    assert config.rmax == 20
    assert config.q_values == (2, 3)
    assert config.output_format == "tsv"
    assert config.jobs == 1


def test_unknown_config_keys_are_ignored(tmp_path):
    path = tmp_path / "parahoric.yaml"
    path.write_text("rmax: 16\nverbose: true\n", encoding="utf-8")
    assert ConfigManager(str(path)).build("dict").rmax == 16


def test_missing_explicit_config_file(tmp_path):
    with pytest.raises(ArgumentError):
        ConfigManager(str(tmp_path / "absent.yaml")).build("check")


def test_default_config_file_is_optional(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert ConfigManager().build("check").rmax == RunConfig().rmax


@pytest.mark.parametrize("content", ["- 1\n- 2\n", "rmax: [unclosed\n"])
def test_malformed_config_file(tmp_path, content):
    path = tmp_path / "bad.yaml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ArgumentError):
        ConfigManager(str(path)).build("check")


def test_color_toggle(monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.setenv("PARAHORIC_COLOR", "1")
    assert color_enabled()
    monkeypatch.setenv("NO_COLOR", "1")
    assert not color_enabled()
    monkeypatch.delenv("NO_COLOR")
    monkeypatch.setenv("PARAHORIC_COLOR", "0")
    assert not color_enabled()


def test_precision_for():
    assert precision_for(0) == 10
    assert precision_for(5) == 20
