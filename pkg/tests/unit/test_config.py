"""Tests for configuration management."""

import json

import pytest

from src.utils.config import SEED_ENV_VAR, ConfigManager, RunConfig


@pytest.fixture
def config_manager(tmp_path):
    """ConfigManager backed by a temporary file."""
    return ConfigManager(tmp_path / "config.json")


def test_config_manager_initialization(config_manager):
    """Test ConfigManager initializes with defaults."""
    assert config_manager.get("seed") == 0
    assert config_manager.get("threads") == 1
    assert config_manager.get("audit_tolerance") == 1e-6
    assert config_manager.get("builder_params") == {}


def test_config_set_and_get(config_manager):
    """Test setting and getting configuration values."""
    config_manager.set("sample_budget", 500)
    assert config_manager.get("sample_budget") == 500


def test_config_unknown_key_is_ignored(config_manager):
    """Test that unknown keys are not added to the configuration."""
    config_manager.set("theme", "dark")
    assert config_manager.get("theme") is None
    assert config_manager.get("theme", "default") == "default"


def test_config_update_skips_none(config_manager):
    """Test that update() leaves fields alone for None values."""
    config_manager.update({"seed": 7, "threads": None})
    assert config_manager.get("seed") == 7
    assert config_manager.get("threads") == 1


def test_config_persistence(tmp_path):
    """Test configuration persists to file."""
    path = tmp_path / "nested" / "config.json"
    config1 = ConfigManager(path)
    config1.set("oracle_max_n", 30, save=True)

    config2 = ConfigManager(path)
    assert config2.get("oracle_max_n") == 30
    assert json.loads(path.read_text(encoding="utf-8"))["oracle_max_n"] == 30


def test_config_without_persistence(tmp_path):
    """Test that persist=False never writes the file."""
    path = tmp_path / "config.json"
    config = ConfigManager(path, persist=False)
    config.set("seed", 3, save=True)
    assert not path.exists()


def test_config_corrupt_file_uses_defaults(tmp_path):
    """Test that an unreadable file falls back to defaults."""
    path = tmp_path / "config.json"
    path.write_text("{not json", encoding="utf-8")
    assert ConfigManager(path).get("dense_cap") == 4096


def test_config_reset(config_manager):
    """Test resetting configuration to defaults."""
    config_manager.set("dense_cap", 10)
    config_manager.reset_to_defaults()
    assert config_manager.get("dense_cap") == 4096


def test_seed_from_environment(tmp_path, monkeypatch):
    """Test the seed fallback from the environment."""
    monkeypatch.setenv(SEED_ENV_VAR, "0x10")
    assert ConfigManager(tmp_path / "config.json").get("seed") == 16


def test_bad_seed_in_environment(tmp_path, monkeypatch):
    """Test that a non-integer seed in the environment is ignored."""
    monkeypatch.setenv(SEED_ENV_VAR, "abc")
    assert ConfigManager(tmp_path / "config.json").get("seed") == 0


def test_default_path_is_under_home(tmp_path, monkeypatch):
    """Test the platform configuration path."""
    monkeypatch.setattr("src.utils.config.Path.home", lambda: tmp_path)
    assert ConfigManager(persist=False).config_file_path.is_relative_to(tmp_path)


def test_run_config_round_trip():
    """Test that from_dict ignores unknown keys and restores known ones."""
    config = RunConfig(seed=5, builder_params={"q": 13})
    data = config.to_dict()
    data["unknown"] = 1
    restored = RunConfig.from_dict(data)
    assert restored == config
    assert RunConfig().output_paths == {}
