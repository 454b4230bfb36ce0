"""
Configuration Management
Handles run configuration: caps, oracle budgets, tolerances and seeds.
"""

import json
import logging
import os
import platform
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

SEED_ENV_VAR = "PSEUDOGRAPH_SEED"


@dataclass
class RunConfig:
    """Run configuration structure, embedded in every JSON artifact."""

    # Invocation
    subcommand: Optional[str] = None
    graph_source: Optional[str] = None  # builder spec or edge-list path
    builder_params: Dict[str, Any] = None
    seed: int = 0
    threads: int = 1
    output_paths: Dict[str, str] = None

    # Caps
    dense_cap: int = 4096
    codegree_table_cap: int = 4096
    mixing_exhaustive_max_n: int = 12
    disc_exhaustive_max_n: int = 14
    jumbled_exhaustive_max_n: int = 14
    sample_budget: int = 20000

    # Oracle budgets (search nodes)
    alpha_budget: int = 2_000_000
    chi_budget: int = 2_000_000
    hamilton_budget: int = 5_000_000
    turan_budget: int = 200_000
    maxcut_exact_max_n: int = 24
    oracle_max_n: int = 40

    # Tolerances
    solver_tolerance: float = 1e-8
    extremal_tolerance: float = 1e-10
    audit_tolerance: float = 1e-6
    multiplicity_tolerance: float = 1e-6

    # Empirical tolerances for Monte Carlo checks
    giant_fraction_tolerance: float = 0.04
    mst_relative_tolerance: float = 0.10
    window_epsilon: float = 0.25

    # Output
    float_digits: int = 12

    def __post_init__(self):
        """Initialize default values for mutable fields."""
        if self.builder_params is None:
            self.builder_params = {}
        if self.output_paths is None:
            self.output_paths = {}

    def to_dict(self) -> Dict[str, Any]:
        """Serialize for provenance blocks."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Build a config from a dictionary, ignoring unknown keys."""
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})


class ConfigManager:
    """Manages the persistent run configuration."""

    def __init__(self, config_file: Optional[Path] = None, persist: bool = True):
        self.logger = logging.getLogger(__name__)
        self.config: RunConfig = RunConfig()
        self._persist = persist
        self._config_file = (
            Path(config_file) if config_file is not None else self._get_config_file_path()
        )
        self._load_config()

    def _get_config_file_path(self) -> Path:
        """Get the configuration file path based on the platform."""
        system = platform.system().lower()

        if system == "windows":
            config_dir = Path.home() / "AppData" / "Roaming" / "Pseudograph"
        elif system == "darwin":  # macOS
            config_dir = Path.home() / "Library" / "Application Support" / "Pseudograph"
        else:  # Linux and others
            config_dir = Path.home() / ".config" / "pseudograph"

        return config_dir / "config.json"

    def _load_config(self):
        """Load configuration from file."""
        try:
            if self._config_file.exists():
                with open(self._config_file, "r", encoding="utf-8") as f:
                    config_data = json.load(f)

                for key, value in config_data.items():
                    if hasattr(self.config, key):
                        setattr(self.config, key, value)
                    else:
                        self.logger.warning(f"Unknown configuration key: {key}")

                self.logger.debug(f"Configuration loaded from {self._config_file}")
            else:
                self.logger.debug("No existing configuration found, using defaults")

        except Exception as e:
            self.logger.error(f"Failed to load configuration: {e}")
            self.logger.info("Using default configuration")

        self._apply_environment()

    def _apply_environment(self):
        """Apply the seed fallback from the environment."""
        raw_seed = os.environ.get(SEED_ENV_VAR)
        if raw_seed is None:
            return
        try:
            self.config.seed = int(raw_seed, 0)
            self.logger.debug(f"Seed taken from {SEED_ENV_VAR}: {self.config.seed}")
        except ValueError:
            self.logger.warning(f"Ignoring non-integer {SEED_ENV_VAR}={raw_seed!r}")

    def save_config(self):
        """Save current configuration to file."""
        if not self._persist:
            return
        try:
            self._config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self._config_file, "w", encoding="utf-8") as f:
                json.dump(asdict(self.config), f, indent=2, sort_keys=True)

            self.logger.info(f"Configuration saved to {self._config_file}")

        except Exception as e:
            self.logger.error(f"Failed to save configuration: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        return getattr(self.config, key, default)

    def set(self, key: str, value: Any, save: bool = False):
        """Set a configuration value."""
        if hasattr(self.config, key):
            setattr(self.config, key, value)
            if save:
                self.save_config()
            self.logger.debug(f"Configuration updated: {key} = {value}")
        else:
            self.logger.warning(f"Unknown configuration key: {key}")

    def update(self, updates: Dict[str, Any], save: bool = False):
        """Update multiple configuration values; None values are skipped."""
        for key, value in updates.items():
            if value is None:
                continue
            if hasattr(self.config, key):
                setattr(self.config, key, value)
            else:
                self.logger.warning(f"Unknown configuration key: {key}")

        if save:
            self.save_config()

    def reset_to_defaults(self):
        """Reset configuration to default values."""
        self.config = RunConfig()
        self.save_config()
        self.logger.info("Configuration reset to defaults")

    @property
    def config_file_path(self) -> Path:
        """Get the configuration file path."""
        return self._config_file
