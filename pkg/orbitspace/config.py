"""Configuration management for orbitspace."""

import copy
import logging
from pathlib import Path
from typing import Any, Dict, List

import yaml

logger = logging.getLogger(__name__)


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    """Manages application configuration from YAML file."""

    DEFAULT_CONFIG = {
        "enumeration": {
            "k_max": 12
        },
        "reduction": {
            "max_coefficient": 2,
            "entry_bound_factor": 4,
            "max_states": 200000
        },
        "oracle": {
            "bound": 6,
            "escalation": [9, 12]
        },
        "output": {
            "format": "text"
        },
        "logging": {
            "level": "INFO"
        }
    }

    def __init__(self, config_path: str = "config.yaml"):
        """Initialize configuration from file or use defaults.

        Args:
            config_path: Path to configuration YAML file
        """
        self.config_path = Path(config_path)
        self._config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from file or return defaults."""
        if not self.config_path.exists():
            return copy.deepcopy(self.DEFAULT_CONFIG)
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                config = yaml.safe_load(f)
            if config is None:
                return copy.deepcopy(self.DEFAULT_CONFIG)
            if not isinstance(config, dict):
                raise yaml.YAMLError(f"top level of {self.config_path} is not a mapping")
            return _merge(self.DEFAULT_CONFIG, config)
        except (yaml.YAMLError, IOError) as e:
            logger.warning(f"Failed to load config file: {e}. Using defaults.")
            return copy.deepcopy(self.DEFAULT_CONFIG)

    @property
    def k_max(self) -> int:
        """Largest alpha enumerated for weighted arcs."""
        return int(self._config.get("enumeration", {}).get("k_max", 12))

    @property
    def max_coefficient(self) -> int:
        """Largest |k| tried by the reduction search."""
        return int(self._config.get("reduction", {}).get("max_coefficient", 2))

    @property
    def entry_bound_factor(self) -> int:
        return int(self._config.get("reduction", {}).get("entry_bound_factor", 4))

    @property
    def max_states(self) -> int:
        return int(self._config.get("reduction", {}).get("max_states", 200000))

    @property
    def reduction_options(self) -> Dict[str, int]:
        """Keyword arguments for the reduction search."""
        return {
            "max_coefficient": self.max_coefficient,
            "entry_bound_factor": self.entry_bound_factor,
            "max_states": self.max_states,
        }

    @property
    def oracle_bound(self) -> int:
        return int(self._config.get("oracle", {}).get("bound", 6))

    @property
    def oracle_escalation(self) -> List[int]:
        """Larger bounds tried when the oracle disagrees with the invariants."""
        return [int(b) for b in self._config.get("oracle", {}).get("escalation", [9, 12])]

    @property
    def output_format(self) -> str:
        return self._config.get("output", {}).get("format", "text")

    @property
    def log_level(self) -> str:
        return str(self._config.get("logging", {}).get("level", "INFO")).upper()

    def reload(self):
        """Reload configuration from file."""
        self._config = self._load_config()
