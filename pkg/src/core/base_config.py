"""YAML-backed settings with defaults and dot-notation access"""

import copy
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger("strchc")


def _merge(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Nested dict merge; values from `overrides` win"""
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class BaseConfig(ABC):
    """Settings file layered over built-in defaults.

    A missing, empty or unreadable file falls back to the defaults; keys
    missing from the file keep their default values.
    """

    def __init__(self, config_path: str, config_name: str):
        self.config_path = Path(config_path)
        self.config_name = config_name
        self._config = self._load_config()
        logger.debug(f"Loaded {config_name} configuration")

    def _load_config(self) -> Dict[str, Any]:
        defaults = self._get_default_config()
        if not self.config_path.exists():
            logger.warning(f"Config file {self.config_path} not found. Using default {self.config_name} settings.")
            return defaults

        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"Error loading {self.config_name} config from {self.config_path}: {e}. Using defaults.")
            return defaults

        if loaded is None:
            logger.warning(f"Empty config file {self.config_path}. Using defaults.")
            return defaults
        if not isinstance(loaded, dict):
            logger.error(f"{self.config_path} does not hold a mapping. Using defaults.")
            return defaults
        return _merge(defaults, loaded)

    @abstractmethod
    def _get_default_config(self) -> Dict[str, Any]:
        pass

    def get(self, key_path: str, default: Any = None) -> Any:
        """Value at a dotted path such as 'learner.max_states'"""
        value = self._config
        try:
            for key in key_path.split("."):
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def update(self, key_path: str, value: Any) -> None:
        keys = key_path.split(".")
        section = self._config
        for key in keys[:-1]:
            section = section.setdefault(key, {})
        section[keys[-1]] = value
        logger.debug(f"Updated {self.config_name} config: {key_path} = {value}")

    def validate(self) -> bool:
        return True

    def save(self, output_path: Optional[str] = None) -> bool:
        save_path = Path(output_path) if output_path else self.config_path
        try:
            save_path.parent.mkdir(parents=True, exist_ok=True)
            with open(save_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(self._config, f, default_flow_style=False, indent=2, sort_keys=False)
        except OSError as e:
            logger.error(f"Failed to save {self.config_name} config to {save_path}: {e}")
            return False
        logger.info(f"Saved {self.config_name} configuration to {save_path}")
        return True

    def reload(self) -> bool:
        """Re-read the file; the previous settings are restored if validation fails"""
        previous = self._config
        self._config = self._load_config()
        if self.validate():
            logger.info(f"Reloaded {self.config_name} configuration")
            return True
        logger.error(f"Validation failed after reloading {self.config_name}")
        self._config = previous
        return False

    def to_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self._config)

    def __str__(self) -> str:
        return f"{self.config_name}Config(path={self.config_path})"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(config_path='{self.config_path}', config_name='{self.config_name}')"
