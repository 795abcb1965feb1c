"""Run configuration for the command-line front end."""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from parahoric.config.settings import (
    DEFAULT_CONFIG_FILE,
    DEFAULT_Q_VALUES,
    DEFAULT_RMAX,
    OUTPUT_FORMATS,
    color_enabled,
)
from parahoric.utils.logging_config import get_logger
from parahoric.utils.validation import ArgumentError, RangeError, require_prime_power

logger = get_logger(__name__)


@dataclass
class RunConfig:
    """Settings shared by every subcommand."""

    subcommand: str = "check"
    rmin: int = 2
    rmax: int = DEFAULT_RMAX
    q_values: Tuple[int, ...] = field(default_factory=lambda: DEFAULT_Q_VALUES)
    output_format: str = "json"
    fixtures: Optional[str] = None
    jobs: int = 1
    color: bool = True

    def __post_init__(self):
        self.q_values = tuple(self.q_values)
        if self.rmin < 0 or self.rmax < 0:
            raise RangeError(f"weight range must be non-negative: [{self.rmin}, {self.rmax}]")
        if self.rmax < self.rmin:
            raise RangeError(f"empty weight range: rmin={self.rmin} > rmax={self.rmax}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ArgumentError(
                f"format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}"
            )
        if self.jobs < 1:
            raise RangeError(f"jobs must be at least 1, got {self.jobs}")
        for q in self.q_values:
            require_prime_power(q)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["q_values"] = list(self.q_values)
        return data


class ConfigManager:
    """Builds a RunConfig from CLI flags, an optional YAML file and defaults.

    Priority order:
    1. Command-line flags (highest)
    2. YAML configuration file
    3. Dataclass defaults (lowest)
    """

    def __init__(self, config_file: Optional[str] = None):
        self.explicit = config_file is not None
        self.config_file = Path(config_file) if config_file else Path(DEFAULT_CONFIG_FILE)

    def load_file(self) -> Dict[str, Any]:
        if not self.config_file.exists():
            if self.explicit:
                raise ArgumentError(f"config file {self.config_file} does not exist")
            return {}
        try:
            with open(self.config_file, "r") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ArgumentError(f"failed to parse config file {self.config_file}: {e}") from e
        if not isinstance(data, dict):
            raise ArgumentError(f"config file {self.config_file} must contain a mapping")
        logger.info("Loaded configuration file", path=str(self.config_file))
        return data

    def build(self, subcommand: str, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
        known = {f.name for f in fields(RunConfig)}
        file_data = self.load_file()

        config_data: Dict[str, Any] = {"color": color_enabled()}
        unknown = set(file_data) - known
        if unknown:
            logger.warning("Ignoring unknown configuration keys", keys=sorted(unknown))
        config_data.update({k: v for k, v in file_data.items() if k in known})
        config_data.update({k: v for k, v in (overrides or {}).items() if v is not None and k in known})
        config_data["subcommand"] = subcommand

        config = RunConfig(**config_data)
        logger.debug("Configuration resolved", config=config.to_dict())
        return config
