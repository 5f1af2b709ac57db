"""
Configuration module for OTE-MTL
"""
import json
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional

from otemtl.core.errors import ConfigError

VARIANTS = ("biaffine", "concat", "collapsed")
L2_MODES = ("squared", "norm")
SELECTION_METRICS = ("f1", "loss")
LOG_LEVELS = {
    "error": "ERROR",
    "warn": "WARNING",
    "warning": "WARNING",
    "info": "INFO",
    "debug": "DEBUG",
}


@dataclass
class ModelConfig:
    """Hyperparameters of the network and of its optimisation."""
    d_e: int = 300
    d_h: int = 300
    d_r: int = 100
    alpha: float = 1.0
    gamma: float = 1e-5
    dropout_rate: float = 0.5
    learning_rate: float = 1e-3
    batch_size: int = 32
    patience: int = 5
    max_epochs: int = 100
    variant: str = "biaffine"
    l2_mode: str = "squared"
    freeze_embeddings: bool = False
    selection_metric: str = "f1"
    init_range: float = 0.1
    min_pivot_prob: Optional[float] = None

    def validate(self) -> "ModelConfig":
        """Raise ConfigError if a field is out of range"""
        for name in ("d_e", "d_h", "d_r", "batch_size", "max_epochs"):
            if getattr(self, name) < 1:
                raise ConfigError(f"model.{name} must be >= 1, got {getattr(self, name)}")
        if self.patience < 1:
            raise ConfigError(f"model.patience must be >= 1, got {self.patience}")
        if self.alpha < 0 or self.gamma < 0:
            raise ConfigError("model.alpha and model.gamma must be non-negative")
        if not 0 <= self.dropout_rate < 1:
            raise ConfigError(f"model.dropout_rate must lie in [0, 1), got {self.dropout_rate}")
        if self.learning_rate <= 0:
            raise ConfigError(f"model.learning_rate must be positive, got {self.learning_rate}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"model.variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.l2_mode not in L2_MODES:
            raise ConfigError(f"model.l2_mode must be one of {L2_MODES}, got {self.l2_mode!r}")
        if self.selection_metric not in SELECTION_METRICS:
            raise ConfigError(
                f"model.selection_metric must be one of {SELECTION_METRICS}, "
                f"got {self.selection_metric!r}")
        if self.init_range <= 0:
            raise ConfigError("model.init_range must be positive")
        if self.min_pivot_prob is not None and not 0 <= self.min_pivot_prob <= 1:
            raise ConfigError("model.min_pivot_prob must lie in [0, 1]")
        return self


# The network code refers to the model section by this name
Hyperparams = ModelConfig


@dataclass
class DataConfig:
    train: Optional[str] = None
    val: Optional[str] = None
    test: Optional[str] = None
    embeddings: Optional[str] = None
    strict: bool = False
    min_count: int = 1


@dataclass
class TrainingConfig:
    seeds: List[int] = field(default_factory=lambda: list(range(10)))
    jobs: int = 1


@dataclass
class OutputConfig:
    out_dir: str = "runs"
    checkpoint: Optional[str] = None
    html_report: bool = False


@dataclass
class LoggingConfig:
    log_level: str = "info"
    log_file: Optional[str] = None
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    show_progress: bool = True


@dataclass
class Config:
    model: ModelConfig = field(default_factory=ModelConfig)
    data: DataConfig = field(default_factory=DataConfig)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    def to_dict(self) -> Dict[str, Any]:
        """Return the resolved configuration as plain JSON data"""
        return asdict(self)

    def to_file(self, config_file: str):
        """Save configuration to file"""
        with open(config_file, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=4, sort_keys=True)

    def update(self, data: Dict[str, Any]) -> "Config":
        """Overlay a (possibly partial) config document onto this config"""
        if not isinstance(data, dict):
            raise ConfigError("configuration document must be a JSON object")
        for section_name, values in data.items():
            section = getattr(self, section_name, None)
            if section is None or section_name not in _SECTIONS:
                raise ConfigError(f"unknown configuration section: {section_name!r}")
            if not isinstance(values, dict):
                raise ConfigError(f"configuration section {section_name!r} must be an object")
            known = {f.name for f in fields(section)}
            for key, value in values.items():
                if key not in known:
                    raise ConfigError(f"unknown configuration key: {section_name}.{key}")
                setattr(section, key, value)
        return self

    def validate(self) -> "Config":
        self.model.validate()
        if self.data.min_count < 1:
            raise ConfigError("data.min_count must be >= 1")
        if self.training.jobs < 1:
            raise ConfigError("training.jobs must be >= 1")
        if not self.training.seeds:
            raise ConfigError("training.seeds must not be empty")
        if self.logging.log_level.lower() not in LOG_LEVELS:
            raise ConfigError(f"unknown log level: {self.logging.log_level!r}")
        return self


_SECTIONS = ("model", "data", "training", "output", "logging")


def load_config(config_path: Optional[str] = None) -> Config:
    """
    Load configuration from JSON file

    Args:
        config_path: Path to a user config file. The bundled config.json is
            always applied first; the user file is overlaid on top of it.

    Returns:
        Configuration object
    """
    config = Config()
    default_path = os.path.join(os.path.dirname(__file__), "config.json")
    config.update(_read_json(default_path))
    if config_path is not None:
        config.update(_read_json(config_path))
    return config


def _read_json(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed config file {path}: {e}")


# Load default configuration
config = load_config()
