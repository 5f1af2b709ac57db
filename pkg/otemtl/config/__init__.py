"""
Configuration module for OTE-MTL
"""
from .config import (Config, DataConfig, Hyperparams, LoggingConfig, ModelConfig,
                     OutputConfig, TrainingConfig, config, load_config)

__all__ = ['Config', 'DataConfig', 'Hyperparams', 'LoggingConfig', 'ModelConfig',
           'OutputConfig', 'TrainingConfig', 'config', 'load_config']
