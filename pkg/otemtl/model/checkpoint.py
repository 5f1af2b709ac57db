"""
Checkpoint serialization: one JSON document holding hyperparameters,
vocabulary and every parameter tensor.
"""
import json
import math
from dataclasses import asdict, fields
from typing import Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.core.errors import CheckpointError, ShapeError
from otemtl.data.vocab import Vocabulary
from otemtl.model.params import ModelParams
from otemtl.utils.logging import get_logger

logger = get_logger(__name__)

FORMAT_VERSION = 1


def checkpoint_to_dict(params: ModelParams, hyper: Hyperparams) -> dict:
    tensors = {}
    for name, value in params.items():
        if not np.all(np.isfinite(value)):
            raise CheckpointError(f"parameter {name!r} contains non-finite values")
        # float repr is the shortest string that parses back to the same double
        tensors[name] = {"shape": list(value.shape), "data": [float(x) for x in value.ravel()]}
    return {
        "format_version": FORMAT_VERSION,
        "hyperparams": asdict(hyper),
        "vocab": params.vocab.to_list(),
        "params": tensors,
    }


def save_checkpoint(path: str, params: ModelParams, hyper: Hyperparams):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(checkpoint_to_dict(params, hyper), f, allow_nan=False)
    logger.info(f"Saved checkpoint to {path}")


def checkpoint_from_dict(data: dict) -> Tuple[ModelParams, Hyperparams]:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise CheckpointError(f"unsupported checkpoint format version {version!r}")
    try:
        known = {f.name for f in fields(Hyperparams)}
        hyper = Hyperparams(**{k: v for k, v in data["hyperparams"].items() if k in known})
        vocab = Vocabulary.from_list(data["vocab"])
        tensors = {}
        for name, item in data["params"].items():
            shape = tuple(item["shape"])
            values = item["data"]
            if len(values) != math.prod(shape):
                raise CheckpointError(f"parameter {name!r}: {len(values)} values for shape {shape}")
            tensors[name] = np.array(values, dtype=np.float64).reshape(shape)
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f"malformed checkpoint: {e}")

    params = ModelParams(tensors, vocab, hyper.variant)
    try:
        params.check_shapes(hyper)
    except ShapeError as e:
        raise CheckpointError(str(e))
    return params, hyper


def load_checkpoint(path: str) -> Tuple[ModelParams, Hyperparams]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise CheckpointError(f"cannot read checkpoint {path}: {e.strerror or e}")
    except json.JSONDecodeError as e:
        raise CheckpointError(f"malformed checkpoint {path}: {e}")
    params, hyper = checkpoint_from_dict(data)
    logger.info(f"Loaded {hyper.variant} checkpoint from {path}")
    return params, hyper
