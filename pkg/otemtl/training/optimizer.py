"""
Adam with bias correction
"""
from dataclasses import dataclass, field
from typing import Dict, Mapping

import numpy as np

from otemtl.core.errors import ShapeError
from otemtl.data.vocab import PAD_INDEX
from otemtl.model.params import EMBEDDING, ModelParams


@dataclass
class OptimizerState:
    """First/second moments per parameter and the step counter"""
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)
    step: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    @classmethod
    def for_params(cls, params: ModelParams, **kwargs) -> "OptimizerState":
        return cls(m={name: np.zeros_like(value) for name, value in params.items()},
                   v={name: np.zeros_like(value) for name, value in params.items()},
                   **kwargs)


def adam_step(params: ModelParams, grads: Mapping[str, np.ndarray],
              state: OptimizerState, lr: float) -> ModelParams:
    """Update ``params`` and ``state`` in place and return the params.

    theta -= lr * m_hat / (sqrt(v_hat) + eps). The <pad> embedding row is
    reset to zero afterwards.
    """
    state.step += 1
    b1, b2 = state.beta1, state.beta2
    correction1 = 1.0 - b1 ** state.step
    correction2 = 1.0 - b2 ** state.step

    for name, value in params.items():
        grad = grads[name]
        if grad.shape != value.shape:
            raise ShapeError(f"gradient for {name!r} has shape {grad.shape}, expected {value.shape}")
        m = state.m[name]
        v = state.v[name]
        m *= b1
        m += (1.0 - b1) * grad
        v *= b2
        v += (1.0 - b2) * grad ** 2
        value -= lr * (m / correction1) / (np.sqrt(v / correction2) + state.epsilon)

    if EMBEDDING in params:
        params[EMBEDDING][PAD_INDEX] = 0.0
    return params
