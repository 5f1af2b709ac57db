"""
LSTM cell and unidirectional sequence pass with backpropagation through time.

Gate layout in the stacked weights is [input, forget, output, candidate].
"""
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from otemtl.core.errors import ShapeError
from otemtl.numerics.ops import Tensor, sigmoid


@dataclass
class LSTMWeights:
    W_x: Tensor   # (4H, D)
    W_h: Tensor   # (4H, H)
    b: Tensor     # (4H,)

    @property
    def hidden_size(self) -> int:
        return self.W_h.shape[1]

    def check(self, input_size: int):
        H = self.hidden_size
        if (self.W_x.shape != (4 * H, input_size) or self.W_h.shape != (4 * H, H)
                or self.b.shape != (4 * H,)):
            raise ShapeError(
                f"LSTM weights W_x{self.W_x.shape} W_h{self.W_h.shape} b{self.b.shape} "
                f"do not match input size {input_size} and hidden size {H}")


def _gates(z: Tensor, H: int) -> Tuple[Tensor, Tensor, Tensor, Tensor]:
    return (sigmoid(z[..., :H]), sigmoid(z[..., H:2 * H]), sigmoid(z[..., 2 * H:3 * H]),
            np.tanh(z[..., 3 * H:]))


def lstm_cell(x_t: Tensor, h_prev: Tensor, c_prev: Tensor,
              weights: LSTMWeights) -> Tuple[Tensor, Tensor]:
    """One LSTM step; returns (h_t, c_t)"""
    weights.check(x_t.shape[-1])
    if h_prev.shape != (weights.hidden_size,) or c_prev.shape != h_prev.shape:
        raise ShapeError(f"LSTM state shapes {h_prev.shape}/{c_prev.shape} do not match "
                         f"hidden size {weights.hidden_size}")
    z = weights.W_x @ x_t + weights.W_h @ h_prev + weights.b
    i, f, o, g = _gates(z, weights.hidden_size)
    c = f * c_prev + i * g
    return o * np.tanh(c), c


def _cell_backward(dh: Tensor, dc: Tensor, c_prev: Tensor, c: Tensor,
                   i: Tensor, f: Tensor, o: Tensor, g: Tensor) -> Tuple[Tensor, Tensor]:
    """Gradient w.r.t. the stacked pre-activation z and the previous cell state"""
    tanh_c = np.tanh(c)
    dc_total = dc + dh * o * (1.0 - tanh_c ** 2)
    dz = np.concatenate([
        dc_total * g * i * (1.0 - i),
        dc_total * c_prev * f * (1.0 - f),
        dh * tanh_c * o * (1.0 - o),
        dc_total * i * (1.0 - g ** 2),
    ])
    return dz, dc_total * f


def lstm_cell_backward(dh: Tensor, dc: Tensor, x_t: Tensor, h_prev: Tensor, c_prev: Tensor,
                       weights: LSTMWeights) -> Tuple[Tensor, Tensor, Tensor, Dict[str, Tensor]]:
    """Backward of lstm_cell; returns (dx_t, dh_prev, dc_prev, weight grads)"""
    z = weights.W_x @ x_t + weights.W_h @ h_prev + weights.b
    i, f, o, g = _gates(z, weights.hidden_size)
    c = f * c_prev + i * g
    dz, dc_prev = _cell_backward(dh, dc, c_prev, c, i, f, o, g)
    grads = {"W_x": np.outer(dz, x_t), "W_h": np.outer(dz, h_prev), "b": dz}
    return weights.W_x.T @ dz, weights.W_h.T @ dz, dc_prev, grads


@dataclass
class LSTMCache:
    xs: Tensor
    reverse: bool
    h_prev: Tensor   # (T, H) state fed into each step, in position order
    c_prev: Tensor
    c: Tensor
    gates: Tuple[Tensor, Tensor, Tensor, Tensor]


def lstm_forward(xs: Tensor, weights: LSTMWeights,
                 reverse: bool = False) -> Tuple[Tensor, LSTMCache]:
    """Run the LSTM over a (T, D) sequence from zero initial states.

    Outputs are indexed by position: with ``reverse`` the pass runs from the
    last position to the first, and hs[t] is the state after reading xs[t].
    """
    T = xs.shape[0]
    weights.check(xs.shape[1])
    H = weights.hidden_size

    z_input = xs @ weights.W_x.T + weights.b
    hs = np.zeros((T, H))
    h_prev = np.zeros((T, H))
    c_prev = np.zeros((T, H))
    cs = np.zeros((T, H))
    gates = tuple(np.zeros((T, H)) for _ in range(4))

    h, c = np.zeros(H), np.zeros(H)
    steps = range(T - 1, -1, -1) if reverse else range(T)
    for t in steps:
        h_prev[t], c_prev[t] = h, c
        i, f, o, g = _gates(z_input[t] + weights.W_h @ h, H)
        c = f * c + i * g
        h = o * np.tanh(c)
        hs[t], cs[t] = h, c
        for store, value in zip(gates, (i, f, o, g)):
            store[t] = value

    return hs, LSTMCache(xs, reverse, h_prev, c_prev, cs, gates)


def lstm_backward(dhs: Tensor, cache: LSTMCache,
                  weights: LSTMWeights) -> Tuple[Tensor, Dict[str, Tensor]]:
    """Backpropagation through time; returns (dxs, weight grads)"""
    T, H = dhs.shape
    dz_all = np.zeros((T, 4 * H))
    dh_next, dc_next = np.zeros(H), np.zeros(H)
    i_all, f_all, o_all, g_all = cache.gates

    steps = range(T) if cache.reverse else range(T - 1, -1, -1)
    for t in steps:
        dz, dc_next = _cell_backward(dhs[t] + dh_next, dc_next, cache.c_prev[t], cache.c[t],
                                     i_all[t], f_all[t], o_all[t], g_all[t])
        dz_all[t] = dz
        dh_next = weights.W_h.T @ dz

    grads = {
        "W_x": dz_all.T @ cache.xs,
        "W_h": dz_all.T @ cache.h_prev,
        "b": dz_all.sum(axis=0),
    }
    return dz_all @ weights.W_x, grads
