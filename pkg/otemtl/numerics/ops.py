"""
Dense tensor operations with hand-written backward passes.

Every forward function has a matching ``*_backward`` that takes the upstream
gradient and returns the gradients of its inputs. Tensors are float64 numpy
arrays.
"""
from typing import Optional, Tuple

import numpy as np

from otemtl.core.errors import ShapeError

Tensor = np.ndarray
LOG_EPS = 1e-12


def as_tensor(data, shape: Optional[Tuple[int, ...]] = None) -> Tensor:
    tensor = np.asarray(data, dtype=np.float64)
    if shape is not None:
        tensor = tensor.reshape(shape)
    return tensor


def _require(condition: bool, message: str):
    if not condition:
        raise ShapeError(message)


# affine: y = W x + b, x is (d_in,) or (n, d_in)

def affine(x: Tensor, W: Tensor, b: Tensor) -> Tensor:
    _require(W.ndim == 2 and b.shape == (W.shape[0],),
             f"affine: weight {W.shape} and bias {b.shape} disagree")
    _require(x.shape[-1] == W.shape[1],
             f"affine: input dim {x.shape[-1]} does not match weight {W.shape}")
    return x @ W.T + b


def affine_backward(dy: Tensor, x: Tensor, W: Tensor) -> Tuple[Tensor, Tensor, Tensor]:
    x2 = np.atleast_2d(x)
    dy2 = np.atleast_2d(dy)
    dx = (dy2 @ W).reshape(x.shape)
    dW = dy2.T @ x2
    db = dy2.sum(axis=0)
    return dx, dW, db


def relu(x: Tensor) -> Tensor:
    return np.maximum(x, 0.0)


def relu_backward(dy: Tensor, x: Tensor) -> Tensor:
    # Subgradient at exactly 0 is 0
    return dy * (x > 0)


def softmax(x: Tensor, axis: int = -1) -> Tensor:
    shifted = x - np.max(x, axis=axis, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=axis, keepdims=True)


def softmax_backward(dy: Tensor, y: Tensor, axis: int = -1) -> Tensor:
    return y * (dy - np.sum(dy * y, axis=axis, keepdims=True))


def cross_entropy(pred: Tensor, gold: Tensor) -> float:
    """-sum(gold * log(pred)) over all entries, log clamped at log(1e-12)"""
    _require(pred.shape == gold.shape,
             f"cross_entropy: prediction {pred.shape} and gold {gold.shape} disagree")
    return float(-np.sum(gold * np.log(np.maximum(pred, LOG_EPS))))


def softmax_cross_entropy_backward(pred: Tensor, gold: Tensor) -> Tensor:
    """Gradient of cross_entropy(softmax(z), gold) w.r.t. z for rows of gold summing to 1"""
    return pred - gold


def one_hot(labels: np.ndarray, num_classes: int) -> Tensor:
    """One-hot rows for integer labels; negative labels give all-zero rows"""
    labels = np.asarray(labels, dtype=np.int64)
    out = np.zeros(labels.shape + (num_classes,), dtype=np.float64)
    valid = labels >= 0
    out[valid, labels[valid]] = 1.0
    return out


def sigmoid(x: Tensor) -> Tensor:
    out = np.empty_like(x, dtype=np.float64)
    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))
    exp = np.exp(x[~positive])
    out[~positive] = exp / (1.0 + exp)
    return out


# bilinear: s = (W u + b)^T v

def bilinear_score(u: Tensor, W: Tensor, v: Tensor, b: Tensor) -> float:
    d = W.shape[0]
    _require(W.shape == (d, d) and u.shape == (d,) and v.shape == (d,) and b.shape == (d,),
             f"bilinear_score: shapes u{u.shape} W{W.shape} v{v.shape} b{b.shape} disagree")
    return float((W @ u + b) @ v)


def bilinear_score_backward(ds: float, u: Tensor, W: Tensor, v: Tensor,
                            b: Tensor) -> Tuple[Tensor, Tensor, Tensor, Tensor]:
    du = ds * (W.T @ v)
    dW = ds * np.outer(v, u)
    dv = ds * (W @ u + b)
    db = ds * v
    return du, dW, dv, db


def biaffine_table(left: Tensor, W: Tensor, right: Tensor, b: Tensor) -> Tuple[Tensor, Tensor]:
    """Scores s[i, j, k] = bilinear_score(left[i], W[k], right[j], b[k]) for all pairs.

    Returns the (n, m, K) score table and the (K, n, d) affine part ``W[k] left[i] + b[k]``
    needed by the backward pass.
    """
    K, d, d2 = W.shape
    _require(d == d2 and b.shape == (K, d) and left.shape[1] == d and right.shape[1] == d,
             f"biaffine_table: shapes left{left.shape} W{W.shape} right{right.shape} "
             f"b{b.shape} disagree")
    transformed = np.einsum("ked,id->kie", W, left) + b[:, None, :]
    scores = np.einsum("kie,je->ijk", transformed, right)
    return scores, transformed


def biaffine_table_backward(dscores: Tensor, left: Tensor, W: Tensor, right: Tensor,
                            transformed: Tensor) -> Tuple[Tensor, Tensor, Tensor, Tensor]:
    dtransformed = np.einsum("ijk,je->kie", dscores, right)
    dright = np.einsum("ijk,kie->je", dscores, transformed)
    dW = np.einsum("kie,id->ked", dtransformed, left)
    db = dtransformed.sum(axis=1)
    dleft = np.einsum("kie,ked->id", dtransformed, W)
    return dleft, dW, dright, db


def concat_table(left: Tensor, W: Tensor, right: Tensor, b: Tensor) -> Tuple[Tensor, Tensor]:
    """Scores relu(W [left[i] ; right[j]] + b) for all pairs.

    Returns the (n, m, K) activated scores and the pre-activation table.
    """
    d = left.shape[1]
    _require(W.shape[1] == 2 * d and right.shape[1] == d and b.shape == (W.shape[0],),
             f"concat_table: shapes left{left.shape} W{W.shape} right{right.shape} "
             f"b{b.shape} disagree")
    pre = (left @ W[:, :d].T)[:, None, :] + (right @ W[:, d:].T)[None, :, :] + b
    return relu(pre), pre


def concat_table_backward(dscores: Tensor, left: Tensor, W: Tensor, right: Tensor,
                          pre: Tensor) -> Tuple[Tensor, Tensor, Tensor, Tensor]:
    d = left.shape[1]
    dpre = relu_backward(dscores, pre)
    row_sum = dpre.sum(axis=1)          # (n, K)
    col_sum = dpre.sum(axis=0)          # (m, K)
    dW = np.concatenate([row_sum.T @ left, col_sum.T @ right], axis=1)
    db = dpre.sum(axis=(0, 1))
    dleft = row_sum @ W[:, :d]
    dright = col_sum @ W[:, d:]
    return dleft, dW, dright, db


def dropout_mask(shape: Tuple[int, ...], rate: float, rng: np.random.Generator) -> Tensor:
    """Inverted dropout mask: 0 with probability rate, 1/(1-rate) otherwise"""
    if not 0 <= rate < 1:
        raise ValueError(f"dropout rate must lie in [0, 1), got {rate}")
    if rate == 0:
        return np.ones(shape)
    keep = rng.random(shape) >= rate
    return keep / (1.0 - rate)


def dropout(x: Tensor, rate: float, rng: Optional[np.random.Generator],
            training: bool) -> Tensor:
    """Inverted dropout; identity at inference"""
    if not training or rate == 0:
        return x
    return x * dropout_mask(x.shape, rate, rng)
