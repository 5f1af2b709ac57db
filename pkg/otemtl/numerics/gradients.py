"""
Gradient accumulation and finite-difference checking
"""
from typing import Callable, Dict, Iterable, Mapping, Optional

import numpy as np

from otemtl.core.errors import ShapeError
from otemtl.numerics.ops import Tensor


class GradStore(dict):
    """Per-parameter gradients, keyed like the parameters they belong to"""

    @classmethod
    def zeros_like(cls, params: Mapping[str, Tensor]) -> "GradStore":
        return cls({name: np.zeros_like(value) for name, value in params.items()})

    def accumulate(self, name: str, grad: Tensor):
        if name not in self:
            raise KeyError(f"no gradient slot for parameter {name!r}")
        if self[name].shape != np.shape(grad):
            raise ShapeError(f"gradient for {name!r} has shape {np.shape(grad)}, "
                             f"expected {self[name].shape}")
        self[name] += grad

    def scale(self, factor: float) -> "GradStore":
        for value in self.values():
            value *= factor
        return self

    def merge(self, other: Mapping[str, Tensor]) -> "GradStore":
        for name, grad in other.items():
            self.accumulate(name, grad)
        return self


def relative_error(analytic: Tensor, numeric: Tensor, floor: float = 1e-7) -> float:
    """||a - n|| / max(||a|| + ||n||, floor)"""
    diff = np.linalg.norm(np.ravel(analytic) - np.ravel(numeric))
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    return float(diff / max(scale, floor))


def numeric_gradient(loss_fn: Callable[[], float], tensor: Tensor,
                     step: float = 1e-5,
                     indices: Optional[Iterable[tuple]] = None) -> Tensor:
    """Central differences of ``loss_fn`` w.r.t. ``tensor``, perturbed in place.

    With ``indices`` only those entries are differenced; the other gradient entries stay zero.
    """
    grad = np.zeros_like(tensor)
    entries = indices if indices is not None else np.ndindex(tensor.shape)
    for index in entries:
        original = tensor[index]
        tensor[index] = original + step
        plus = loss_fn()
        tensor[index] = original - step
        minus = loss_fn()
        tensor[index] = original
        grad[index] = (plus - minus) / (2 * step)
    return grad


def gradient_check(loss_fn: Callable[[], float], params: Mapping[str, Tensor],
                   analytic: Mapping[str, Tensor], step: float = 1e-5,
                   max_entries: Optional[int] = None,
                   rng: Optional[np.random.Generator] = None) -> Dict[str, float]:
    """Compare analytic gradients with central differences for every parameter.

    ``loss_fn`` must read the tensors in ``params`` (they are perturbed in
    place). With ``max_entries`` a random subset of each tensor is perturbed and
    the comparison is restricted to it.

    Returns:
        Relative error per parameter name
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    errors: Dict[str, float] = {}
    for name, tensor in params.items():
        if name not in analytic:
            raise KeyError(f"no analytic gradient for {name!r}")
        if max_entries is not None and tensor.size > max_entries:
            flat = rng.choice(tensor.size, size=max_entries, replace=False)
            indices = [np.unravel_index(i, tensor.shape) for i in sorted(flat)]
            numeric = numeric_gradient(loss_fn, tensor, step, indices)
            selector = tuple(np.array(axis) for axis in zip(*indices))
            errors[name] = relative_error(np.asarray(analytic[name])[selector], numeric[selector])
        else:
            numeric = numeric_gradient(loss_fn, tensor, step)
            errors[name] = relative_error(analytic[name], numeric)
    return errors
