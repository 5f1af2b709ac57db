"""
Tagging loss, dependency loss and the joint objective
"""
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.core.types import GoldEncoding
from otemtl.data.batching import Batch
from otemtl.data.encoding import encode_collapsed
from otemtl.model.network import ForwardTrace, backward, forward
from otemtl.model.params import COLLAPSED, NUM_DEP_TYPES, ModelParams
from otemtl.numerics.gradients import GradStore
from otemtl.numerics.ops import Tensor, cross_entropy, one_hot


@dataclass(frozen=True)
class LossReport:
    l_tag: float
    l_dep: float
    l_reg: float
    l_total: float

    def to_dict(self) -> Dict[str, float]:
        return {"l_tag": self.l_tag, "l_dep": self.l_dep, "l_reg": self.l_reg,
                "l_total": self.l_total}


def _token_mask(labels: np.ndarray, mask: Optional[np.ndarray]) -> np.ndarray:
    if mask is None:
        return np.asarray(labels) >= 0
    return np.asarray(mask, dtype=bool)


def _tagger_loss(p: Tensor, gold: np.ndarray, mask: np.ndarray) -> float:
    n = int(mask.sum())
    if n == 0:
        return 0.0
    return cross_entropy(p[mask], one_hot(gold[mask], p.shape[-1])) / n


def tagging_loss(p_ap: Tensor, p_op: Optional[Tensor], gold_ap: np.ndarray,
                 gold_op: Optional[np.ndarray], mask: Optional[np.ndarray] = None) -> float:
    """Per-token cross entropy averaged over unmasked tokens, summed over both taggers.

    Inputs are one sentence (|S|, C) or a padded batch (B, L, C); a batch value
    is the mean over sentences. Pass ``p_op=None`` for the collapsed tagger.
    """
    if p_ap.ndim == 3:
        losses = [tagging_loss(p_ap[b], None if p_op is None else p_op[b], gold_ap[b],
                               None if gold_op is None else gold_op[b],
                               None if mask is None else mask[b])
                  for b in range(p_ap.shape[0])]
        return float(np.mean(losses)) if losses else 0.0
    token_mask = _token_mask(gold_ap, mask)
    loss = _tagger_loss(p_ap, np.asarray(gold_ap), token_mask)
    if p_op is not None:
        loss += _tagger_loss(p_op, np.asarray(gold_op), token_mask)
    return loss


def tagging_loss_grad(p: Tensor, gold: np.ndarray,
                      mask: Optional[np.ndarray] = None) -> Tensor:
    """Gradient of one tagger's term w.r.t. its pre-softmax logits"""
    token_mask = _token_mask(gold, mask)
    n = int(token_mask.sum())
    grad = np.zeros_like(p)
    if n:
        grad[token_mask] = (p[token_mask] - one_hot(gold[token_mask], p.shape[-1])) / n
    return grad


def dependency_loss(s: Tensor, gold_table: np.ndarray, mask: Optional[np.ndarray] = None) -> float:
    """Cross entropy over the |S|^2 unmasked cells, divided by |S|^2.

    Accepts one sentence (|S|, |S|, 4) or a padded batch (B, L, L, 4) with a
    (B, L) token mask; a batch value is the mean over sentences.
    """
    if s.ndim == 4:
        losses = [dependency_loss(s[b], gold_table[b], None if mask is None else mask[b])
                  for b in range(s.shape[0])]
        return float(np.mean(losses)) if losses else 0.0
    pair_mask = _pair_mask(gold_table, mask)
    cells = int(pair_mask.sum())
    if cells == 0:
        return 0.0
    return cross_entropy(s[pair_mask], one_hot(gold_table[pair_mask], NUM_DEP_TYPES)) / cells


def dependency_loss_grad(s: Tensor, gold_table: np.ndarray,
                         mask: Optional[np.ndarray] = None) -> Tensor:
    """Gradient of dependency_loss w.r.t. the pre-softmax scores"""
    pair_mask = _pair_mask(gold_table, mask)
    cells = int(pair_mask.sum())
    grad = np.zeros_like(s)
    if cells:
        grad[pair_mask] = (s[pair_mask] - one_hot(gold_table[pair_mask], NUM_DEP_TYPES)) / cells
    return grad


def _pair_mask(gold_table: np.ndarray, mask: Optional[np.ndarray]) -> np.ndarray:
    if mask is None:
        tokens = np.diagonal(np.asarray(gold_table)) >= 0
    else:
        tokens = np.asarray(mask, dtype=bool)
    return tokens[:, None] & tokens[None, :]


def regularization(params: ModelParams, l2_mode: str = "squared") -> Tuple[float, Dict[str, Tensor]]:
    """Value and gradient of the L2 term over all non-embedding parameters.

    ``squared`` is sum ||p||^2; ``norm`` is the unsquared ||theta||_2.
    """
    names = params.regularized_names()
    squared = float(sum(np.sum(params[name] ** 2) for name in names))
    if l2_mode == "squared":
        return squared, {name: 2.0 * params[name] for name in names}
    norm = float(np.sqrt(squared))
    if norm == 0.0:
        return 0.0, {name: np.zeros_like(params[name]) for name in names}
    return norm, {name: params[name] / norm for name in names}


def _gold_tag_targets(gold: GoldEncoding, variant: str) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    if variant == COLLAPSED:
        return encode_collapsed(gold), None
    return gold.aspect_tags, gold.opinion_tags


def sentence_loss(trace: ForwardTrace, gold: GoldEncoding,
                  hyper: Hyperparams) -> Tuple[float, float]:
    """(l_tag, l_dep) of one sentence"""
    gold_ap, gold_op = _gold_tag_targets(gold, trace.variant)
    p_op = None if trace.variant == COLLAPSED else trace.p_op
    return (tagging_loss(trace.p_ap, p_op, gold_ap, gold_op),
            dependency_loss(trace.dep_probs, gold.dep_table))


def joint_loss(trace: ForwardTrace, gold: GoldEncoding, hyper: Hyperparams,
               params: ModelParams) -> LossReport:
    """l_tag + alpha * l_dep + gamma * l_reg for one sentence"""
    l_tag, l_dep = sentence_loss(trace, gold, hyper)
    l_reg, _ = regularization(params, hyper.l2_mode)
    return LossReport(l_tag, l_dep, l_reg, l_tag + hyper.alpha * l_dep + hyper.gamma * l_reg)


def _sentence_grads(trace: ForwardTrace, gold: GoldEncoding, hyper: Hyperparams,
                    params: ModelParams, weight: float, grads: GradStore):
    gold_ap, gold_op = _gold_tag_targets(gold, trace.variant)
    d_ap = weight * tagging_loss_grad(trace.p_ap, gold_ap)
    d_op = None if gold_op is None else weight * tagging_loss_grad(trace.p_op, gold_op)
    d_scores = weight * hyper.alpha * dependency_loss_grad(trace.dep_probs, gold.dep_table)
    backward(trace, d_ap, d_op, d_scores, params, hyper, grads)


def _add_regularization(params: ModelParams, hyper: Hyperparams, grads: GradStore) -> float:
    l_reg, reg_grads = regularization(params, hyper.l2_mode)
    if hyper.gamma:
        for name, grad in reg_grads.items():
            grads.accumulate(name, hyper.gamma * grad)
    return l_reg


def sentences_loss_and_grads(sentences: Sequence[Tuple[np.ndarray, GoldEncoding]],
                             params: ModelParams, hyper: Hyperparams,
                             rng: Optional[np.random.Generator],
                             training: bool) -> Tuple[LossReport, GradStore]:
    """Joint loss of a group of sentences (mean of sentence losses plus one
    regularisation term) and its gradient w.r.t. every parameter.

    Sentences are processed in order so gradient summation is deterministic.
    """
    grads = GradStore.zeros_like(params.tensors)
    count = len(sentences)
    tag_total, dep_total = 0.0, 0.0
    for token_ids, gold in sentences:
        trace = forward(token_ids, params, hyper, rng, training)
        l_tag, l_dep = sentence_loss(trace, gold, hyper)
        tag_total += l_tag
        dep_total += l_dep
        _sentence_grads(trace, gold, hyper, params, 1.0 / count, grads)

    l_tag = tag_total / count if count else 0.0
    l_dep = dep_total / count if count else 0.0
    l_reg = _add_regularization(params, hyper, grads)
    return LossReport(l_tag, l_dep, l_reg, l_tag + hyper.alpha * l_dep + hyper.gamma * l_reg), grads


def batch_loss_and_grads(batch: Batch, params: ModelParams, hyper: Hyperparams,
                         rng: Optional[np.random.Generator],
                         training: bool = True) -> Tuple[LossReport, GradStore]:
    return sentences_loss_and_grads([batch.sentence(i) for i in range(len(batch))],
                                    params, hyper, rng, training)


def corpus_loss(sentences: Sequence[Tuple[np.ndarray, GoldEncoding]], params: ModelParams,
                hyper: Hyperparams) -> LossReport:
    """Joint loss of a corpus without dropout or gradients (validation loss)"""
    tag_total, dep_total = 0.0, 0.0
    for token_ids, gold in sentences:
        trace = forward(token_ids, params, hyper, None, training=False)
        l_tag, l_dep = sentence_loss(trace, gold, hyper)
        tag_total += l_tag
        dep_total += l_dep
    count = max(len(sentences), 1)
    l_tag, l_dep = tag_total / count, dep_total / count
    l_reg, _ = regularization(params, hyper.l2_mode)
    return LossReport(l_tag, l_dep, l_reg, l_tag + hyper.alpha * l_dep + hyper.gamma * l_reg)
