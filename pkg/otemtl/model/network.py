"""
The OTE-MTL network: embedding -> BiLSTM -> projections -> tagging heads and
sentiment dependency table, with its backward pass.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.data.vocab import PAD_INDEX
from otemtl.model.params import BIAFFINE, COLLAPSED, CONCAT, EMBEDDING, ModelParams
from otemtl.numerics.gradients import GradStore
from otemtl.numerics.lstm import lstm_backward, lstm_forward
from otemtl.numerics.ops import (Tensor, affine, affine_backward, biaffine_table,
                                 biaffine_table_backward, concat_table, concat_table_backward,
                                 dropout_mask, relu, relu_backward, softmax)


@dataclass
class ForwardTrace:
    """Activations of one sentence.

    In the collapsed variant ``p_ap`` and ``p_op`` are the same (|S|, 5)
    distribution and ``r_ap``/``r_op`` the same shared representation.
    """
    embeddings: Tensor
    hidden: Tensor
    r_ap: Tensor
    r_op: Tensor
    r_ap_dep: Tensor
    r_op_dep: Tensor
    p_ap: Tensor
    p_op: Tensor
    scores: Tensor
    dep_probs: Tensor
    variant: str = BIAFFINE
    cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return int(self.hidden.shape[0])


def _encode(token_ids: np.ndarray, params: ModelParams, rng: Optional[np.random.Generator],
            training: bool, dropout_rate: float) -> Tuple[Tensor, Dict[str, Any]]:
    embedded = params[EMBEDDING][token_ids]
    mask = None
    if training and dropout_rate > 0:
        mask = dropout_mask(embedded.shape, dropout_rate, rng)
        embedded = embedded * mask
    h_fw, cache_fw = lstm_forward(embedded, params.lstm("lstm_fw"))
    h_bw, cache_bw = lstm_forward(embedded, params.lstm("lstm_bw"), reverse=True)
    hidden = np.concatenate([h_fw, h_bw], axis=1)
    return hidden, {"token_ids": token_ids, "embedded": embedded, "dropout_mask": mask,
                    "lstm_fw": cache_fw, "lstm_bw": cache_bw}


def encode(token_ids: np.ndarray, params: ModelParams, rng: Optional[np.random.Generator],
           training: bool, dropout_rate: float = 0.0) -> Tensor:
    """Contextual states h (|S|, 2 d_h): forward and backward LSTM states concatenated.

    Dropout on the embeddings is applied only when training.
    """
    hidden, _ = _encode(np.asarray(token_ids), params, rng, training, dropout_rate)
    return hidden


def _projection_names(variant: str) -> Tuple[str, ...]:
    if variant == COLLAPSED:
        return ("proj_tag", "proj_tag", "proj_ap_dep", "proj_op_dep")
    return ("proj_ap", "proj_op", "proj_ap_dep", "proj_op_dep")


def _project(hidden: Tensor, params: ModelParams) -> Tuple[Tuple[Tensor, ...], Dict[str, Tensor]]:
    outputs, pre = [], {}
    for name in _projection_names(params.variant):
        if name not in pre:
            pre[name] = affine(hidden, params[f"{name}.W"], params[f"{name}.b"])
        outputs.append(relu(pre[name]))
    return tuple(outputs), pre


def project(hidden: Tensor, params: ModelParams) -> Tuple[Tensor, Tensor, Tensor, Tensor]:
    """(r_ap, r_op, r_ap', r_op'), each relu(affine(h)) with its own weights"""
    outputs, _ = _project(hidden, params)
    return outputs


def _tag_logits(r_ap: Tensor, r_op: Tensor, params: ModelParams) -> Tuple[Tensor, Tensor]:
    if params.variant == COLLAPSED:
        joint = affine(r_ap, params["tag_joint.W"], params["tag_joint.b"])
        return joint, joint
    return (affine(r_ap, params["tag_ap.W"], params["tag_ap.b"]),
            affine(r_op, params["tag_op.W"], params["tag_op.b"]))


def tag_heads(r_ap: Tensor, r_op: Tensor, params: ModelParams) -> Tuple[Tensor, Tensor]:
    """Row-wise tag distributions (|S|, 3) for aspect and opinion.

    The collapsed variant returns its single (|S|, 5) distribution twice.
    """
    logits_ap, logits_op = _tag_logits(r_ap, r_op, params)
    p_ap = softmax(logits_ap, axis=-1)
    p_op = p_ap if params.variant == COLLAPSED else softmax(logits_op, axis=-1)
    return p_ap, p_op


def _dep_scores(r_ap_dep: Tensor, r_op_dep: Tensor,
                params: ModelParams) -> Tuple[Tensor, Tensor]:
    if params.variant == CONCAT:
        return concat_table(r_ap_dep, params["concat.W"], r_op_dep, params["concat.b"])
    return biaffine_table(r_ap_dep, params["biaffine.W"], r_op_dep, params["biaffine.b"])


def dep_table(r_ap_dep: Tensor, r_op_dep: Tensor, params: ModelParams) -> Tuple[Tensor, Tensor]:
    """Raw scores and softmax-normalised dependency distributions, both (|S|, |S|, 4).

    Rows index the aspect word, columns the opinion word; self pairs included.
    """
    scores, _ = _dep_scores(r_ap_dep, r_op_dep, params)
    return scores, softmax(scores, axis=-1)


def forward(token_ids: np.ndarray, params: ModelParams, hyper: Hyperparams,
            rng: Optional[np.random.Generator], training: bool) -> ForwardTrace:
    """Full forward pass of one sentence; deterministic given the rng state"""
    token_ids = np.asarray(token_ids, dtype=np.int64)
    hidden, encode_cache = _encode(token_ids, params, rng, training, hyper.dropout_rate)
    (r_ap, r_op, r_ap_dep, r_op_dep), pre = _project(hidden, params)

    logits_ap, logits_op = _tag_logits(r_ap, r_op, params)
    p_ap = softmax(logits_ap, axis=-1)
    p_op = p_ap if params.variant == COLLAPSED else softmax(logits_op, axis=-1)

    scores, table_cache = _dep_scores(r_ap_dep, r_op_dep, params)
    dep_probs = softmax(scores, axis=-1)

    cache = dict(encode_cache)
    cache["projection_pre"] = pre
    cache["table"] = table_cache
    return ForwardTrace(encode_cache["embedded"], hidden, r_ap, r_op, r_ap_dep, r_op_dep,
                        p_ap, p_op, scores, dep_probs, params.variant, cache)


def backward(trace: ForwardTrace, d_logits_ap: Tensor, d_logits_op: Optional[Tensor],
             d_scores: Tensor, params: ModelParams, hyper: Hyperparams,
             grads: Optional[GradStore] = None) -> GradStore:
    """Accumulate parameter gradients of one sentence.

    Args:
        trace: forward trace of the sentence
        d_logits_ap: loss gradient w.r.t. the aspect tag logits (the collapsed
            logits in the collapsed variant)
        d_logits_op: loss gradient w.r.t. the opinion tag logits; ignored in
            the collapsed variant
        d_scores: loss gradient w.r.t. the dependency scores (|S|, |S|, 4)
        grads: store to accumulate into; a fresh one is created when omitted
    """
    grads = grads if grads is not None else GradStore.zeros_like(params.tensors)
    cache = trace.cache

    if params.variant == CONCAT:
        d_ap_dep, dW, d_op_dep, db = concat_table_backward(
            d_scores, trace.r_ap_dep, params["concat.W"], trace.r_op_dep, cache["table"])
        grads.accumulate("concat.W", dW)
        grads.accumulate("concat.b", db)
    else:
        d_ap_dep, dW, d_op_dep, db = biaffine_table_backward(
            d_scores, trace.r_ap_dep, params["biaffine.W"], trace.r_op_dep, cache["table"])
        grads.accumulate("biaffine.W", dW)
        grads.accumulate("biaffine.b", db)

    d_repr = {"proj_ap_dep": d_ap_dep, "proj_op_dep": d_op_dep}
    if params.variant == COLLAPSED:
        d_shared, dW, db = affine_backward(d_logits_ap, trace.r_ap, params["tag_joint.W"])
        grads.accumulate("tag_joint.W", dW)
        grads.accumulate("tag_joint.b", db)
        d_repr["proj_tag"] = d_shared
    else:
        for head, d_logits, r in (("tag_ap", d_logits_ap, trace.r_ap),
                                  ("tag_op", d_logits_op, trace.r_op)):
            d_r, dW, db = affine_backward(d_logits, r, params[f"{head}.W"])
            grads.accumulate(f"{head}.W", dW)
            grads.accumulate(f"{head}.b", db)
            d_repr["proj_ap" if head == "tag_ap" else "proj_op"] = d_r

    d_hidden = np.zeros_like(trace.hidden)
    for name, d_out in d_repr.items():
        d_pre = relu_backward(d_out, cache["projection_pre"][name])
        dh, dW, db = affine_backward(d_pre, trace.hidden, params[f"{name}.W"])
        grads.accumulate(f"{name}.W", dW)
        grads.accumulate(f"{name}.b", db)
        d_hidden += dh

    d_h = hyper.d_h
    d_emb = np.zeros_like(trace.embeddings)
    for direction, d_states in (("lstm_fw", d_hidden[:, :d_h]), ("lstm_bw", d_hidden[:, d_h:])):
        dx, lstm_grads = lstm_backward(d_states, cache[direction], params.lstm(direction))
        for key, value in lstm_grads.items():
            grads.accumulate(f"{direction}.{key}", value)
        d_emb += dx

    if not hyper.freeze_embeddings:
        if cache["dropout_mask"] is not None:
            d_emb = d_emb * cache["dropout_mask"]
        # Sparse row update; the <pad> row never receives gradient
        token_ids = cache["token_ids"]
        real = token_ids != PAD_INDEX
        np.add.at(grads[EMBEDDING], token_ids[real], d_emb[real])
    return grads
