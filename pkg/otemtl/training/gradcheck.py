"""
Finite-difference check of the joint loss on a micro model
"""
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from otemtl.config.config import Hyperparams
from otemtl.core.types import GoldEncoding, SentenceRecord, Sentiment, Span, Triplet
from otemtl.data.encoding import encode_gold
from otemtl.data.vocab import Vocabulary
from otemtl.model.network import forward
from otemtl.model.params import ModelParams
from otemtl.numerics.gradients import gradient_check
from otemtl.training.losses import sentences_loss_and_grads
from otemtl.utils.logging import get_logger

logger = get_logger(__name__)

GRADCHECK_TOLERANCE = 1e-4

MICRO_WORDS = ("great", "battery", "life", "but", "slow", "screen", "and", "nice")


def micro_hyperparams(variant: str = "biaffine", **overrides) -> Hyperparams:
    """d_e = d_h = 4, d_r = 3 with dropout kept on"""
    return replace(Hyperparams(d_e=4, d_h=4, d_r=3, variant=variant, gamma=1e-2), **overrides)


def micro_corpus(seed: int = 0) -> List[SentenceRecord]:
    """Two five-token sentences over eight words (ten vocabulary entries with <pad>/<unk>)"""
    rng = np.random.default_rng(seed)
    first = list(MICRO_WORDS[:5])
    second = [MICRO_WORDS[i] for i in rng.permutation(len(MICRO_WORDS))[:5]]
    return [
        SentenceRecord("micro-0", first, [
            Triplet(Span(1, 2), Span(0, 0), Sentiment.POS),
            Triplet(Span(1, 2), Span(4, 4), Sentiment.NEG),
        ]),
        SentenceRecord("micro-1", second, [
            Triplet(Span(4, 4), Span(0, 1), Sentiment.NEG),
            Triplet(Span(2, 2), Span(0, 1), Sentiment.NEU),
        ]),
    ]


# Smallest distance a projection pre-activation may keep from the ReLU kink
KINK_MARGIN = 1e-3


def clear_relu_kinks(sentences: Sequence[Tuple[np.ndarray, GoldEncoding]], params: ModelParams,
                     hyper: Hyperparams, seed: int, margin: float = KINK_MARGIN) -> float:
    """Shift projection biases so no pre-activation lies near the ReLU kink.

    For each projection unit the kink is moved to the middle of the widest
    gap between the unit's pre-activations, so a finite-difference step
    never crosses it. Replays the dropout masks of ``seed`` exactly as the
    loss does. Returns the smallest remaining distance to the kink.
    """
    rng = np.random.default_rng(seed)
    pre: Dict[str, List[np.ndarray]] = {}
    for token_ids, _ in sentences:
        trace = forward(token_ids, params, hyper, rng, training=True)
        for name, values in trace.cache["projection_pre"].items():
            pre.setdefault(name, []).append(values)

    closest = np.inf
    for name, chunks in pre.items():
        values = np.concatenate(chunks, axis=0)
        bias = params[f"{name}.b"]
        for k in range(values.shape[1]):
            column = np.sort(values[:, k])
            gaps = np.diff(column)
            if gaps.size and gaps.max() >= 2 * margin:
                i = int(np.argmax(gaps))
                kink = (column[i] + column[i + 1]) / 2
            else:
                # no usable interior gap: keep the unit active everywhere
                kink = column[0] - 2 * margin
            bias[k] -= kink
            closest = min(closest, float(np.min(np.abs(column - kink))))
    if closest < margin:
        logger.warning(f"ReLU pre-activation within {closest:.2e} of the kink")
    return closest


def micro_gradient_check(seed: int = 0, variant: str = "biaffine",
                         hyper: Optional[Hyperparams] = None,
                         step: float = 1e-5) -> Dict[str, float]:
    """Relative error of every parameter's analytic gradient of the total loss.

    Each loss evaluation replays the same dropout masks from a fresh
    generator seeded with ``seed``. Projection biases are first moved off
    the ReLU kinks (see ``clear_relu_kinks``).
    """
    hyper = hyper or micro_hyperparams(variant)
    records = micro_corpus(seed)
    vocab = Vocabulary(MICRO_WORDS)
    params = ModelParams.initialize(vocab, hyper, np.random.default_rng(seed))
    sentences = [(vocab.encode(r.tokens), encode_gold(r)) for r in records]
    clear_relu_kinks(sentences, params, hyper, seed)

    def loss_and_grads() -> Tuple[float, Dict[str, np.ndarray]]:
        report, grads = sentences_loss_and_grads(sentences, params, hyper,
                                                 np.random.default_rng(seed), training=True)
        return report.l_total, grads

    _, analytic = loss_and_grads()
    errors = gradient_check(lambda: loss_and_grads()[0], params.tensors, analytic, step=step)
    worst = max(errors, key=errors.get)
    logger.info(f"Gradient check ({hyper.variant}, seed {seed}): max relative error "
                f"{errors[worst]:.3e} at {worst}")
    return errors
