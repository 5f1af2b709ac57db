"""
JSON-lines dataset reading and writing
"""
import json
from typing import Any, Dict, Iterable, List, Optional, Sequence

from otemtl.core.errors import DatasetError
from otemtl.core.types import (SentenceRecord, Sentiment, Span, Triplet, render_triplet,
                               validate_record)
from otemtl.utils.logging import get_logger

logger = get_logger(__name__)


def triplet_to_list(triplet: Triplet) -> List[Any]:
    return [triplet.aspect.to_list(), triplet.opinion.to_list(), triplet.sentiment.name]


def triplet_from_list(item: Any) -> Triplet:
    """Parse ``[[sa, ea], [so, eo], "POS"]``"""
    if not isinstance(item, (list, tuple)) or len(item) != 3:
        raise ValueError(f"triplet must be [[sa,ea],[so,eo],label], got {item!r}")
    aspect, opinion, label = item
    return Triplet(_span_from_list(aspect), _span_from_list(opinion), Sentiment.parse(label))


def _span_from_list(item: Any) -> Span:
    if (not isinstance(item, (list, tuple)) or len(item) != 2
            or not all(isinstance(i, int) and not isinstance(i, bool) for i in item)):
        raise ValueError(f"span must be a pair of integers, got {item!r}")
    return Span(item[0], item[1])


def record_to_dict(record: SentenceRecord) -> Dict[str, Any]:
    return {
        "id": record.id,
        "tokens": list(record.tokens),
        "triplets": [triplet_to_list(t) for t in record.triplets],
    }


def record_from_dict(data: Dict[str, Any], default_id: str = "") -> SentenceRecord:
    if not isinstance(data, dict):
        raise ValueError("record must be a JSON object")
    tokens = data.get("tokens")
    if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        raise ValueError("field 'tokens' must be a list of strings")
    triplets = data.get("triplets", [])
    if not isinstance(triplets, list):
        raise ValueError("field 'triplets' must be a list")
    return SentenceRecord(
        id=str(data.get("id", default_id)),
        tokens=tuple(tokens),
        triplets=tuple(triplet_from_list(t) for t in triplets),
    )


def load_dataset(path: str, strict: bool = False) -> List[SentenceRecord]:
    """Load validated records from a JSON-lines file.

    Malformed lines and records that fail validation are logged with their
    line number and skipped; in strict mode the first one raises DatasetError.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise DatasetError(f"cannot read dataset: {e.strerror or e}", path)

    records: List[SentenceRecord] = []
    skipped = 0
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = record_from_dict(json.loads(line), default_id=f"line-{line_number}")
        except (json.JSONDecodeError, ValueError) as e:
            if strict:
                raise DatasetError(f"malformed record: {e}", path, line_number)
            logger.warning(f"{path}:{line_number}: skipping malformed record: {e}")
            skipped += 1
            continue

        result = validate_record(record)
        if not result.ok:
            if strict:
                raise DatasetError(f"invalid record {record.id!r}: {result}", path, line_number)
            logger.warning(f"{path}:{line_number}: skipping invalid record {record.id!r}: {result}")
            skipped += 1
            continue
        records.append(record)

    logger.info(f"Loaded {len(records)} records from {path}"
                + (f" ({skipped} skipped)" if skipped else ""))
    return records


def write_dataset(path: str, records: Sequence[SentenceRecord],
                  predictions: Optional[Sequence[Iterable[Triplet]]] = None,
                  rendered: bool = False):
    """Write records as JSON lines; with predictions, add ``predicted_triplets``"""
    if predictions is not None and len(predictions) != len(records):
        raise ValueError("predictions must align with records")
    with open(path, "w", encoding="utf-8") as f:
        for index, record in enumerate(records):
            data = record_to_dict(record)
            if predictions is not None:
                predicted = list(predictions[index])
                data["predicted_triplets"] = [triplet_to_list(t) for t in predicted]
                if rendered:
                    data["predicted_text"] = [render_triplet(record.tokens, t) for t in predicted]
            f.write(json.dumps(data, ensure_ascii=False) + "\n")


def load_predictions(path: str, strict: bool = False) -> Dict[str, List[Triplet]]:
    """Read a prediction file; records without ``predicted_triplets`` use their gold triplets"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise DatasetError(f"cannot read predictions: {e.strerror or e}", path)

    predictions: Dict[str, List[Triplet]] = {}
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            record = record_from_dict(data, default_id=f"line-{line_number}")
            items = data.get("predicted_triplets")
            triplets = (list(record.triplets) if items is None
                        else [triplet_from_list(t) for t in items])
        except (json.JSONDecodeError, ValueError) as e:
            if strict:
                raise DatasetError(f"malformed prediction: {e}", path, line_number)
            logger.warning(f"{path}:{line_number}: skipping malformed prediction: {e}")
            continue
        if record.id in predictions:
            raise DatasetError(f"duplicate sentence id {record.id!r}", path, line_number)
        predictions[record.id] = triplets
    return predictions
