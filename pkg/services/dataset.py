#!/usr/bin/env python3
"""
Dataset Builder
Renders if-then sentences, pairs them with their formulas, filters by
category, splits and samples with explicit seeds, and writes the files
"""

import json
import logging
import random
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple, TypeVar, Union

from pydantic import BaseModel

from services.ingest import AtomicRecord, Category, InferentialDimension
from utils.fol import Rule, quantify, serialize, strip_quantifiers

logger = logging.getLogger(__name__)

ALL = "All"
FORMATS = ("jsonl", "parallel")

T = TypeVar("T")


class DatasetError(ValueError):
    """Invalid split/sample/emit request"""


class DatasetPair(BaseModel):
    id: str
    dimension: InferentialDimension
    category: Category
    sentence: str
    formula: str
    formula_nq: str
    # only written when set (--keep-personz audit runs)
    personz: bool = False


TEMPLATES = {
    InferentialDimension.X_ATTR: "PersonX is {}",
    InferentialDimension.X_WANT: "PersonX wants {}",
    InferentialDimension.X_NEED: "PersonX needs {}",
    InferentialDimension.X_INTENT: "PersonX intends {}",
    InferentialDimension.X_REACT: "PersonX feels {}",
    InferentialDimension.X_EFFECT: "PersonX {}",
}

# (PersonY occurs in the event, implicit others)
OTHERS_TEMPLATES = {
    InferentialDimension.O_REACT: ("PersonY is {}", "others are {}"),
    InferentialDimension.O_WANT: ("PersonY wants {}", "others want {}"),
    InferentialDimension.O_EFFECT: ("PersonY {}", "others {}"),
}


def render_sentence(record: AtomicRecord) -> str:
    """If <event> then <dimension template applied to the inference>."""
    if record.dimension in OTHERS_TEMPLATES:
        with_y, without_y = OTHERS_TEMPLATES[record.dimension]
        template = with_y if record.event_has_person_y else without_y
    else:
        template = TEMPLATES[record.dimension]
    return f"If {record.event_text} then {template.format(record.inference_text)}."


def make_pair(record: AtomicRecord, rule: Rule) -> DatasetPair:
    """Pair a record with its rule; both formula variants are stored"""
    bare = strip_quantifiers(rule)
    return DatasetPair(
        id=record.id,
        dimension=record.dimension,
        category=record.dimension.category,
        sentence=render_sentence(record),
        formula=serialize(quantify(bare)),
        formula_nq=serialize(bare),
        personz=record.personz,
    )


def filter_category(items: Iterable[T], category: Union[Category, str]) -> List[T]:
    """Keep records or pairs whose dimension belongs to the category"""
    items = list(items)
    if category == ALL:
        return items
    category = Category(category)
    return [item for item in items if item.dimension.category == category]


def _check_fraction(fraction: float) -> None:
    if not 0.0 < fraction < 1.0:
        raise DatasetError(f"train fraction must lie in (0, 1), got {fraction}")


def split_size(n: int, train_fraction: float) -> int:
    """round(n * fraction), halves rounded up"""
    return int(n * train_fraction + 0.5)


def split(pairs: Sequence[T], train_fraction: float, seed: int) -> Tuple[List[T], List[T]]:
    """Seeded shuffle, then cut the prefix off as the training part"""
    _check_fraction(train_fraction)
    if not pairs:
        raise DatasetError("cannot split an empty dataset")
    shuffled = list(pairs)
    random.Random(seed).shuffle(shuffled)
    cut = split_size(len(shuffled), train_fraction)
    return shuffled[:cut], shuffled[cut:]


def sample(pairs: Sequence[T], k: int, seed: int) -> List[T]:
    """k items without replacement, ordered by id (input order for items without one)"""
    if k < 0 or k > len(pairs):
        raise DatasetError(f"cannot sample {k} of {len(pairs)} pairs")
    indices = sorted(random.Random(seed).sample(range(len(pairs)), k))
    chosen = [pairs[i] for i in indices]
    if all(hasattr(item, "id") for item in chosen):
        chosen.sort(key=lambda item: item.id)
    return chosen


def emit(pairs: Iterable[DatasetPair], fmt: str, stream: TextIO,
         formula_stream: Optional[TextIO] = None, quantified: bool = True) -> int:
    """
    Write pairs as JSON lines, or as parallel sentence/formula text files
    Returns the number of pairs written
    """
    if fmt not in FORMATS:
        raise DatasetError(f"unknown dataset format {fmt!r}")
    if fmt == "parallel" and formula_stream is None:
        raise DatasetError("parallel format needs a formula stream")

    count = 0
    for pair in pairs:
        if fmt == "jsonl":
            stream.write(pair.model_dump_json(exclude_defaults=True) + "\n")
        else:
            stream.write(pair.sentence + "\n")
            formula_stream.write((pair.formula if quantified else pair.formula_nq) + "\n")
        count += 1
    return count


def read_pairs(stream: TextIO) -> List[DatasetPair]:
    """Load a JSON-lines dataset written by emit"""
    pairs = []
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            pairs.append(DatasetPair.model_validate_json(line))
        except ValueError as exc:
            raise DatasetError(f"line {line_no}: not a dataset pair ({exc})") from None
    return pairs


def write_metadata(stream: TextIO, metadata: dict) -> None:
    stream.write(json.dumps(metadata, indent=2, sort_keys=True) + "\n")
