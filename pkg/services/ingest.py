#!/usr/bin/env python3
"""
Atomic Ingestion
Reads Atomic-style CSV, 3-column TSV and pre-tagged TSV into AtomicRecords:
individual mentions are normalized, pronouns resolved, tokens POS-tagged.
"""

import ast
import csv
import logging
import re
from collections import Counter
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Optional, TextIO, Tuple

from nltk.tokenize import TreebankWordTokenizer
from pydantic import BaseModel, ConfigDict, Field

from utils.pos_tagger import (IND, INDIVIDUALS, PERSON_X, PERSON_Y, PosTagger,
                              TaggedToken, parse_pretagged)

logger = logging.getLogger(__name__)

CLITICS = {"'s", "'d"}
PRONOUNS = {"he", "him", "his", "himself", "she", "her", "hers", "herself"}
PERSON_Z = re.compile(r"\bperson\s*z\b|\bz\b", re.IGNORECASE)

_TOKENIZER = TreebankWordTokenizer()


class Category(str, Enum):
    MENTAL_STATE = "Mental-State"
    EVENT = "Event"
    PERSONA = "Persona"


class InferentialDimension(str, Enum):
    X_INTENT = "xIntent"
    X_REACT = "xReact"
    X_NEED = "xNeed"
    X_WANT = "xWant"
    X_EFFECT = "xEffect"
    X_ATTR = "xAttr"
    O_REACT = "oReact"
    O_WANT = "oWant"
    O_EFFECT = "oEffect"

    @property
    def category(self) -> Category:
        return DIMENSION_CATEGORIES[self]

    @property
    def about_others(self) -> bool:
        """o-dimensions ask about the others involved, not PersonX"""
        return self.value.startswith("o")


DIMENSION_CATEGORIES = {
    InferentialDimension.X_INTENT: Category.MENTAL_STATE,
    InferentialDimension.X_REACT: Category.MENTAL_STATE,
    InferentialDimension.O_REACT: Category.MENTAL_STATE,
    InferentialDimension.X_NEED: Category.EVENT,
    InferentialDimension.X_WANT: Category.EVENT,
    InferentialDimension.X_EFFECT: Category.EVENT,
    InferentialDimension.O_WANT: Category.EVENT,
    InferentialDimension.O_EFFECT: Category.EVENT,
    InferentialDimension.X_ATTR: Category.PERSONA,
}


class IngestError(ValueError):
    """Input that cannot be read at all (bad header, strict-mode bad line)"""


class AtomicRecord(BaseModel):
    """One if-then instance: event, inferential dimension, inference"""
    model_config = ConfigDict(frozen=True)

    id: str
    event: Tuple[TaggedToken, ...] = Field(min_length=1)
    dimension: InferentialDimension
    inference: Tuple[TaggedToken, ...] = Field(min_length=1)
    event_text: str = ""
    inference_text: str = ""
    personz: bool = False

    @property
    def event_has_person_y(self) -> bool:
        return any(token.word == PERSON_Y for token in self.event)


def tokenize_text(text: str) -> List[str]:
    """Treebank word split; punctuation-only tokens are dropped"""
    text = text.replace("’", "'").replace("‘", "'")
    return [word for word in _TOKENIZER.tokenize(text)
            if any(char.isalnum() for char in word)]


def _clean_text(text: str) -> str:
    return " ".join(text.split()).rstrip(" .")


def _resolve_pronoun(dimension: InferentialDimension,
                     event_has_person_y: bool) -> Optional[str]:
    """The individual other than the dimension's subject, if there is one"""
    if dimension.about_others:
        return PERSON_X
    return PERSON_Y if event_has_person_y else None


def _normalize_tokens(tokens: List[Tuple[str, Optional[str]]], dimension: InferentialDimension,
                      event_has_person_y: bool, side: str,
                      counters: Optional[Counter]) -> List[Tuple[str, Optional[str]]]:
    """(word, tag) pairs; rewritten individuals are tagged IND, deleted words lose their tag"""
    normalized: List[Tuple[str, Optional[str]]] = []
    index = 0
    while index < len(tokens):
        word, tag = tokens[index]
        lower = word.lower().replace("’", "'")
        following = tokens[index + 1][0].lower() if index + 1 < len(tokens) else None

        if lower == "person" and following in ("x", "y"):
            normalized.append((PERSON_X if following == "x" else PERSON_Y, IND))
            index += 2
            continue

        if lower in ("x", "personx"):
            normalized.append((PERSON_X, IND))
        elif lower in ("y", "persony"):
            normalized.append((PERSON_Y, IND))
        elif lower in CLITICS and normalized and normalized[-1][0] in INDIVIDUALS:
            pass
        elif side == "inference" and lower in PRONOUNS:
            resolved = _resolve_pronoun(dimension, event_has_person_y)
            if resolved:
                normalized.append((resolved, IND))
            else:
                logger.debug("Dropping unresolved pronoun %r (%s)", word, dimension.value)
                if counters is not None:
                    counters["unresolved_pronoun"] += 1
        else:
            normalized.append((word, tag))
        index += 1
    return normalized


def normalize_individuals(words: Iterable[str], dimension: InferentialDimension,
                          event_has_person_y: bool, side: str = "inference",
                          counters: Optional[Counter] = None) -> List[str]:
    """
    Rewrite spelling variants of the individuals to PersonX/PersonY, delete
    possessive clitics that follow an individual and, on the inference side,
    resolve third-person pronouns
    """
    tokens = [(word, None) for word in words]
    return [word for word, _ in _normalize_tokens(tokens, dimension, event_has_person_y,
                                                  side, counters)]


def normalize_tagged(tokens: Iterable[TaggedToken], dimension: InferentialDimension,
                     event_has_person_y: bool, side: str = "inference",
                     counters: Optional[Counter] = None) -> List[TaggedToken]:
    """normalize_individuals for pre-tagged input; surviving words keep their tags"""
    pairs = [(token.word, token.tag) for token in tokens]
    return [TaggedToken(word, tag) for word, tag in
            _normalize_tokens(pairs, dimension, event_has_person_y, side, counters)]


@lru_cache(maxsize=None)
def _default_tagger() -> PosTagger:
    return PosTagger()


def pos_tag(words: Iterable[str], tagger: Optional[PosTagger] = None) -> List[TaggedToken]:
    """Tag normalized words; PersonX/PersonY come out as IND"""
    return (tagger or _default_tagger()).tag(words)


def strip_leading_prepositions(tokens: Iterable[TaggedToken]) -> List[TaggedToken]:
    """'in grief' -> 'grief'; inner prepositions stay"""
    tokens = list(tokens)
    start = 0
    while start < len(tokens) and tokens[start].tag == "IN":
        start += 1
    return tokens[start:]


def has_single_subject(event: Iterable[TaggedToken]) -> bool:
    """The event opens with exactly one individual, and it is PersonX"""
    leading = []
    for token in event:
        if token.tag == IND:
            leading.append(token.word)
        elif token.tag == "CC" and leading:
            continue
        else:
            break
    return leading == [PERSON_X]


def _validated(record_id: str, event: List[TaggedToken], dimension: InferentialDimension,
               inference: List[TaggedToken], event_text: str, inference_text: str,
               counters: Counter) -> Optional[AtomicRecord]:
    if not has_single_subject(event):
        if PERSON_Z.search(" ".join(token.word for token in event)):
            logger.info("Record %s: event %r is about PersonZ", record_id, event_text)
            counters["personz"] += 1
            return None
        logger.warning("Record %s: event %r has no single PersonX subject", record_id, event_text)
        counters["multi_subject"] += 1
        return None
    if not inference:
        logger.warning("Record %s: inference %r is empty after normalization",
                       record_id, inference_text)
        counters["empty_inference"] += 1
        return None
    return AtomicRecord(id=record_id, event=tuple(event), dimension=dimension,
                        inference=tuple(inference), event_text=_clean_text(event_text),
                        inference_text=_clean_text(inference_text))


def build_record(record_id: str, event_text: str, dimension: InferentialDimension,
                 inference_text: str, tagger: Optional[PosTagger] = None,
                 counters: Optional[Counter] = None) -> Optional[AtomicRecord]:
    """Normalize, tag and validate one (event, dimension, inference) triple"""
    counters = counters if counters is not None else Counter()
    counters["read"] += 1

    event_words = normalize_individuals(tokenize_text(event_text), dimension,
                                        False, side="event", counters=counters)
    inference_words = normalize_individuals(tokenize_text(inference_text), dimension,
                                            PERSON_Y in event_words, side="inference",
                                            counters=counters)
    event = pos_tag(event_words, tagger)
    inference = strip_leading_prepositions(pos_tag(inference_words, tagger))
    return _validated(record_id, event, dimension, inference,
                      event_text, inference_text, counters)


def parse_dimension(value: str) -> InferentialDimension:
    try:
        return InferentialDimension(value.strip())
    except ValueError:
        raise IngestError(f"unknown dimension {value.strip()!r}") from None


def _parse_cell(cell: Optional[str]) -> List[str]:
    """A bracketed list of quoted answers, e.g. '["to rest", "none"]'"""
    cell = (cell or "").strip()
    if not cell:
        return []
    try:
        value = ast.literal_eval(cell)
    except (ValueError, SyntaxError):
        raise ValueError(f"unparseable list cell {cell[:40]!r}") from None
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise ValueError(f"cell is not a list of strings: {cell[:40]!r}")
    return value


def read_atomic_csv(stream: TextIO, tagger: Optional[PosTagger] = None,
                    counters: Optional[Counter] = None) -> List[AtomicRecord]:
    """
    Read the Atomic distribution layout: an 'event' column plus one column
    per dimension holding a list of answers. Extra columns are ignored.
    """
    counters = counters if counters is not None else Counter()
    reader = csv.DictReader(stream)
    fields = reader.fieldnames or []
    if "event" not in fields:
        raise IngestError("malformed header: missing 'event' column")
    dimensions = [dim for dim in InferentialDimension if dim.value in fields]
    if not dimensions:
        raise IngestError("malformed header: no dimension columns")
    missing = [dim.value for dim in InferentialDimension if dim not in dimensions]
    if missing:
        logger.warning("Header lacks dimension columns: %s", ", ".join(missing))

    records: List[AtomicRecord] = []
    for row_index, row in enumerate(reader):
        event_text = (row.get("event") or "").strip()
        try:
            answers = {dim: _parse_cell(row.get(dim.value)) for dim in dimensions}
        except ValueError as exc:
            logger.warning("Row %d skipped: %s", reader.line_num, exc)
            counters["malformed_row"] += 1
            continue

        for dim in dimensions:
            for answer_index, answer in enumerate(answers[dim]):
                answer = answer.strip()
                if not answer or answer.lower() == "none":
                    continue
                record = build_record(f"{row_index}:{dim.value}:{answer_index}",
                                      event_text, dim, answer, tagger, counters)
                if record:
                    records.append(record)
    return records


def _split_line(line: str, line_index: int, counters: Counter,
                strict: bool) -> Optional[Tuple[str, InferentialDimension, str]]:
    fields = line.rstrip("\r\n").split("\t")
    try:
        if len(fields) != 3:
            raise IngestError(f"expected 3 tab-separated fields, got {len(fields)}")
        return fields[0], parse_dimension(fields[1]), fields[2]
    except IngestError as exc:
        if strict:
            raise IngestError(f"line {line_index + 1}: {exc}") from None
        logger.warning("Line %d skipped: %s", line_index + 1, exc)
        counters["malformed_row"] += 1
        return None


def read_tsv(stream: TextIO, tagger: Optional[PosTagger] = None,
             counters: Optional[Counter] = None, strict: bool = False) -> List[AtomicRecord]:
    """One 'event<TAB>dimension<TAB>inference' record per line"""
    counters = counters if counters is not None else Counter()
    records: List[AtomicRecord] = []
    for line_index, line in enumerate(stream):
        if not line.strip():
            continue
        fields = _split_line(line, line_index, counters, strict)
        if fields is None:
            continue
        event_text, dimension, inference_text = fields
        record = build_record(f"{line_index}:{dimension.value}:0", event_text,
                              dimension, inference_text, tagger, counters)
        if record:
            records.append(record)
    return records


def read_pretagged(stream: TextIO, counters: Optional[Counter] = None,
                   strict: bool = False) -> List[AtomicRecord]:
    """Like read_tsv, but event and inference are 'word/TAG' sequences"""
    counters = counters if counters is not None else Counter()
    records: List[AtomicRecord] = []
    for line_index, line in enumerate(stream):
        if not line.strip():
            continue
        fields = _split_line(line, line_index, counters, strict)
        if fields is None:
            continue
        event_field, dimension, inference_field = fields
        try:
            event = parse_pretagged(event_field)
            raw_inference = parse_pretagged(inference_field)
        except ValueError as exc:
            if strict:
                raise IngestError(f"line {line_index + 1}: {exc}") from None
            logger.warning("Line %d skipped: %s", line_index + 1, exc)
            counters["malformed_row"] += 1
            continue

        counters["read"] += 1
        event = normalize_tagged(event, dimension, False, side="event", counters=counters)
        inference = normalize_tagged(raw_inference, dimension,
                                     any(token.word == PERSON_Y for token in event),
                                     side="inference", counters=counters)
        record = _validated(f"{line_index}:{dimension.value}:0", event, dimension,
                            strip_leading_prepositions(inference),
                            " ".join(token.word for token in event),
                            " ".join(token.word for token in raw_inference), counters)
        if record:
            records.append(record)
    return records


def mentions_personz(record: AtomicRecord) -> bool:
    texts = (record.event_text, record.inference_text,
             " ".join(token.word for token in record.event),
             " ".join(token.word for token in record.inference))
    return any(PERSON_Z.search(text) for text in texts)


def filter_personz(records: Iterable[AtomicRecord],
                   keep: bool = False) -> Tuple[List[AtomicRecord], int]:
    """
    Remove every record that mentions PersonZ; with keep=True the records
    are flagged instead (audit mode). Returns (records, matched count).
    """
    kept: List[AtomicRecord] = []
    matched = 0
    for record in records:
        if mentions_personz(record):
            matched += 1
            if keep:
                kept.append(record.model_copy(update={"personz": True}))
            continue
        kept.append(record)
    if matched:
        logger.info("%s %d PersonZ records", "Flagged" if keep else "Removed", matched)
    return kept, matched
