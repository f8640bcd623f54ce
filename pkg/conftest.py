"""
Shared fixtures: the worked if-then examples and a synthetic tagged corpus
"""

import random
from typing import List

import pytest

from services.ingest import AtomicRecord, InferentialDimension
from utils.pos_tagger import IND, TaggedToken

WORKED_EXAMPLES = [
    ("PersonX kills PersonY's father", "oReact", "in grief",
     "A x y z ( ( person (x) & person (y) & kills (x,z,y) & father (z) ) -> grief (y) )"),
    ("PersonX is really sad", "xWant", "to speak with a friend",
     "A x z ( ( person (x) & is really (x,z) & sad (z) ) -> E a ( to speak with (x,a) & friend (a) ) )"),
    ("PersonX loves PersonX's husband", "xAttr", "enamored",
     "A x z ( ( person (x) & loves (x,z) & husband (z) ) -> enamored (x) )"),
]

EVENT_VERBS = ["kills", "loves", "paints", "helps", "gives", "buys", "visits", "calls", "meets"]
EVENT_OBJECTS = ["father", "husband", "portrait", "friend", "car", "book", "dog", "house"]
EVENT_ADJECTIVES = ["sad", "happy", "tired", "angry"]
HEAD_VERBS = [
    [("to", "TO"), ("hang", "VB")],
    [("to", "TO"), ("speak", "VB"), ("with", "IN")],
    [("enamored", "JJ")],
    [("grief", "NN")],
    [("to", "TO"), ("buy", "VB")],
    [("gets", "VBZ"), ("paid", "VBN")],
    [("cries", "VBZ")],
]
HEAD_OBJECTS = ["painting", "friend", "gift", "car", "book", "money", "dog", "house"]
HEAD_TRIGGERS = [("the", "DT"), ("a", "DT"), ("and", "CC"), ("their", "PRP$")]


def synthetic_record(rng: random.Random, index: int) -> AtomicRecord:
    """One well-formed tagged record covering the translator's branches"""
    event = [TaggedToken("PersonX", IND), TaggedToken(rng.choice(EVENT_VERBS), "VBZ")]
    if rng.random() < 0.4:
        event.append(TaggedToken("PersonY", IND))
    body_object = None
    roll = rng.random()
    if roll < 0.6:
        body_object = rng.choice(EVENT_OBJECTS)
        event += [TaggedToken("the", "DT"), TaggedToken(body_object, "NN")]
    elif roll < 0.8:
        event.append(TaggedToken(rng.choice(EVENT_ADJECTIVES), "JJ"))

    inference = [TaggedToken(word, tag) for word, tag in rng.choice(HEAD_VERBS)]
    if rng.random() < 0.1:
        inference.append(TaggedToken(rng.choice(["PersonX", "PersonY"]), IND))
    for _ in range(rng.choice([0, 0, 1, 1, 2, 3])):
        word, tag = rng.choice(HEAD_TRIGGERS)
        inference.append(TaggedToken(word, tag))
        if body_object and rng.random() < 0.3:
            inference.append(TaggedToken(body_object, "NN"))
        else:
            inference.append(TaggedToken(rng.choice(HEAD_OBJECTS), "NN"))

    return AtomicRecord(
        id=f"{index}:synthetic",
        event=tuple(event),
        dimension=rng.choice(list(InferentialDimension)),
        inference=tuple(inference),
        event_text=" ".join(token.word for token in event),
        inference_text=" ".join(token.word for token in inference),
    )


def synthetic_records(n: int, seed: int = 0) -> List[AtomicRecord]:
    rng = random.Random(seed)
    return [synthetic_record(rng, index) for index in range(n)]


def pretagged_line(record: AtomicRecord) -> str:
    """Render a record as one pre-tagged TSV line"""
    def tagged(tokens):
        return " ".join(f"{token.word}/{token.tag}" for token in tokens)
    return f"{tagged(record.event)}\t{record.dimension.value}\t{tagged(record.inference)}"


@pytest.fixture
def worked_examples():
    return WORKED_EXAMPLES


@pytest.fixture
def worked_tsv(tmp_path):
    path = tmp_path / "worked.tsv"
    path.write_text("".join(f"{e}\t{d}\t{i}\n" for e, d, i, _ in WORKED_EXAMPLES),
                    encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def synthetic_corpus():
    return synthetic_records(10_000, seed=20240501)


@pytest.fixture
def make_corpus():
    return synthetic_records


@pytest.fixture
def to_pretagged():
    return pretagged_line
