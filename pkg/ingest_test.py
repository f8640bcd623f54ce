#!/usr/bin/env python3
"""
Tests for Atomic ingestion and normalization
"""

import io
from collections import Counter

import pytest

from services.ingest import (Category, IngestError, InferentialDimension, build_record,
                             filter_personz, has_single_subject, normalize_individuals,
                             normalize_tagged, parse_dimension, read_atomic_csv, read_pretagged, read_tsv,
                             strip_leading_prepositions, tokenize_text)
from utils.pos_tagger import IND, TaggedToken

X_ATTR = InferentialDimension.X_ATTR
O_REACT = InferentialDimension.O_REACT
X_WANT = InferentialDimension.X_WANT


def words(tokens):
    return [token.word for token in tokens]


def test_dimension_categories():
    assert X_ATTR.category == Category.PERSONA
    assert InferentialDimension.X_INTENT.category == Category.MENTAL_STATE
    assert O_REACT.category == Category.MENTAL_STATE
    assert InferentialDimension.O_EFFECT.category == Category.EVENT
    assert O_REACT.about_others and not X_WANT.about_others


def test_parse_dimension():
    assert parse_dimension(" xNeed ") == InferentialDimension.X_NEED
    with pytest.raises(IngestError, match="unknown dimension"):
        parse_dimension("xHope")


def test_tokenize_splits_clitics_and_drops_punctuation():
    assert tokenize_text("PersonX kills PersonY’s father.") == [
        "PersonX", "kills", "PersonY", "'s", "father"]


def test_normalize_spelling_variants():
    assert normalize_individuals("X goes to Y house".split(), X_WANT, False,
                                 side="event") == ["PersonX", "goes", "to", "PersonY", "house"]
    assert normalize_individuals("person x meets PERSONY".split(), X_WANT, False,
                                 side="event") == ["PersonX", "meets", "PersonY"]


def test_normalize_deletes_clitic_after_individual():
    assert normalize_individuals(["PersonY", "'s", "father"], X_WANT, False,
                                 side="event") == ["PersonY", "father"]
    assert normalize_individuals(["dog", "'s", "bone"], X_WANT, False,
                                 side="event") == ["dog", "'s", "bone"]


def test_pronouns_resolve_to_the_other_individual():
    assert normalize_individuals(["thank", "her"], X_WANT, True) == ["thank", "PersonY"]
    assert normalize_individuals(["to", "hug", "him"], O_REACT, False) == ["to", "hug", "PersonX"]


def test_unresolved_pronoun_is_dropped_and_counted():
    counters = Counter()
    assert normalize_individuals(["to", "hug", "him"], X_WANT, False,
                                 counters=counters) == ["to", "hug"]
    assert counters["unresolved_pronoun"] == 1


def test_event_pronouns_are_left_alone():
    assert normalize_individuals(["PersonX", "calls", "her"], X_WANT, False,
                                 side="event") == ["PersonX", "calls", "her"]


def test_strip_leading_prepositions():
    tokens = [TaggedToken("in", "IN"), TaggedToken("grief", "NN"), TaggedToken("of", "IN")]
    assert words(strip_leading_prepositions(tokens)) == ["grief", "of"]


def test_single_subject():
    assert has_single_subject([TaggedToken("PersonX", IND), TaggedToken("loves", "VBZ"),
                               TaggedToken("PersonX", IND), TaggedToken("husband", "NN")])
    assert not has_single_subject([TaggedToken("PersonX", IND), TaggedToken("and", "CC"),
                                   TaggedToken("PersonY", IND), TaggedToken("meet", "VB")])
    assert not has_single_subject([TaggedToken("PersonY", IND), TaggedToken("calls", "VBZ")])
    assert not has_single_subject([TaggedToken("the", "DT"), TaggedToken("dog", "NN")])


def test_build_record_kills_example():
    record = build_record("r", "PersonX kills PersonY's father", O_REACT, "in grief")
    assert words(record.event) == ["PersonX", "kills", "PersonY", "father"]
    assert [t.tag for t in record.event] == [IND, "VBZ", IND, "NN"]
    assert words(record.inference) == ["grief"]
    assert record.event_has_person_y
    assert record.event_text == "PersonX kills PersonY's father"


def test_build_record_drops_multi_subject():
    counters = Counter()
    assert build_record("r", "PersonX and PersonY meet", X_WANT, "to talk",
                        counters=counters) is None
    assert counters["multi_subject"] == 1


def test_build_record_drops_empty_inference():
    counters = Counter()
    assert build_record("r", "PersonX calls", X_WANT, "...", counters=counters) is None
    assert counters["empty_inference"] == 1


ATOMIC_CSV = (
    'event,oReact,xAttr,xWant,prefix,split\n'
    '"PersonX kills PersonY\'s father","[""in grief""]","[""none""]","[]",[],trn\n'
    '"PersonX is really sad","[]","[""lonely"", ""tired""]","[""to speak with a friend""]",[],trn\n'
)


def test_read_atomic_csv():
    counters = Counter()
    records = read_atomic_csv(io.StringIO(ATOMIC_CSV), counters=counters)
    assert [r.id for r in records] == ["0:oReact:0", "1:xWant:0", "1:xAttr:0", "1:xAttr:1"]
    assert [r.inference_text for r in records] == [
        "in grief", "to speak with a friend", "lonely", "tired"]
    assert counters["read"] == 4


def test_read_atomic_csv_skips_malformed_cell():
    text = 'event,xAttr\n"PersonX calls","[oops"\n"PersonX calls","[""kind""]"\n'
    counters = Counter()
    records = read_atomic_csv(io.StringIO(text), counters=counters)
    assert len(records) == 1
    assert counters["malformed_row"] == 1


def test_read_atomic_csv_rejects_bad_header():
    with pytest.raises(IngestError, match="missing 'event'"):
        read_atomic_csv(io.StringIO("head,xAttr\n"))
    with pytest.raises(IngestError, match="no dimension columns"):
        read_atomic_csv(io.StringIO("event,prefix\n"))


def test_read_tsv(worked_examples):
    text = "".join(f"{e}\t{d}\t{i}\n" for e, d, i, _ in worked_examples)
    records = read_tsv(io.StringIO(text))
    assert [r.dimension for r in records] == [O_REACT, X_WANT, X_ATTR]
    assert records[2].inference_text == "enamored"


def test_read_tsv_unknown_dimension():
    text = "PersonX calls\txHope\tto talk\nPersonX calls\txWant\tto talk\n"
    counters = Counter()
    assert len(read_tsv(io.StringIO(text), counters=counters)) == 1
    assert counters["malformed_row"] == 1
    with pytest.raises(IngestError, match="line 1"):
        read_tsv(io.StringIO(text), strict=True)


def test_read_pretagged():
    text = "PersonX/NNP kills/VBZ PersonY/NNP father/NN\toReact\tin/IN grief/NN\n"
    records = read_pretagged(io.StringIO(text))
    assert len(records) == 1
    assert records[0].event[0] == TaggedToken("PersonX", IND)
    assert words(records[0].inference) == ["grief"]


def test_personz_filter_removes_exactly_the_personz_records():
    events = [
        "PersonX takes PersonY in PersonZ arms.",
        "PersonX gives PersonZ a gift",
        "PersonX calls Person Z",
        "PersonX kills PersonY's father",
        "PersonX is really sad",
        "PersonX loves PersonX's husband",
        "PersonX paints PersonX's portrait",
        "PersonX buys a car",
        "PersonX helps PersonY",
        "PersonX visits the zoo",
    ]
    records = [build_record(str(i), event, X_WANT, "to rest") for i, event in enumerate(events)]
    assert all(records)
    kept, removed = filter_personz(records)
    assert removed == 3
    assert len(kept) == 7
    assert [r.id for r in kept] == [str(i) for i in range(3, 10)]


def test_personz_audit_mode_flags_instead():
    records = [build_record("0", "PersonX gives PersonZ a gift", X_WANT, "to rest"),
               build_record("1", "PersonX buys a car", X_WANT, "to drive")]
    kept, flagged = filter_personz(records, keep=True)
    assert flagged == 1
    assert [r.personz for r in kept] == [True, False]


def test_ingest_is_deterministic():
    first = read_atomic_csv(io.StringIO(ATOMIC_CSV))
    second = read_atomic_csv(io.StringIO(ATOMIC_CSV))
    assert first == second


def test_normalize_examples_from_raw_text():
    assert normalize_individuals(tokenize_text("X's family has a new home"), X_WANT, False,
                                 side="event") == "PersonX family has a new home".split()
    assert normalize_individuals(tokenize_text("to pay person x"), X_WANT, False) == [
        "to", "pay", "PersonX"]
    assert normalize_individuals(tokenize_text("to help him"), X_WANT, True) == [
        "to", "help", "PersonY"]


def test_read_tsv_empty_file():
    assert read_tsv(io.StringIO("")) == []


def test_read_atomic_csv_row_with_empty_lists():
    header = "event," + ",".join(d.value for d in InferentialDimension)
    row = '"PersonX calls",' + ",".join(["[]"] * 9)
    assert read_atomic_csv(io.StringIO(f"{header}\n{row}\n")) == []


def test_personz_filter_is_idempotent():
    records = [build_record("0", "PersonX gives PersonZ a gift", X_WANT, "to rest"),
               build_record("1", "PersonX buys a car", X_WANT, "to drive")]
    once, removed = filter_personz(records)
    twice, removed_again = filter_personz(once)
    assert (removed, removed_again) == (1, 0)
    assert twice == once


def test_read_pretagged_normalizes_individuals():
    text = ("PersonX/NNP kills/VBZ PersonY/NNP 's/POS father/NN\toReact\tin/IN grief/NN\n"
            "X/NNP kills/VBZ Y/NNP father/NN\toReact\tin/IN grief/NN\n")
    counters = Counter()
    records = read_pretagged(io.StringIO(text), counters=counters)
    assert len(records) == 2
    for record in records:
        assert record.event == (TaggedToken("PersonX", IND), TaggedToken("kills", "VBZ"),
                                TaggedToken("PersonY", IND), TaggedToken("father", "NN"))
        assert record.event_has_person_y
    assert counters["multi_subject"] == 0


def test_read_pretagged_resolves_pronouns():
    text = "PersonX/NNP hugs/VBZ PersonY/NNP\txWant\tto/TO thank/VB her/PRP\n"
    record, = read_pretagged(io.StringIO(text))
    assert record.inference == (TaggedToken("to", "TO"), TaggedToken("thank", "VB"),
                                TaggedToken("PersonY", IND))


def test_normalize_tagged_keeps_tags():
    tokens = [TaggedToken("person", "NN"), TaggedToken("x", "NN"), TaggedToken("'s", "POS"),
              TaggedToken("dog", "NN"), TaggedToken("barks", "VBZ")]
    assert normalize_tagged(tokens, X_WANT, False, side="event") == [
        TaggedToken("PersonX", IND), TaggedToken("dog", "NN"), TaggedToken("barks", "VBZ")]


def test_personz_subject_counts_as_personz():
    counters = Counter()
    assert build_record("0", "PersonZ gives PersonX a gift", X_WANT, "to rest",
                        counters=counters) is None
    assert counters["personz"] == 1
    assert counters["multi_subject"] == 0
