#!/usr/bin/env python3
"""
Atomic to Rule Translator
Turns an AtomicRecord into a first-order rule: the event becomes the body,
the inference becomes the head, and the variables are optionally quantified.
"""

import logging
import re
from typing import Iterable, List, Optional, Sequence, Tuple

from services.ingest import AtomicRecord, Category, InferentialDimension
from utils.fol import (U, X, Y, Z, Atom, Rule, Variable, canonical_variables,
                       fresh_variables)
from utils.pos_tagger import IND, PERSON_X, PERSON_Y, TaggedToken

logger = logging.getLogger(__name__)

OBJECT_TAGS = {"JJ", "NN", "NNS"}
HEAD_TRIGGER_TAGS = {"CC", "DT", "PRP", "PRP$"}
PREDICATE_NOISE = re.compile(r"[()&]")

EMPTY_VERB = "empty_verb"
DISJUNCTION = "disjunction"


class TranslationError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code

    def __reduce__(self):
        return (self.__class__, (self.code, str(self)))


def _person(var: Variable) -> Atom:
    return Atom(predicate=("person",), args=(var,))


def _predicate(words: Iterable[str]) -> Tuple[str, ...]:
    """Lower-cased predicate words with grammar characters removed"""
    cleaned = (PREDICATE_NOISE.sub("", word).lower() for word in words)
    return tuple(word for word in cleaned if word and not word.startswith("->"))


def event_to_body(event: Sequence[TaggedToken]) -> Tuple[List[Atom], List[Variable]]:
    """
    Individuals become person atoms, the leading words form the verb
    v(x,z[,y]) and, from the first adjective/noun on, the rest forms the
    object o(z)
    """
    has_y = any(token.word == PERSON_Y for token in event)
    body = [_person(X)]
    if has_y:
        body.append(_person(Y))
    variables = [X, Y, Z] if has_y else [X, Z]

    verb: List[str] = []
    obj: List[str] = []
    verb_finished = False
    for token in event:
        if token.tag == IND:
            continue
        if verb and token.tag in OBJECT_TAGS:
            verb_finished = True
        if verb_finished:
            obj.append(token.word)
        elif token.tag != "DT":
            verb.append(token.word)

    verb_predicate = _predicate(verb)
    if not verb_predicate:
        raise TranslationError(EMPTY_VERB, "event has no verb besides its individuals")
    body.append(Atom(predicate=verb_predicate, args=(X, Z, Y) if has_y else (X, Z)))

    obj_predicate = _predicate(obj)
    if obj_predicate:
        body.append(Atom(predicate=obj_predicate, args=(Z,)))
    return body, variables


def _body_object(body: Sequence[Atom]) -> Optional[str]:
    for atom in body:
        if atom.args == (Z,):
            return atom.name.lower()
    return None


def inference_to_head(inference: Sequence[TaggedToken], body: Sequence[Atom],
                      dimension: InferentialDimension) -> Tuple[List[Atom], List[Variable]]:
    """
    The inference's leading words form the verb; determiners, pronouns and
    conjunctions close the verb and then separate the objects, each of
    which gets a fresh variable
    """
    if any(token.tag == "CC" and token.word.lower() == "or" for token in inference):
        raise TranslationError(DISJUNCTION, "inference expresses a disjunction")

    body_vars = {arg for atom in body for arg in atom.args}
    head: List[Atom] = []
    variables: List[Variable] = []
    for name, var in ((PERSON_X, X), (PERSON_Y, Y)):
        if var not in body_vars and any(token.word == name for token in inference):
            head.append(_person(var))
            variables.append(var)

    verb: List[str] = []
    current: List[str] = []
    objects: List[Tuple[str, ...]] = []
    verb_finished = False
    for token in inference:
        if token.tag == IND:
            continue
        if verb and token.tag in HEAD_TRIGGER_TAGS:
            if not verb_finished:
                verb_finished = True
            elif _predicate(current):
                objects.append(_predicate(current))
                current = []
            continue
        if verb_finished:
            current.append(token.word)
        else:
            verb.append(token.word)
    if _predicate(current):
        objects.append(_predicate(current))

    verb_predicate = _predicate(verb)
    if not verb_predicate:
        raise TranslationError(EMPTY_VERB, "inference has no verb besides its individuals")

    y_present = Y in body_vars or Y in variables
    if dimension.about_others:
        subject = Y if y_present else U
        target: Optional[Variable] = X
    else:
        subject = X
        target = Y if y_present else None
    if dimension.category == Category.MENTAL_STATE:
        target = None
    tail = (target,) if target else ()

    if not objects:
        head.append(Atom(predicate=verb_predicate, args=(subject,) + tail))
    elif len(objects) == 1 and " ".join(objects[0]) == _body_object(body):
        head.append(Atom(predicate=verb_predicate, args=(subject, Z) + tail))
    else:
        fresh = fresh_variables()
        for obj in objects:
            obj_var = next(fresh)
            variables.append(obj_var)
            head.append(Atom(predicate=verb_predicate, args=(subject, obj_var) + tail))
            head.append(Atom(predicate=obj, args=(obj_var,)))

    if subject == U:
        variables.append(U)
    return head, list(canonical_variables(variables))


def atomic_to_rule(record: AtomicRecord, add_quantifiers: bool = True) -> Rule:
    """Translate one record; raises TranslationError"""
    body, body_vars = event_to_body(record.event)
    head, head_vars = inference_to_head(record.inference, body, record.dimension)
    if add_quantifiers:
        return Rule(universal_vars=tuple(body_vars), body=tuple(body),
                    existential_vars=tuple(head_vars), head=tuple(head), quantified=True)
    return Rule(body=tuple(body), head=tuple(head), quantified=False)


def translate_all(records: Iterable[AtomicRecord], add_quantifiers: bool = True
                  ) -> List[Tuple[AtomicRecord, Optional[Rule], Optional[TranslationError]]]:
    """Translate in order, collecting per-record failures instead of raising"""
    results = []
    for record in records:
        results.append(translate_one(record, add_quantifiers))
    return results


def translate_one(record: AtomicRecord, add_quantifiers: bool = True
                  ) -> Tuple[AtomicRecord, Optional[Rule], Optional[TranslationError]]:
    try:
        return record, atomic_to_rule(record, add_quantifiers), None
    except TranslationError as exc:
        logger.debug("Record %s not translated (%s): %s", record.id, exc.code, exc)
        return record, None, exc
