#!/usr/bin/env python3
"""
First-order rule model
Variables, atoms and rules plus the canonical surface syntax used by the
dataset files and the metrics:

    A x y z ( ( person (x) & person (y) & kills (x,z,y) & father (z) ) -> grief (y) )

Parsing lives in utils.formula_parser.
"""

import itertools
import re
from functools import lru_cache
from typing import Iterable, Iterator, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# x: PersonX, y: PersonY, z: event object, u: implicit "other"
BODY_VARIABLES = ("x", "y", "z", "u")
FRESH_LETTERS = "abcdefghijklmnopqrstvw"

FORALL = "A"
EXISTS = "E"
AND = "&"
IMPLIES = "->"

VARIABLE_PATTERN = re.compile(r"[a-z][a-z0-9]*")
FRESH_PATTERN = re.compile(r"([a-w])(\d*)")
FORBIDDEN_WORD_CHARS = re.compile(r"[\s()&]")

FormulaTokens = List[str]


class Variable(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not VARIABLE_PATTERN.fullmatch(value):
            raise ValueError(f"invalid variable name {value!r}")
        return value

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def variable(name: str) -> Variable:
    """Shared instance for a variable name"""
    return Variable(name=name)


X = variable("x")
Y = variable("y")
Z = variable("z")
U = variable("u")


def fresh_variables() -> Iterator[Variable]:
    """Head object variables in allocation order: a, b, c, ..., w, a1, b1, ..."""
    for round_number in itertools.count():
        suffix = str(round_number) if round_number else ""
        for letter in FRESH_LETTERS:
            yield variable(letter + suffix)


def variable_order(var: Variable) -> Tuple[int, int, int, str]:
    """Sort key giving the canonical prefix order x, y, z, u, a, b, c, ..."""
    name = var.name
    if name in BODY_VARIABLES:
        return (0, BODY_VARIABLES.index(name), 0, "")
    match = FRESH_PATTERN.fullmatch(name)
    if match and match.group(1) in FRESH_LETTERS:
        return (1, int(match.group(2) or 0), FRESH_LETTERS.index(match.group(1)), "")
    return (2, 0, 0, name)


def canonical_variables(variables: Iterable[Variable]) -> Tuple[Variable, ...]:
    return tuple(sorted(set(variables), key=variable_order))


class Atom(BaseModel):
    """A predicate (one or more words) applied to 1-3 variables"""
    model_config = ConfigDict(frozen=True)

    predicate: Tuple[str, ...] = Field(min_length=1)
    args: Tuple[Variable, ...] = Field(min_length=1, max_length=3)

    @field_validator("predicate")
    @classmethod
    def _check_predicate(cls, words: Tuple[str, ...]) -> Tuple[str, ...]:
        for word in words:
            if not word or FORBIDDEN_WORD_CHARS.search(word) or word.startswith(IMPLIES):
                raise ValueError(f"invalid predicate word {word!r}")
        return words

    @property
    def name(self) -> str:
        return " ".join(self.predicate)

    def __str__(self) -> str:
        return f"{self.name} ({','.join(arg.name for arg in self.args)})"


def atom_variables(atoms: Iterable[Atom]) -> Tuple[Variable, ...]:
    return canonical_variables(arg for atom in atoms for arg in atom.args)


class Rule(BaseModel):
    """body -> head, optionally with the universal/existential prefixes"""
    model_config = ConfigDict(frozen=True)

    universal_vars: Tuple[Variable, ...] = ()
    body: Tuple[Atom, ...] = Field(min_length=1)
    existential_vars: Tuple[Variable, ...] = ()
    head: Tuple[Atom, ...] = Field(min_length=1)
    quantified: bool = False

    @field_validator("universal_vars", "existential_vars")
    @classmethod
    def _sort_variables(cls, variables: Tuple[Variable, ...]) -> Tuple[Variable, ...]:
        if len(set(variables)) != len(variables):
            raise ValueError("variable quantified twice")
        return tuple(sorted(variables, key=variable_order))

    @model_validator(mode="after")
    def _check_quantifiers(self) -> "Rule":
        if not self.quantified:
            if self.universal_vars or self.existential_vars:
                raise ValueError("unquantified rule carries quantifier lists")
            return self

        shared = set(self.universal_vars) & set(self.existential_vars)
        if shared:
            names = ", ".join(sorted(v.name for v in shared))
            raise ValueError(f"variables quantified both ways: {names}")

        body_vars = set(atom_variables(self.body))
        head_only = set(atom_variables(self.head)) - body_vars
        if set(self.universal_vars) != body_vars:
            raise ValueError(
                f"universal variables {_names(self.universal_vars)} "
                f"do not match body variables {_names(canonical_variables(body_vars))}")
        if set(self.existential_vars) != head_only:
            raise ValueError(
                f"existential variables {_names(self.existential_vars)} "
                f"do not match head-only variables {_names(canonical_variables(head_only))}")
        return self


def _names(variables: Iterable[Variable]) -> str:
    return "{" + " ".join(v.name for v in variables) + "}"


def serialize(rule: Rule) -> str:
    """Render a rule in the canonical surface syntax"""
    body = f" {AND} ".join(str(atom) for atom in rule.body)
    head = f" {AND} ".join(str(atom) for atom in rule.head)

    if rule.quantified and rule.existential_vars:
        names = " ".join(v.name for v in rule.existential_vars)
        head = f"{EXISTS} {names} ( {head} )"
    elif len(rule.head) > 1:
        head = f"( {head} )"

    text = f"( {body} ) {IMPLIES} {head}"
    if rule.quantified:
        names = " ".join(v.name for v in rule.universal_vars)
        text = f"{FORALL} {names} ( {text} )"
    return text


def tokenize(text: str) -> FormulaTokens:
    """Whitespace split; the unit the metrics count in"""
    return text.split()


def strip_quantifiers(rule: Rule) -> Rule:
    return Rule(body=rule.body, head=rule.head, quantified=False)


def quantify(rule: Rule) -> Rule:
    """
    Universally quantify every body variable and existentially quantify
    every variable that occurs only in the head.
    """
    body_vars = atom_variables(rule.body)
    head_only = [v for v in atom_variables(rule.head) if v not in body_vars]
    return Rule(
        universal_vars=body_vars,
        body=rule.body,
        existential_vars=tuple(head_only),
        head=rule.head,
        quantified=True,
    )
