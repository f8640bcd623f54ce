#!/usr/bin/env python3
"""
Formula Parser
LALR grammar for the canonical rule syntax, built on lark
"""

import logging
from typing import Dict, List, Optional, Tuple

from lark import Lark, Transformer
from lark.exceptions import (UnexpectedCharacters, UnexpectedEOF,
                             UnexpectedInput, UnexpectedToken, VisitError)
from pydantic import ValidationError

from utils.fol import Atom, Rule, Variable, variable

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    start: quantified | bare

    quantified: _FORALL variables "(" "(" conj ")" "->" head ")"
    bare: "(" conj ")" "->" head

    head: conj                               -> plain_head
        | "(" conj ")"                       -> plain_head
        | _EXISTS variables "(" conj ")"     -> existential_head

    conj: atom ("&" atom)*
    atom: WORD+ ARGS
    variables: VAR+

    _FORALL.2: /A(?=\s)/
    _EXISTS.2: /E(?=\s)/
    VAR: /[a-z][a-z0-9]*/
    ARGS: /\([a-z][a-z0-9]*(,[a-z][a-z0-9]*)*\)/
    WORD: /(?!->)[^\s()&]+/

    %import common.WS
    %ignore WS
"""


class FormulaSyntaxError(ValueError):
    """Malformed formula text; position is a 0-based character offset"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FormulaSemanticError(ValueError):
    """Well-formed text whose quantifiers disagree with its atoms"""


class _RuleBuilder(Transformer):
    def start(self, items):
        return items[0]

    def variables(self, items) -> List[Variable]:
        return [variable(str(token)) for token in items]

    def atom(self, items) -> Atom:
        *words, args = items
        names = str(args)[1:-1].split(",")
        return Atom(predicate=tuple(str(w) for w in words),
                    args=tuple(variable(name) for name in names))

    def conj(self, items) -> List[Atom]:
        return list(items)

    def plain_head(self, items) -> Tuple[List[Variable], List[Atom]]:
        return [], items[0]

    def existential_head(self, items) -> Tuple[List[Variable], List[Atom]]:
        return items[0], items[1]

    def quantified(self, items) -> Rule:
        universal, body, (existential, head) = items
        return Rule(universal_vars=universal, body=body,
                    existential_vars=existential, head=head, quantified=True)

    def bare(self, items) -> Rule:
        body, (existential, head) = items
        if existential:
            raise FormulaSemanticError(
                "existential prefix on a formula without universal prefix")
        return Rule(body=body, head=head, quantified=False)


class FormulaParser:
    def __init__(self):
        """Initialize the formula parser"""
        self._lark = Lark(GRAMMAR, parser="lalr")
        self._builder = _RuleBuilder()
        self.cache: Dict[str, Rule] = {}

    def parse(self, text: str) -> Rule:
        """
        Parse one formula line into a Rule
        Raises FormulaSyntaxError or FormulaSemanticError
        """
        text = text.strip()
        if text in self.cache:
            return self.cache[text]

        try:
            tree = self._lark.parse(text)
        except UnexpectedInput as exc:
            raise self._syntax_error(text, exc) from None

        try:
            rule = self._builder.transform(tree)
        except VisitError as exc:
            cause = exc.orig_exc
            if isinstance(cause, FormulaSemanticError):
                raise cause from None
            if isinstance(cause, ValidationError):
                message = "; ".join(err["msg"] for err in cause.errors())
                raise FormulaSemanticError(message) from None
            raise

        self.cache[text] = rule
        return rule

    def is_well_formed(self, text: str) -> bool:
        try:
            self.parse(text)
        except (FormulaSyntaxError, FormulaSemanticError):
            return False
        return True

    def _syntax_error(self, text: str, exc: UnexpectedInput) -> FormulaSyntaxError:
        """Map a lark error onto a positioned syntax error"""
        position: Optional[int] = None
        if isinstance(exc, UnexpectedEOF):
            position = len(text)
        elif isinstance(exc, UnexpectedToken):
            position = exc.token.start_pos
            if exc.token.type == "$END":
                position = len(text)
        elif isinstance(exc, UnexpectedCharacters):
            position = exc.pos_in_stream
        if position is None:
            position = len(text)

        rest = text[position:]
        if position >= len(text):
            message = "unexpected end of formula (unbalanced parentheses?)"
        elif rest.startswith("()"):
            message = "empty atom argument"
        elif rest.startswith(")"):
            message = "unexpected ')'"
        else:
            fragment = rest.split(None, 1)[0]
            message = f"unexpected {fragment!r}"
        logger.debug("syntax error in %r: %s", text, exc)
        return FormulaSyntaxError(message, position)


_default_parser: Optional[FormulaParser] = None


def default_parser() -> FormulaParser:
    """Shared module-level parser"""
    global _default_parser
    if _default_parser is None:
        _default_parser = FormulaParser()
    return _default_parser


def parse(text: str) -> Rule:
    return default_parser().parse(text)
