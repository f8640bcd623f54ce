#!/usr/bin/env python3
"""
Formula Metrics
FA: exact-match formula accuracy, ED: mean token edit distance,
TA: mean positional token accuracy
"""

import json
import logging
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import Levenshtein
from pydantic import BaseModel, Field

from utils.fol import FormulaTokens, tokenize
from utils.formula_parser import default_parser

logger = logging.getLogger(__name__)


class MetricsInputError(ValueError):
    """Prediction and gold sets that cannot be compared"""


class PairScore(BaseModel):
    index: int
    exact: bool
    ed: int = Field(ge=0)
    ta: float = Field(ge=0.0, le=1.0)


class EvalReport(BaseModel):
    n: int = Field(ge=1)
    fa: float = Field(ge=0.0, le=1.0)
    ed: float = Field(ge=0.0)
    ta: float = Field(ge=0.0, le=1.0)
    ta_micro: float = Field(ge=0.0, le=1.0)
    well_formed: int = Field(ge=0)
    pairs: Optional[List[PairScore]] = None


def _as_codepoints(pred: Sequence[str], gold: Sequence[str]) -> Tuple[str, str]:
    """Map each distinct token onto one character so Levenshtein sees tokens"""
    index: Dict[str, str] = {}
    for token in list(pred) + list(gold):
        if token not in index:
            index[token] = chr(0xE000 + len(index))
    return ("".join(index[t] for t in pred), "".join(index[t] for t in gold))


def edit_distance(pred: FormulaTokens, gold: FormulaTokens) -> int:
    """Unit-cost insert/delete/substitute distance over tokens"""
    pred_chars, gold_chars = _as_codepoints(pred, gold)
    return Levenshtein.distance(pred_chars, gold_chars)


def _matches(pred: FormulaTokens, gold: FormulaTokens) -> int:
    return sum(1 for p, g in zip(pred, gold) if p == g)


def token_accuracy(pred: FormulaTokens, gold: FormulaTokens) -> float:
    """Share of positions holding the gold token, over the longer length"""
    longest = max(len(pred), len(gold))
    if longest == 0:
        return 1.0
    return _matches(pred, gold) / longest


def _check_parallel(preds: Sequence, golds: Sequence) -> None:
    if len(preds) != len(golds):
        raise MetricsInputError(
            f"{len(preds)} predictions but {len(golds)} gold formulas")


def formula_accuracy(preds: Sequence[FormulaTokens], golds: Sequence[FormulaTokens]) -> float:
    _check_parallel(preds, golds)
    if not preds:
        raise MetricsInputError("nothing to score")
    return sum(1 for p, g in zip(preds, golds) if list(p) == list(g)) / len(preds)


def evaluate(pred_lines: Sequence[str], gold_lines: Sequence[str],
             keep_pairs: bool = False) -> EvalReport:
    """Score parallel prediction/gold formula lines"""
    _check_parallel(pred_lines, gold_lines)
    if not pred_lines:
        raise MetricsInputError("nothing to score")

    preds = [tokenize(line) for line in pred_lines]
    golds = [tokenize(line) for line in gold_lines]

    scores: List[PairScore] = []
    matched = longest_total = 0
    for index, (pred, gold) in enumerate(zip(preds, golds)):
        matched += _matches(pred, gold)
        longest_total += max(len(pred), len(gold))
        scores.append(PairScore(index=index, exact=pred == gold,
                                ed=edit_distance(pred, gold),
                                ta=token_accuracy(pred, gold)))

    n = len(scores)
    parser = default_parser()
    well_formed = sum(1 for line in pred_lines if parser.is_well_formed(line))
    if well_formed < n:
        logger.warning("%d of %d predictions do not parse as rules", n - well_formed, n)

    report = EvalReport(
        n=n,
        fa=formula_accuracy(preds, golds),
        ed=sum(s.ed for s in scores) / n,
        ta=sum(s.ta for s in scores) / n,
        ta_micro=matched / longest_total if longest_total else 1.0,
        well_formed=well_formed,
        pairs=scores if keep_pairs else None,
    )
    logger.info("Scored %d pairs: FA %.4f ED %.4f TA %.4f", n, report.fa, report.ed, report.ta)
    return report


def read_scoring_pairs(stream: TextIO) -> Tuple[List[str], List[str]]:
    """Prediction and gold columns from {"pred": ..., "gold": ...} JSON lines"""
    preds: List[str] = []
    golds: List[str] = []
    for line_no, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
            preds.append(str(row["pred"]))
            golds.append(str(row["gold"]))
        except (ValueError, KeyError, TypeError):
            raise MetricsInputError(f"line {line_no}: expected an object with pred and gold") from None
    return preds, golds


def format_report(report: EvalReport) -> str:
    """Human-readable table"""
    rows = [
        ("Pairs", f"{report.n}"),
        ("FA (formula accuracy)", f"{report.fa * 100:.2f}%"),
        ("ED (mean edit distance)", f"{report.ed:.6g}"),
        ("TA (token accuracy)", f"{report.ta * 100:.2f}%"),
        ("TA micro", f"{report.ta_micro * 100:.2f}%"),
        ("Well-formed predictions", f"{report.well_formed}/{report.n}"),
    ]
    width = max(len(name) for name, _ in rows)
    lines = [f"{'Metric'.ljust(width)}  Value", "-" * (width + 12)]
    lines += [f"{name.ljust(width)}  {value}" for name, value in rows]
    return "\n".join(lines)
