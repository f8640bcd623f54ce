#!/usr/bin/env python3
"""
atomic2fol Commands
convert, eval, split, sample and stats, wired over the services
"""

import json
import logging
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, TextIO

from config.run_config import RunConfig
from config.settings import settings
from services.dataset import (DatasetError, DatasetPair, emit, filter_category, make_pair,
                              read_pairs, sample, split, write_metadata)
from services.ingest import (AtomicRecord, Category, IngestError, InferentialDimension,
                             filter_personz, read_atomic_csv, read_pretagged, read_tsv)
from services.metrics import MetricsInputError, evaluate, format_report, read_scoring_pairs
from services.translator import DISJUNCTION, EMPTY_VERB, translate_one
from utils.fol import tokenize
from utils.pos_tagger import PosTagger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3

DROP_REASONS = ("personz", DISJUNCTION, EMPTY_VERB, "multi_subject",
                "empty_inference", "malformed_row")
TRANSLATE_CHUNK = 256


class Command(NamedTuple):
    name: str
    description: str
    func: Callable[[RunConfig], int]


def sidecar_path(output: Path) -> Path:
    """Run report written next to a converted dataset"""
    return Path(f"{output}.meta.json")


def versions() -> Dict[str, str]:
    return {"tool": settings.TOOL_NAME, "tool_version": settings.TOOL_VERSION,
            "format_version": settings.FORMAT_VERSION}


class Atomic2FolCommands:
    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        """Commands write reports to stdout and status lines to stderr"""
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.commands = self._create_commands()

    def _create_commands(self) -> List[Command]:
        return [
            Command(
                name="convert",
                description="Translate Atomic records into (sentence, formula) pairs. "
                            "Writes a JSON-lines dataset plus a <output>.meta.json run report.",
                func=self.cmd_convert,
            ),
            Command(
                name="eval",
                description="Score predicted formulas against gold formulas "
                            "(formula accuracy, edit distance, token accuracy).",
                func=self.cmd_eval,
            ),
            Command(
                name="split",
                description="Shuffle a dataset with a seed and cut it into train.jsonl and eval.jsonl.",
                func=self.cmd_split,
            ),
            Command(
                name="sample",
                description="Draw a seeded sample of k pairs from a dataset.",
                func=self.cmd_sample,
            ),
            Command(
                name="stats",
                description="Count pairs per dimension and category and report mean lengths.",
                func=self.cmd_stats,
            ),
        ]

    def get_commands(self) -> List[Command]:
        return self.commands

    def run(self, config: RunConfig) -> int:
        """Dispatch to the configured command and map failures to exit codes"""
        command = next(c for c in self.commands if c.name == config.command)
        try:
            return command.func(config)
        except (IngestError, DatasetError, MetricsInputError, OSError, ValueError) as e:
            self._status(f"❌ {config.command} failed: {e}")
            return EXIT_INPUT

    def _status(self, message: str) -> None:
        print(message, file=self.stderr)

    # convert

    def _read_records(self, path: Path, config: RunConfig, tagger: Optional[PosTagger],
                      counters: Counter) -> List[AtomicRecord]:
        if config.input_format == "atomic-csv":
            with open(path, encoding="utf-8", newline="") as handle:
                return read_atomic_csv(handle, tagger, counters)
        with open(path, encoding="utf-8") as handle:
            if config.input_format == "tsv":
                return read_tsv(handle, tagger, counters)
            return read_pretagged(handle, counters)

    def _translate(self, records: List[AtomicRecord], config: RunConfig):
        translate = partial(translate_one, add_quantifiers=config.quantifiers)
        if config.workers > 1 and len(records) > TRANSLATE_CHUNK:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                return list(pool.map(translate, records, chunksize=TRANSLATE_CHUNK))
        return [translate(record) for record in records]

    def cmd_convert(self, config: RunConfig) -> int:
        counters: Counter = Counter()
        tagger = None
        if config.input_format != "pretagged":
            tagger = PosTagger(mode=config.tagger, lexicon_path=config.lexicon)

        records: List[AtomicRecord] = []
        for path in config.inputs:
            loaded = self._read_records(path, config, tagger, counters)
            if len(config.inputs) > 1:
                loaded = [r.model_copy(update={"id": f"{path.name}:{r.id}"}) for r in loaded]
            records.extend(loaded)
        logger.info("Read %d valid records", len(records))

        records, personz = filter_personz(records, keep=config.keep_personz)
        counters["personz_flagged" if config.keep_personz else "personz"] += personz

        before = len(records)
        records = filter_category(records, config.category)
        counters["other_category"] = before - len(records)

        pairs: List[DatasetPair] = []
        for record, rule, error in self._translate(records, config):
            if error is not None:
                counters[error.code] += 1
                continue
            pairs.append(make_pair(record, rule))

        with open(config.output, "w", encoding="utf-8", newline="\n") as handle:
            emit(pairs, "jsonl", handle)
        if config.sentences_output:
            with open(config.sentences_output, "w", encoding="utf-8", newline="\n") as sentences, \
                    open(config.formulas_output, "w", encoding="utf-8", newline="\n") as formulas:
                emit(pairs, "parallel", sentences, formulas, quantified=config.quantifiers)

        report = {
            **versions(),
            "config": config.model_dump(mode="json"),
            "seed": config.seed,
            "category": config.category,
            "records_read": counters["read"],
            "translated": len(pairs),
            "dropped": {reason: counters[reason] for reason in DROP_REASONS},
            "other_category": counters["other_category"],
            "unresolved_pronouns": counters["unresolved_pronoun"],
        }
        if config.keep_personz:
            report["personz_flagged"] = counters["personz_flagged"]
        with open(sidecar_path(config.output), "w", encoding="utf-8", newline="\n") as handle:
            write_metadata(handle, report)

        if not pairs:
            self._status(f"❌ No record could be translated ({counters['read']} read)")
            return EXIT_EMPTY
        self._status(f"✅ Converted {len(pairs)} of {counters['read']} records to {config.output}")
        return EXIT_OK

    # eval

    @staticmethod
    def _read_lines(path: Path) -> List[str]:
        with open(path, encoding="utf-8") as handle:
            return handle.read().splitlines()

    def cmd_eval(self, config: RunConfig) -> int:
        if config.pred is None:
            with open(config.pairs, encoding="utf-8") as handle:
                predictions, golds = read_scoring_pairs(handle)
        else:
            predictions = self._read_lines(config.pred)
            if config.gold:
                golds = self._read_lines(config.gold)
            else:
                with open(config.pairs, encoding="utf-8") as handle:
                    golds = [p.formula if config.quantifiers else p.formula_nq
                             for p in read_pairs(handle)]

        report = evaluate(predictions, golds, keep_pairs=config.details is not None)
        print(format_report(report), file=self.stdout)

        if config.report:
            with open(config.report, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(report.model_dump_json(exclude={"pairs"}, indent=2) + "\n")
        if config.details:
            with open(config.details, "w", encoding="utf-8", newline="\n") as handle:
                for score in report.pairs:
                    handle.write(score.model_dump_json() + "\n")
        return EXIT_OK

    # split / sample / stats

    @staticmethod
    def _load_pairs(config: RunConfig) -> List[DatasetPair]:
        pairs: List[DatasetPair] = []
        for path in config.inputs:
            with open(path, encoding="utf-8") as handle:
                pairs.extend(read_pairs(handle))
        return filter_category(pairs, config.category)

    def cmd_split(self, config: RunConfig) -> int:
        pairs = self._load_pairs(config)
        train, held_out = split(pairs, config.fraction, config.seed)

        output_dir = Path(config.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        for name, part in (("train.jsonl", train), ("eval.jsonl", held_out)):
            with open(output_dir / name, "w", encoding="utf-8", newline="\n") as handle:
                emit(part, "jsonl", handle)
        with open(output_dir / "metadata.json", "w", encoding="utf-8", newline="\n") as handle:
            write_metadata(handle, {
                **versions(),
                "seed": config.seed,
                "fraction": config.fraction,
                "category": config.category,
                "sources": [str(path) for path in config.inputs],
                "counts": {"total": len(pairs), "train": len(train), "eval": len(held_out)},
            })
        self._status(f"✅ Split {len(pairs)} pairs into {len(train)} train / "
                     f"{len(held_out)} eval in {output_dir}")
        return EXIT_OK

    def cmd_sample(self, config: RunConfig) -> int:
        pairs = self._load_pairs(config)
        chosen = sample(pairs, config.sample_size, config.seed)
        with open(config.output, "w", encoding="utf-8", newline="\n") as handle:
            emit(chosen, "jsonl", handle)
        with open(sidecar_path(config.output), "w", encoding="utf-8", newline="\n") as handle:
            write_metadata(handle, {
                **versions(),
                "seed": config.seed,
                "k": config.sample_size,
                "category": config.category,
                "sources": [str(path) for path in config.inputs],
                "counts": {"available": len(pairs), "sampled": len(chosen)},
            })
        self._status(f"✅ Sampled {len(chosen)} of {len(pairs)} pairs to {config.output}")
        return EXIT_OK

    @staticmethod
    def _removed_personz(paths: List[Path]) -> Optional[int]:
        """Sum the PersonZ drops recorded in convert sidecars, if any exist"""
        total = None
        for path in paths:
            meta = sidecar_path(path)
            if not meta.is_file():
                continue
            with open(meta, encoding="utf-8") as handle:
                dropped = json.load(handle).get("dropped", {})
            total = (total or 0) + int(dropped.get("personz", 0))
        return total

    def collect_stats(self, config: RunConfig) -> dict:
        pairs = self._load_pairs(config)
        n = len(pairs)
        by_dimension = Counter(p.dimension for p in pairs)
        by_category = Counter(p.category for p in pairs)

        def mean(values):
            values = list(values)
            return sum(values) / len(values) if values else 0.0

        return {
            "total": n,
            "dimensions": {d.value: by_dimension[d] for d in InferentialDimension},
            "categories": {c.value: by_category[c] for c in Category},
            "mean_formula_tokens": mean(len(tokenize(p.formula)) for p in pairs),
            "mean_formula_nq_tokens": mean(len(tokenize(p.formula_nq)) for p in pairs),
            "mean_sentence_tokens": mean(len(p.sentence.split()) for p in pairs),
            "removed_personz": self._removed_personz(config.inputs),
        }

    def cmd_stats(self, config: RunConfig) -> int:
        stats = self.collect_stats(config)
        rows = [("Pairs", stats["total"])]
        rows += [(f"  {name}", count) for name, count in stats["categories"].items()]
        rows += [(f"    {name}", count) for name, count in stats["dimensions"].items()]
        rows += [
            ("Mean formula tokens", f"{stats['mean_formula_tokens']:.2f}"),
            ("Mean unquantified tokens", f"{stats['mean_formula_nq_tokens']:.2f}"),
            ("Mean sentence tokens", f"{stats['mean_sentence_tokens']:.2f}"),
            ("Removed PersonZ records",
             "n/a" if stats["removed_personz"] is None else stats["removed_personz"]),
        ]
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name.ljust(width)}  {value}", file=self.stdout)

        if config.report:
            with open(config.report, "w", encoding="utf-8", newline="\n") as handle:
                write_metadata(handle, stats)
        return EXIT_OK
