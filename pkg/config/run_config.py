"""
Run configuration
Effective settings for one CLI run. Precedence: command-line flag >
config file (--config, env-style ATOMIC2FOL_* keys) > environment > defaults.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, model_validator

from config.settings import settings

logger = logging.getLogger(__name__)

CONFIG_KEYS = {
    "ATOMIC2FOL_INPUT_FORMAT": "input_format",
    "ATOMIC2FOL_TAGGER": "tagger",
    "ATOMIC2FOL_LEXICON": "lexicon",
    "ATOMIC2FOL_CATEGORY": "category",
    "ATOMIC2FOL_SEED": "seed",
    "ATOMIC2FOL_SPLIT_FRACTION": "fraction",
    "ATOMIC2FOL_SAMPLE": "sample_size",
    "ATOMIC2FOL_QUANTIFIERS": "quantifiers",
    "ATOMIC2FOL_WORKERS": "workers",
}


class RunConfig(BaseModel):
    command: Literal["convert", "eval", "split", "sample", "stats"]
    inputs: List[Path] = []
    input_format: Literal["atomic-csv", "tsv", "pretagged"] = "atomic-csv"
    quantifiers: bool = True
    category: Literal["All", "Persona", "Mental-State", "Event"] = "All"
    seed: int = Field(42, ge=0, lt=2 ** 64)
    fraction: float = Field(0.85, gt=0.0, lt=1.0)
    sample_size: Optional[int] = Field(None, ge=0)
    tagger: Literal["lexicon", "perceptron"] = "lexicon"
    lexicon: Optional[Path] = None
    keep_personz: bool = False
    workers: int = Field(1, ge=1)

    output: Optional[Path] = None
    sentences_output: Optional[Path] = None
    formulas_output: Optional[Path] = None
    output_dir: Optional[Path] = None
    report: Optional[Path] = None
    details: Optional[Path] = None

    pred: Optional[Path] = None
    gold: Optional[Path] = None
    pairs: Optional[Path] = None

    @model_validator(mode="after")
    def _check_paths(self) -> "RunConfig":
        missing = []
        if self.command in ("convert", "split", "sample", "stats") and not self.inputs:
            missing.append("input")
        if self.command in ("convert", "sample") and not self.output:
            missing.append("--output")
        if self.command == "split" and not self.output_dir:
            missing.append("--output-dir")
        if self.command == "sample" and self.sample_size is None:
            missing.append("--sample")
        if self.command == "eval" and not self.pairs and not (self.pred and self.gold):
            missing.append("--pred with --gold, or --pairs")
        if (self.sentences_output is None) != (self.formulas_output is None):
            missing.append("both --sentences and --formulas")
        if missing:
            raise ValueError(f"{self.command} needs {', '.join(missing)}")
        return self


def _defaults() -> Dict[str, Any]:
    return {
        "input_format": settings.INPUT_FORMAT,
        "tagger": settings.TAGGER,
        "lexicon": settings.LEXICON,
        "category": settings.CATEGORY,
        "seed": settings.SEED,
        "fraction": settings.SPLIT_FRACTION,
        "workers": settings.WORKERS,
    }


def read_config_file(path: Path) -> Dict[str, Any]:
    """Map an env-style config file onto RunConfig field names"""
    if not Path(path).is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    values = {}
    for key, value in dotenv_values(path).items():
        if key not in CONFIG_KEYS:
            logger.warning("Ignoring unknown config key %s", key)
            continue
        if value is not None and value != "":
            values[CONFIG_KEYS[key]] = value
    return values


def load_run_config(command: str, cli_values: Dict[str, Any],
                    config_path: Optional[Path] = None) -> RunConfig:
    values = _defaults()
    if config_path:
        values.update(read_config_file(config_path))
    values.update({key: value for key, value in cli_values.items() if value is not None})
    values = {key: value for key, value in values.items() if value is not None}
    return RunConfig(command=command, **values)
