#!/usr/bin/env python3
"""
POS Tagger
Lexicon lookup with suffix fallback, assembled from nltk's backoff taggers:
closed-class words and the lexicon go through a UnigramTagger, unknown words
fall back to suffix patterns and finally to NN. PersonX/PersonY always get IND.
"""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional

from nltk.tag import DefaultTagger, RegexpTagger, UnigramTagger

logger = logging.getLogger(__name__)

PERSON_X = "PersonX"
PERSON_Y = "PersonY"
INDIVIDUALS = (PERSON_X, PERSON_Y)
IND = "IND"

DEFAULT_LEXICON = Path(__file__).resolve().parent.parent / "config" / "lexicon.tsv"

CLOSED_CLASS = {
    "DT": ["a", "an", "the", "this", "that", "these", "those", "some", "any",
           "every", "each", "another", "all", "no", "both", "either", "neither"],
    "CC": ["and", "or", "but", "nor"],
    "PRP": ["i", "me", "you", "he", "him", "she", "her", "it", "we", "us",
            "they", "them", "myself", "yourself", "himself", "herself",
            "itself", "ourselves", "themselves", "hers"],
    "PRP$": ["my", "your", "his", "its", "our", "their"],
    "IN": ["in", "on", "at", "with", "for", "from", "of", "about", "into",
           "over", "under", "after", "before", "by", "through", "during",
           "without", "around", "against", "between", "like", "near", "since",
           "than", "upon", "because", "if", "while", "onto", "towards", "toward"],
    "TO": ["to"],
    "MD": ["will", "would", "can", "could", "should", "may", "might", "must", "shall"],
}

# first match wins
SUFFIX_PATTERNS = [
    (r"^-?\d+([.,]\d+)?$", "CD"),
    (r".*ly$", "RB"),
    (r".*ing$", "VBG"),
    (r".*ed$", "VBD"),
    (r".*(ous|ful|ive|able|ible|less)$", "JJ"),
    (r".*ss$", "NN"),
    (r".*s$", "NNS"),
    (r".*y$", "JJ"),
]

TAGGER_MODES = ("lexicon", "perceptron")


class TaggedToken(NamedTuple):
    word: str
    tag: str


def load_lexicon(path: Path) -> Dict[str, str]:
    """Read word<TAB>TAG lines; blank lines and # comments are skipped"""
    lexicon: Dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ValueError(f"{path}:{line_no}: expected 'word<TAB>TAG'")
            lexicon[parts[0].lower()] = parts[1]
    return lexicon


class PosTagger:
    def __init__(self, mode: str = "lexicon", lexicon_path: Optional[Path] = None):
        """
        Build the tagger chain
        mode 'perceptron' defers to nltk.pos_tag (needs the nltk tagger data)
        """
        if mode not in TAGGER_MODES:
            raise ValueError(f"unknown tagger mode {mode!r}")
        self.mode = mode

        model: Dict[str, str] = {}
        for tag, words in CLOSED_CLASS.items():
            model.update((word, tag) for word in words)
        model.update(load_lexicon(DEFAULT_LEXICON))

        self.overrides: Dict[str, str] = {}
        if lexicon_path:
            for word, tag in load_lexicon(Path(lexicon_path)).items():
                if tag == IND:
                    logger.warning("Ignoring IND override for %r", word)
                    continue
                self.overrides[word] = tag
            model.update(self.overrides)

        backoff = RegexpTagger(SUFFIX_PATTERNS, backoff=DefaultTagger("NN"))
        self._tagger = UnigramTagger(model=model, backoff=backoff)

    def tag(self, words: Iterable[str]) -> List[TaggedToken]:
        """Tag normalized words"""
        words = list(words)
        if not words:
            return []

        if self.mode == "perceptron":
            import nltk
            try:
                tags = [tag for _, tag in nltk.pos_tag(words)]
            except LookupError:
                raise ValueError("perceptron tagger data is missing; run "
                                 "nltk.download('averaged_perceptron_tagger_eng')") from None
            tags = [self.overrides.get(w.lower(), t) for w, t in zip(words, tags)]
        else:
            tags = [tag for _, tag in self._tagger.tag([w.lower() for w in words])]

        return [TaggedToken(word, IND if word in INDIVIDUALS else tag)
                for word, tag in zip(words, tags)]


def parse_pretagged(text: str) -> List[TaggedToken]:
    """Split 'word/TAG word/TAG ...' into tokens; IND is forced on individuals"""
    tokens = []
    for item in text.split():
        word, sep, tag = item.rpartition("/")
        if not sep or not word or not tag:
            raise ValueError(f"token {item!r} is not in word/TAG form")
        if word in INDIVIDUALS:
            tag = IND
        elif tag == IND:
            raise ValueError(f"IND tag on non-individual {word!r}")
        tokens.append(TaggedToken(word, tag))
    return tokens
