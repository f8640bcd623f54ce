import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings:
    # Tool identity
    TOOL_NAME = "atomic2fol"
    TOOL_VERSION = "1.0.0"
    FORMAT_VERSION = "1"

    # Input
    INPUT_FORMAT = os.getenv("ATOMIC2FOL_INPUT_FORMAT", "atomic-csv")
    TAGGER = os.getenv("ATOMIC2FOL_TAGGER", "lexicon")
    LEXICON = os.getenv("ATOMIC2FOL_LEXICON") or None

    # Dataset generation (raw strings, validated by RunConfig)
    CATEGORY = os.getenv("ATOMIC2FOL_CATEGORY", "All")
    SEED = os.getenv("ATOMIC2FOL_SEED", "42")
    SPLIT_FRACTION = os.getenv("ATOMIC2FOL_SPLIT_FRACTION", "0.85")
    WORKERS = os.getenv("ATOMIC2FOL_WORKERS", "1")

    LOG_LEVEL = os.getenv("ATOMIC2FOL_LOG_LEVEL", "WARNING")

    # Available choices
    INPUT_FORMATS = ["atomic-csv", "tsv", "pretagged"]
    TAGGER_MODES = ["lexicon", "perceptron"]
    CATEGORIES = ["All", "Persona", "Mental-State", "Event"]


settings = Settings()
