import os

from dotenv import load_dotenv

load_dotenv(override=False)

# Combinatorics guard for partitions_of.
MAX_PARTITION_SIZE = 20

# Weights accepted by newform_counts.
MIN_WEIGHT = 2
MAX_WEIGHT = 200

# q-expansion precision: P = PRECISION_FACTOR * dim + PRECISION_SLACK.
PRECISION_FACTOR = 2
PRECISION_SLACK = 10

# Identity-sweep defaults.
DEFAULT_RMAX = 40
DEFAULT_Q_VALUES = (2, 3, 4, 5, 7, 8, 9)
DIM_CHECK_Q_RANGE = (2, 64)
OLD_NEW_KMAX = 100
AL_SPLIT_RANGE = (4, 60)
LFACTOR_PRIMES = (2, 3, 5)

# Package data.
DATA_PACKAGE = "parahoric.data"
CATALOGUE_FILE = "catalogue.json"
REPORT_SCHEMA_FILE = "report_schema.json"
CATALOGUE_VERSION = 1

DEFAULT_CONFIG_FILE = "parahoric.yaml"

OUTPUT_FORMATS = ("json", "tsv", "pretty")


def color_enabled() -> bool:
    """Output colour toggle; the only environment variable that affects stdout."""
    if os.getenv("NO_COLOR"):
        return False
    return os.getenv("PARAHORIC_COLOR", "1").lower() in ("true", "1", "yes")


def precision_for(dim: int) -> int:
    return PRECISION_FACTOR * dim + PRECISION_SLACK
