"""PERSCRIBE constants

Parameter inventory, thresholds and defaults shared across modules.
"""

from pathlib import Path

# Data files carry a schema_version; files whose major version differs are rejected
SCHEMA_VERSION = "1.0"

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_CONFIG_PATH = DATA_DIR / "config.json"
CONFIG_ENV_VAR = "PERSCRIBE_CONFIG"

# Seeds are 64-bit unsigned integers
MAX_SEED = 2 ** 64 - 1

# =============================================================================
# Personality
# =============================================================================

BFI_ITEM_COUNT = 44
LIKERT_MIN = 1
LIKERT_MAX = 5
LIKERT_REVERSE_SUM = LIKERT_MIN + LIKERT_MAX  # reversed item: x -> 6 - x

DEFAULT_NORM_BAND = 0.5  # Medium = mean +/- band * sd
DEFAULT_TREE_DEPTH = 4
DEFAULT_TEST_FRACTION = 0.3
DEFAULT_BASELINE_TRIALS = 200
MIN_SYNTH_SIZE = 20

# Synthetic adoption counts: per-category mean and spread before planting correlations
SYNTH_COUNT_MEAN = 8.0
SYNTH_COUNT_SD = 3.0

# =============================================================================
# Generation parameters (67)
# =============================================================================

CONTENT_PARAMETERS = (
    "VERBOSITY",
    "RESTATEMENTS",
    "REPETITIONS",
    "CONTENT POLARITY",
    "REPETITIONS POLARITY",
    "CONCESSIONS",
    "CONCESSIONS POLARITY",
    "POLARISATION",
    "POSITIVE CONTENT FIRST",
)

TEMPLATE_PARAMETERS = (
    "SELF-REFERENCES",
    "CLAIM COMPLEXITY",
    "CLAIM POLARITY",
)

AGGREGATION_PARAMETERS = (
    "PERIOD",
    "RELATIVE CLAUSE",
    "WITH CUE WORD",
    "CONJUNCTION",
    "MERGE",
    "ALSO CUE WORD",
    "CONTRAST - CUE WORD",
    "JUSTIFY - CUE WORD",
    "CONCEDE - CUE WORD",
    "MERGE WITH COMMA",
    "CONJ. WITH ELLIPSIS",
)

# Relation-specific cells of the clause-combining table
AGGREGATION_RELATION_PARAMETERS = (
    "JUSTIFY - WITH CUE WORD",
    "JUSTIFY - RELATIVE CLAUSE",
    "JUSTIFY - SO CUE WORD",
    "JUSTIFY - BECAUSE CUE WORD",
    "JUSTIFY - SINCE CUE WORD",
    "JUSTIFY - PERIOD",
    "CONTRAST - MERGE",
    "CONTRAST - HOWEVER CUE WORD",
    "CONTRAST - WHILE CUE WORD",
    "CONTRAST - CONJUNCTION",
    "CONTRAST - BUT CUE WORD",
    "CONTRAST - ON THE OTHER HAND CUE WORD",
    "CONTRAST - PERIOD",
    "INFER - MERGE",
    "INFER - WITH CUE WORD",
    "INFER - RELATIVE CLAUSE",
    "INFER - ALSO CUE WORD",
    "INFER - CONJUNCTION",
    "INFER - PERIOD",
    "CONCEDE - EVEN IF CUE WORD",
    "CONCEDE - ALTHOUGH CUE WORD",
    "CONCEDE - BUT/THOUGH CUE WORD",
    "RESTATE - CONJUNCTION",
    "RESTATE - MERGE WITH COMMA",
    "RESTATE - OBJECT ELLIPSIS",
)

MARKER_PARAMETERS = (
    "SUBJECT IMPLICITNESS",
    "NEGATION",
    "SOFTENER HEDGES",
    "EMPHASIZER HEDGES",
    "ACKNOWLEDGMENTS",
    "FILLED PAUSES",
    "EXCLAMATION",
    "EXPLETIVES",
    "NEAR-EXPLETIVES",
    "COMPETENCE MITIGATION",
    "TAG QUESTION",
    "STUTTERING",
    "CONFIRMATION",
    "INITIAL REJECTION",
    "IN-GROUP MARKER",
    "PRONOMINALIZATION",
)

LEXICAL_PARAMETERS = (
    "LEXICAL FREQUENCY",
    "WORD LENGTH",
    "VERB STRENGTH",
)

PARAMETER_GROUPS = {
    "content": CONTENT_PARAMETERS,
    "template": TEMPLATE_PARAMETERS,
    "aggregation": AGGREGATION_PARAMETERS,
    "aggregation_relations": AGGREGATION_RELATION_PARAMETERS,
    "markers": MARKER_PARAMETERS,
    "lexical": LEXICAL_PARAMETERS,
}

PARAMETER_NAMES = tuple(
    name for group in PARAMETER_GROUPS.values() for name in group
)

NEUTRAL_PARAMETER = 0.5

# =============================================================================
# Marker firing
# =============================================================================

MARKER_FIRE_THRESHOLD = 0.5      # above: fires deterministically
MARKER_PROBABLE_THRESHOLD = 0.3  # above (up to 0.5): fires on a seeded draw
MARKER_BAND_CEILING = 0.1        # firing probability at exactly 0.5

# Content parameters duplicate or concede above this level
CONTENT_FIRE_THRESHOLD = 0.5

# =============================================================================
# Readability
# =============================================================================

COMPLEX_WORD_SYLLABLES = 3
ELLIPSIS = "..."
