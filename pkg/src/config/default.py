from pathlib import Path
from typing import FrozenSet, Tuple

CONFIG_DIR = Path(__file__).parent
DEFAULT_RULES_PATH = CONFIG_DIR / "dependency_patterns.json"
DEFAULT_GAZETTEER_PATH = CONFIG_DIR / "units.tsv"

DEFAULT_ANNOTATION_TIMEOUT_MS = 10_000
DEFAULT_ANNOTATION_RETRIES = 3

# Descriptor pass: dependencies from a related word (head) to its modifiers
DESCRIPTOR_DEPS: FrozenSet[str] = frozenset({"amod", "compound", "nummod", "advmod"})

# Dependents of the value token reported as descriptors of the quantity itself
VALUE_MODIFIER_DEPS: FrozenSet[str] = frozenset({"advmod", "quantmod"})

# Verb expansion defaults, used when a rule omits allowedDeps/chainDeps/maxDepth
DEFAULT_ALLOWED_DEPS: Tuple[str, ...] = ("nsubj", "nsubjpass", "dobj", "iobj", "csubj")
DEFAULT_CHAIN_DEPS: Tuple[str, ...] = ("conj", "xcomp", "ccomp", "parataxis")
DEFAULT_MAX_DEPTH = 3

# Only noun tokens are returned by a verb expansion (no coreference for pronouns)
CANDIDATE_POS_PREFIX = "NN"
VERB_POS_PREFIX = "VB"

# Connector key matching any enhanced connector word
WILDCARD_CONNECTOR = "*"

# Base types carrying a meaningful connector in the output ("conj:and" -> "and")
CONNECTOR_BASE_TYPES: FrozenSet[str] = frozenset({"conj"})

# Stanford / Universal Dependencies base labels accepted by rule validation
KNOWN_DEPENDENCIES: FrozenSet[str] = frozenset({
    "acl", "acomp", "advcl", "advmod", "agent", "amod", "appos", "aux", "auxpass",
    "case", "cc", "ccomp", "clf", "compound", "conj", "cop", "csubj", "csubjpass",
    "dep", "det", "discourse", "dislocated", "dobj", "expl", "fixed", "flat",
    "goeswith", "iobj", "list", "mark", "mwe", "neg", "nmod", "npadvmod", "nsubj",
    "nsubjpass", "num", "nummod", "obj", "obl", "orphan", "parataxis", "pcomp",
    "pobj", "poss", "possessive", "preconj", "predet", "prep", "prt", "punct",
    "quantmod", "rcmod", "ref", "reparandum", "root", "tmod", "vocative", "xcomp",
})

STATS_CSV_HEADER = ("bin", "count")
