"""PERSCRIBE configuration

Run configuration, JSON document loading with schema version checks, and the
bundle of parsed banks every generation run needs.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Optional, Union

from packaging.version import InvalidVersion, Version

from .concern import default_ranking
from .constants import (
    CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH, DEFAULT_NORM_BAND, DEFAULT_TREE_DEPTH, MAX_SEED,
    SCHEMA_VERSION,
)
from .content import FeatureLexicon
from .lexical import SynonymLexicon
from .markers import MarkerBank
from .models import AttentionRanking, NormTable, ScoringKey, TraitTarget
from .params import TraitParamMap
from .personality import CorrelationPattern, PersonalityParser
from .templates import TemplateBank
from .errors import ConfigurationError, ValidationError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "text")

# Run-config keys naming data files, with the attribute each fills
PATH_KEYS = (
    "lexicon",
    "templates",
    "markers",
    "synonyms",
    "trait_param_map",
    "scoring_key",
    "norms",
    "default_ranking",
    "stopwords",
    "correlation_spec",
    "traits",
)


def check_schema_version(data: dict, source: Union[str, Path], required: bool = True):
    """Reject documents whose schema major version differs from ours.

    Raises:
        ConfigurationError: Missing (when required), unparsable or incompatible version
    """
    value = data.get("schema_version") if isinstance(data, dict) else None
    if value is None:
        if required:
            raise ConfigurationError(f"{source}: missing schema_version")
        return
    try:
        version = Version(str(value))
    except InvalidVersion:
        raise ConfigurationError(f"{source}: invalid schema_version {value!r}")
    if version.major != Version(SCHEMA_VERSION).major:
        raise ConfigurationError(
            f"{source}: unsupported schema_version {value} (this version reads {SCHEMA_VERSION})"
        )


def load_json_document(path: Union[str, Path], require_version: bool = False):
    """Read a UTF-8 JSON file.

    Raises:
        OSError: The file cannot be read
        ValidationError: Not valid JSON, reported as path:line:col: message
        ConfigurationError: Incompatible schema_version
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")
    check_schema_version(data, path, required=require_version)
    return data


def _load_bank(path: Path) -> dict:
    try:
        data = load_json_document(path, require_version=True)
    except OSError as e:
        raise ConfigurationError(f"{path}: {e.strerror or e}")
    except ValidationError as e:
        raise ConfigurationError(str(e))
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path}: expected a JSON object")
    return data


@dataclass
class RunConfig:
    """Resolved data-file paths and run options"""
    lexicon: Path
    templates: Path
    markers: Path
    synonyms: Path
    trait_param_map: Path
    scoring_key: Path
    norms: Path
    default_ranking: Path
    stopwords: Path
    correlation_spec: Path
    traits: Path
    seed: Optional[int] = None
    output_format: str = "json"
    band: float = DEFAULT_NORM_BAND
    max_tree_depth: int = DEFAULT_TREE_DEPTH
    source: Optional[Path] = field(default=None, compare=False)

    def __post_init__(self):
        """Validate run options"""
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(
                f"Unknown output format {self.output_format!r} (expected one of {', '.join(OUTPUT_FORMATS)})"
            )
        if self.seed is not None and not 0 <= self.seed <= MAX_SEED:
            raise ConfigurationError(f"Seed out of range: {self.seed} (must be 0-{MAX_SEED})")
        if self.band <= 0:
            raise ConfigurationError(f"Norm band must be positive: {self.band}")
        if self.max_tree_depth < 1:
            raise ConfigurationError(f"Tree depth must be at least 1: {self.max_tree_depth}")

    @classmethod
    def from_dict(cls, data: dict, base: Path, source: Optional[Path] = None) -> "RunConfig":
        """Build a config from a run-config document; relative paths are taken from base"""
        missing = [key for key in PATH_KEYS if key not in data]
        if missing:
            raise ConfigurationError(f"{source or base}: missing keys: {', '.join(missing)}")
        paths = {key: (base / str(data[key])).resolve() for key in PATH_KEYS}
        seed = data.get("seed")
        try:
            return cls(
                **paths,
                seed=int(seed) if seed is not None else None,
                output_format=str(data.get("output_format", "json")),
                band=float(data.get("band", DEFAULT_NORM_BAND)),
                max_tree_depth=int(data.get("max_tree_depth", DEFAULT_TREE_DEPTH)),
                source=source,
            )
        except ConfigurationError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"{source or base}: {e}")


def resolve_config_path(cli_path: Optional[Union[str, Path]] = None) -> Path:
    """--config wins over the environment, which wins over the shipped config"""
    if cli_path:
        return Path(cli_path)
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return Path(env_path)
    return DEFAULT_CONFIG_PATH


def load_run_config(cli_path: Optional[Union[str, Path]] = None) -> RunConfig:
    path = resolve_config_path(cli_path)
    data = _load_bank(path)
    config = RunConfig.from_dict(data, path.parent, source=path)
    logger.info(f"Using run config {path}")
    return config


@dataclass(frozen=True)
class Resources:
    """Every bank and table a run reads, parsed once"""
    lexicon: FeatureLexicon
    templates: TemplateBank
    markers: MarkerBank
    synonyms: SynonymLexicon
    param_map: TraitParamMap
    scoring_key: ScoringKey
    norms: NormTable
    default_ranking: AttentionRanking
    stopwords: FrozenSet[str]
    correlation_spec: Dict[TraitTarget, CorrelationPattern]
    traits: dict

    @classmethod
    def load(cls, config: RunConfig) -> "Resources":
        """Parse every data file named by the config.

        Raises:
            ConfigurationError: A file is missing, malformed or of another schema
        """
        documents = {key: _load_bank(getattr(config, key)) for key in PATH_KEYS}
        ranking = documents["default_ranking"]
        resources = cls(
            lexicon=FeatureLexicon.from_dict(documents["lexicon"]),
            templates=TemplateBank.from_dict(documents["templates"]),
            markers=MarkerBank.from_dict(documents["markers"]),
            synonyms=SynonymLexicon.from_dict(documents["synonyms"]),
            param_map=TraitParamMap.from_dict(documents["trait_param_map"]),
            scoring_key=PersonalityParser.parse_scoring_key(documents["scoring_key"]),
            norms=PersonalityParser.parse_norm_table(documents["norms"]),
            default_ranking=default_ranking(ranking.get("levels", ranking)),
            stopwords=frozenset(w.lower() for w in documents["stopwords"].get("words", [])),
            correlation_spec=PersonalityParser.parse_correlation_spec(documents["correlation_spec"]),
            traits=documents["traits"].get("traits", {}),
        )
        logger.info(
            f"Loaded {len(resources.lexicon.entries)} lexicon entries, "
            f"{len(resources.templates.templates)} templates, {len(resources.markers.markers)} marker classes"
        )
        return resources


def load_resources(cli_path: Optional[Union[str, Path]] = None) -> Resources:
    return Resources.load(load_run_config(cli_path))
