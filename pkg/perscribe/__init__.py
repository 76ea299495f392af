"""PERSCRIBE Library

Personalised security descriptions for Android apps: permission concern
ranking, Big Five profiling and a personality-driven sentence generator.
"""

__version__ = "1.0.0"

from .models import (
    PermissionKind, AppCategory, PermissionStatus, RankingSource,
    Trait, TraitLevel, Gender, ModelFamily, FeatureCategory,
    Polarity, PropositionKind, Relation,
    AppPermissionRecord, PermissionSnapshot, AttentionRanking,
    LikertResponse, ScoringKey, TraitScores, NormEntry, NormTable, TraitProfile,
    AdoptionVector, TraitTarget, TraitModel,
    MalwareFeature, Proposition, SentenceRecord, PersonalisedDescription,
)
from .errors import (
    PerscribeError, ValidationError, ConfigurationError, TemplateCoverageError,
    RealizationError, DegenerateDataError, UndefinedMetricError,
)
from .concern import attention_level, rank_permissions, default_ranking, reorder_sentences, SnapshotParser
from .personality import (
    score_bfi, label_traits, describe_trait, profile_from_predictions,
    train_model, predict, precision, random_baseline, pearson,
    CorrelationPattern, synth_dataset, synth_datasets, correlation_table, evaluate_targets,
    PersonalityParser, DatasetCodec, ModelBankSerializer,
)
from .params import GenerationParams, TraitParamMap, params_from_profile
from .content import FeatureLexicon, explain_feature, plan_content, FeatureListParser
from .dsynts import DSyntSNode, WordClass
from .templates import TemplateBank, select_template
from .aggregation import Operation, aggregate
from .markers import MarkerBank, insert_markers
from .lexical import SynonymLexicon, lexicalize
from .realizer import realize
from .config import RunConfig, Resources, load_run_config, load_resources
from .pipeline import (
    REPRESENTATIVE_PROFILES, baseline_description, generate_description, content_stopwords, frame_vocabulary,
    feature_overlap,
)
from .metrics import TextStats, ReadabilityScores, count_syllables, text_stats, readability, content_overlap

__all__ = [
    "PermissionKind",
    "AppCategory",
    "PermissionStatus",
    "RankingSource",
    "Trait",
    "TraitLevel",
    "Gender",
    "ModelFamily",
    "FeatureCategory",
    "Polarity",
    "PropositionKind",
    "Relation",
    "AppPermissionRecord",
    "PermissionSnapshot",
    "AttentionRanking",
    "LikertResponse",
    "ScoringKey",
    "TraitScores",
    "NormEntry",
    "NormTable",
    "TraitProfile",
    "AdoptionVector",
    "TraitTarget",
    "TraitModel",
    "MalwareFeature",
    "Proposition",
    "SentenceRecord",
    "PersonalisedDescription",
    "PerscribeError",
    "ValidationError",
    "ConfigurationError",
    "TemplateCoverageError",
    "RealizationError",
    "DegenerateDataError",
    "UndefinedMetricError",
    "attention_level",
    "rank_permissions",
    "default_ranking",
    "reorder_sentences",
    "SnapshotParser",
    "score_bfi",
    "label_traits",
    "describe_trait",
    "profile_from_predictions",
    "train_model",
    "predict",
    "precision",
    "random_baseline",
    "pearson",
    "CorrelationPattern",
    "synth_dataset",
    "synth_datasets",
    "correlation_table",
    "evaluate_targets",
    "PersonalityParser",
    "DatasetCodec",
    "ModelBankSerializer",
    "GenerationParams",
    "TraitParamMap",
    "params_from_profile",
    "FeatureLexicon",
    "explain_feature",
    "plan_content",
    "FeatureListParser",
    "DSyntSNode",
    "WordClass",
    "TemplateBank",
    "select_template",
    "Operation",
    "aggregate",
    "MarkerBank",
    "insert_markers",
    "SynonymLexicon",
    "lexicalize",
    "realize",
    "RunConfig",
    "Resources",
    "load_run_config",
    "load_resources",
    "REPRESENTATIVE_PROFILES",
    "baseline_description",
    "generate_description",
    "content_stopwords",
    "frame_vocabulary",
    "feature_overlap",
    "TextStats",
    "ReadabilityScores",
    "count_syllables",
    "text_stats",
    "readability",
    "content_overlap",
]
