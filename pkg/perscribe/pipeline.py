"""PERSCRIBE description pipeline

End-to-end generation of personalised descriptions and the fixed-template
baseline they are compared against.
"""

import logging
import re
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

import numpy as np

from .aggregation import CUE_FRAMES, aggregate, cue_words
from .concern import reorder_sentences
from .config import Resources
from .content import FeatureLexicon, explain_feature, plan_content
from .dsynts import (
    DSyntSNode, TRACE_MARKERS, TRACE_OPERATIONS, main_clause, trace,
)
from .lexical import lexicalize
from .markers import insert_markers
from .metrics import content_overlap
from .models import (
    AttentionRanking, MalwareFeature, PermissionKind, PersonalisedDescription, Proposition,
    Relation, SentenceRecord, TraitProfile,
)
from .params import GenerationParams, params_from_profile
from .realizer import FUNCTION_WORDS, realize
from .templates import select_template
from .errors import RealizationError, TemplateCoverageError

logger = logging.getLogger(__name__)

REPRESENTATIVE_PROFILES: Dict[str, TraitProfile] = {
    "Case1": TraitProfile.neutral(),
    "Case2": TraitProfile.from_levels(E="High", C="High"),
    "Case3": TraitProfile.from_levels(E="Low", A="Low"),
    "Case4": TraitProfile.from_levels(E="High", A="High"),
}

BASELINE_SUBJECT = "App"

_PLACEHOLDER = re.compile(r"\{[^}]*\}")
_WORD = re.compile(r"[A-Za-z']+")


def baseline_sentence(feature: MalwareFeature, lexicon: FeatureLexicon) -> str:
    """One fixed-template sentence for a feature"""
    entry = lexicon.lookup(feature.token)
    if entry is None:
        frame = lexicon.frame(feature.category)
        return f"{BASELINE_SUBJECT} {frame.fallback_phrase.format(token=feature.token)}."
    frame = lexicon.frame(entry.category)
    return frame.baseline_template.format(phrase=entry.baseline_phrase, token=feature.token)


def baseline_description(features: List[MalwareFeature], lexicon: FeatureLexicon) -> List[Tuple[str, Optional[PermissionKind]]]:
    """Plain template sentences, one per feature, in input order"""
    return [(baseline_sentence(f, lexicon), f.permission_tag) for f in features]


def _relation(planned: List[Proposition], index: int) -> Optional[Relation]:
    """Relation linking a planned proposition to its predecessor, in either direction"""
    if index == 0:
        return None
    current, previous = planned[index], planned[index - 1]
    if current.rel_to:
        return current.relation
    if previous.rel_to and previous.rel_to[0] == current.id:
        return previous.relation
    return None


def _mark_subsequent(tree: DSyntSNode):
    """Later propositions mention the feature as "this <subject type>" """
    subject = main_clause(tree).subject
    if subject is not None and subject.get("role") == "subject":
        subject.lexeme = subject.get("subject_type") or subject.lexeme
        subject.attributes["mention"] = "subsequent"


def feature_seed(seed: int, index: int) -> int:
    return seed ^ index


def generate_feature(feature: MalwareFeature, params: GenerationParams, resources: Resources,
                     rng: np.random.Generator) -> List[SentenceRecord]:
    """Utterance for one feature: plan, template, aggregate, mark, lexicalise, realise"""
    props = explain_feature(feature, resources.lexicon)
    planned = plan_content(props, params, rng)

    trees = []
    for index, prop in enumerate(planned):
        tree = select_template(prop, params, resources.templates, rng)
        if index > 0:
            _mark_subsequent(tree)
        trees.append((tree, _relation(planned, index)))

    records = []
    for position, tree in enumerate(aggregate(trees, params, rng)):
        if position == 0:
            tree.attributes["utterance"] = "first"
        tree = insert_markers(tree, params, resources.markers, rng)
        tree = lexicalize(tree, params, resources.synonyms, rng)
        records.append(SentenceRecord(
            text=realize(tree),
            feature=feature.token,
            permission_tag=feature.permission_tag,
            markers_used=trace(tree, TRACE_MARKERS),
            operation_trace=trace(tree, TRACE_OPERATIONS),
        ))
    return records


def generate_description(features: List[MalwareFeature], profile: TraitProfile, ranking: AttentionRanking,
                         seed: int, resources: Resources,
                         overrides: Optional[Mapping[str, float]] = None) -> PersonalisedDescription:
    """Generate a personalised description for an app's features.

    Each feature is generated independently from its own stream (seed XOR
    feature index), then permission-tagged sentences are lifted in ranking
    order.

    Args:
        features: Detected features
        profile: Reader's Big Five profile
        ranking: Reader's permission ranking
        seed: 64-bit seed
        resources: Loaded banks
        overrides: Parameter values replacing those derived from the profile

    Raises:
        TemplateCoverageError, RealizationError: With the feature token prefixed
    """
    params = params_from_profile(profile, resources.param_map)
    if overrides:
        params = params.updated(overrides)

    records: List[SentenceRecord] = []
    for index, feature in enumerate(features):
        rng = np.random.default_rng(feature_seed(seed, index))
        try:
            records.extend(generate_feature(feature, params, resources, rng))
        except (TemplateCoverageError, RealizationError) as e:
            raise type(e)(f"{feature.token}: {e}") from e

    ordered = reorder_sentences([(r, r.permission_tag) for r in records], ranking)
    logger.debug(f"Generated {len(records)} sentences for {len(features)} features")
    return PersonalisedDescription(
        sentences=[r for r, _ in ordered],
        seed=seed,
        profile=profile,
        ranking=ranking,
    )


def _words(texts: Iterable[str]) -> Set[str]:
    words = set()
    for text in texts:
        for word in _WORD.findall(_PLACEHOLDER.sub(" ", text)):
            words.add(word.lower())
    return words


def content_stopwords(resources: Resources) -> frozenset:
    """Words content_overlap ignores: the stopword list, marker surfaces and cue words"""
    return frozenset(resources.stopwords) | frozenset(_words(resources.markers.surfaces() + cue_words()))


def frame_vocabulary(resources: Resources) -> Set[str]:
    """Words every description may contain regardless of the feature.

    Collected from templates, category frames, risk predicates, synonyms,
    marker surfaces, cue words and the baseline templates.
    """
    texts: List[str] = [BASELINE_SUBJECT, "the requested", "is suspicious"]
    texts.extend(FUNCTION_WORDS)
    texts.extend(resources.templates.words())
    texts.extend(resources.synonyms.words())
    texts.extend(resources.markers.surfaces())
    for frame in CUE_FRAMES.values():
        texts.extend([frame.cue, frame.frame])
    for frame in resources.lexicon.frames.values():
        texts.extend([frame.subject_type, frame.baseline_template, frame.fallback_phrase])
    for entry in resources.lexicon.entries.values():
        texts.append(entry.subject_type)
        for skeleton in entry.risk_propositions:
            texts.append(skeleton.predicate)
            texts.extend(skeleton.paraphrases.values())
    return _words(texts)


def feature_stopwords(resources: Resources) -> frozenset:
    """Content stopwords plus the frame vocabulary, leaving only feature phrase words"""
    return content_stopwords(resources) | frozenset(frame_vocabulary(resources))


def feature_overlap(a: str, b: str, resources: Resources) -> float:
    """Jaccard index of the feature phrase lemmas of two texts.

    Unlike content_overlap, words the templates, synonyms and risk predicates
    contribute are filtered too, so only what names the feature is compared.
    """
    return content_overlap(a, b, feature_stopwords(resources))
