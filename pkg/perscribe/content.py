"""PERSCRIBE content planning

Maps malware-indicative features to propositions through the feature lexicon
and selects, orders and duplicates them under the content parameters.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

import numpy as np

from .constants import CONTENT_FIRE_THRESHOLD, CONTENT_PARAMETERS
from .models import (
    FeatureCategory, MalwareFeature, PermissionKind, Polarity, Proposition,
    PropositionKind, Relation,
)
from .params import GenerationParams
from .errors import ConfigurationError, ValidationError

logger = logging.getLogger(__name__)

CLAIM_ID = "claim"
FALLBACK_PATTERN = "suspicious-adjective"

PARAMETERS_READ = CONTENT_PARAMETERS


@dataclass
class PropositionSkeleton:
    """Category-level proposition with the subject left open"""
    key: str
    predicate: str
    polarity: Polarity
    kind: PropositionKind
    pattern: str
    rel_to: Optional[tuple] = None
    paraphrases: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "PropositionSkeleton":
        rel_to = None
        if data.get("rel_to"):
            target, relation = data["rel_to"]
            rel_to = (str(target), Relation(relation))
        return cls(
            key=str(data["key"]),
            predicate=str(data["predicate"]),
            polarity=Polarity(data["polarity"]),
            kind=PropositionKind(data["kind"]),
            pattern=str(data["pattern"]),
            rel_to=rel_to,
            paraphrases=dict(data.get("paraphrases", {})),
        )


@dataclass
class CategoryFrame:
    """How a feature category is named and rendered by the fixed baseline"""
    category: FeatureCategory
    subject_type: str
    baseline_template: str
    fallback_phrase: str


@dataclass
class FeatureLexiconEntry:
    """Explanation of one known feature token"""
    token: str
    category: FeatureCategory
    gerund_phrase: str
    baseline_phrase: str
    subject_type: str
    risk_propositions: List[PropositionSkeleton]
    permission_tag: Optional[PermissionKind] = None

    def __post_init__(self):
        """Validate entry"""
        if not self.gerund_phrase:
            raise ConfigurationError(f"Lexicon entry {self.token!r} has no gerund phrase")
        if not self.risk_propositions:
            raise ConfigurationError(f"Lexicon entry {self.token!r} has no risk propositions")
        claims = [p for p in self.risk_propositions if p.kind == PropositionKind.CLAIM]
        if len(claims) != 1:
            raise ConfigurationError(f"Lexicon entry {self.token!r} needs exactly one Claim, has {len(claims)}")


class FeatureLexicon:
    """Known feature tokens with their explanations, plus per-category frames"""

    def __init__(self, entries: List[FeatureLexiconEntry], frames: Dict[FeatureCategory, CategoryFrame]):
        self.entries: Dict[str, FeatureLexiconEntry] = {}
        for entry in entries:
            if entry.token in self.entries:
                raise ConfigurationError(f"Duplicate lexicon token: {entry.token!r}")
            self.entries[entry.token] = entry
        missing = [c.value for c in FeatureCategory if c not in frames]
        if missing:
            raise ConfigurationError(f"Lexicon has no frame for categories: {', '.join(missing)}")
        self.frames = frames

    def lookup(self, token: str) -> Optional[FeatureLexiconEntry]:
        return self.entries.get(token)

    def frame(self, category: FeatureCategory) -> CategoryFrame:
        return self.frames[category]

    def features(self) -> List[MalwareFeature]:
        """Every known token as a feature, in lexicon order"""
        return [MalwareFeature(e.token, e.category, e.permission_tag) for e in self.entries.values()]

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureLexicon":
        """Parse the lexicon document.

        Category-level "propositions" apply to every entry that does not list
        its own.
        """
        try:
            shared = [PropositionSkeleton.from_dict(p) for p in data["propositions"]]
            frames = {}
            for name, frame in data["categories"].items():
                category = FeatureCategory(name)
                frames[category] = CategoryFrame(
                    category=category,
                    subject_type=frame["subject_type"],
                    baseline_template=frame["baseline_template"],
                    fallback_phrase=frame["fallback_phrase"],
                )
            entries = []
            for item in data["features"]:
                category = FeatureCategory(item["category"])
                own = item.get("propositions")
                entries.append(FeatureLexiconEntry(
                    token=item["token"],
                    category=category,
                    gerund_phrase=item["gerund_phrase"],
                    baseline_phrase=item["baseline_phrase"],
                    subject_type=item.get("subject_type", frames[category].subject_type),
                    risk_propositions=[PropositionSkeleton.from_dict(p) for p in own] if own else list(shared),
                    permission_tag=PermissionKind.parse(item["permission"]) if item.get("permission") else None,
                ))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigurationError(f"Invalid feature lexicon: {e}")
        return cls(entries, frames)


def explain_feature(feature: MalwareFeature, lexicon: FeatureLexicon) -> List[Proposition]:
    """Bind a feature's proposition skeletons to its gerund phrase.

    Unknown tokens fall back to a single claim about the category, so every
    feature gets an explanation.
    """
    entry = lexicon.lookup(feature.token)
    if entry is None:
        subject_type = lexicon.frame(feature.category).subject_type
        logger.debug(f"No lexicon entry for {feature.token!r}, using {feature.category.value} fallback")
        return [Proposition(
            id=CLAIM_ID,
            subject=f"the requested {subject_type}",
            predicate="is suspicious",
            polarity=Polarity.POSITIVE,
            kind=PropositionKind.CLAIM,
            pattern=FALLBACK_PATTERN,
            subject_type=subject_type,
        )]

    return [
        Proposition(
            id=skeleton.key,
            subject=entry.gerund_phrase,
            predicate=skeleton.predicate.format(subject_type=entry.subject_type),
            polarity=skeleton.polarity,
            kind=skeleton.kind,
            pattern=skeleton.pattern,
            subject_type=entry.subject_type,
            rel_to=skeleton.rel_to,
            paraphrases=dict(skeleton.paraphrases),
        )
        for skeleton in entry.risk_propositions
    ]


def _prefer(polarity_param: float, prop: Proposition) -> int:
    """Sort key putting the preferred polarity first; 0 when indifferent"""
    if polarity_param > CONTENT_FIRE_THRESHOLD:
        return 0 if prop.polarity == Polarity.POSITIVE else 1
    if polarity_param < CONTENT_FIRE_THRESHOLD:
        return 0 if prop.polarity == Polarity.NEGATIVE else 1
    return 0


def _preferred(props: List[Proposition], polarity_param: float) -> List[Proposition]:
    best = [p for p in props if _prefer(polarity_param, p) == 0]
    return best or list(props)


def plan_content(props: List[Proposition], params: GenerationParams,
                 rng: np.random.Generator) -> List[Proposition]:
    """Select and order the propositions of one utterance.

    Keeps ceil(1 + VERBOSITY * (n - 1)) propositions including the claim.
    Supports are drawn from a seeded shuffle, ranked by CONTENT POLARITY, so
    a larger VERBOSITY only ever extends the selection. Then:

    - POSITIVE CONTENT FIRST puts one polarity ahead of the other
    - CONCESSIONS turns a support into a concession
    - POLARISATION makes every proposition extreme
    - RESTATEMENTS inserts a paraphrase, REPETITIONS a verbatim copy, each
      right after its original

    Raises:
        ValidationError: Empty input or no claim
    """
    if not props:
        raise ValidationError("Cannot plan content for an empty proposition list")
    claims = [p for p in props if p.is_claim()]
    if not claims:
        raise ValidationError("Proposition list has no Claim")
    claim = claims[0]
    supports = [p for p in props if p is not claim]

    n = len(props)
    k = math.ceil(round(1 + params["VERBOSITY"] * (n - 1), 9))
    k = max(1, min(n, k))

    shuffled = [supports[i] for i in rng.permutation(len(supports))]
    ranked = sorted(shuffled, key=lambda p: _prefer(params["CONTENT POLARITY"], p))
    chosen = {id(p) for p in ranked[:k - 1]}
    planned = [p for p in props if p is claim or id(p) in chosen]

    if params["POSITIVE CONTENT FIRST"] != CONTENT_FIRE_THRESHOLD:
        planned = sorted(planned, key=lambda p: _prefer(params["POSITIVE CONTENT FIRST"], p))

    if params["CONCESSIONS"] > CONTENT_FIRE_THRESHOLD:
        candidates = _preferred([p for p in planned if p is not claim], params["CONCESSIONS POLARITY"])
        if candidates:
            target = candidates[0]
            conceded = replace(target, rel_to=(claim.id, Relation.CONCEDE))
            planned = [conceded if p is target else p for p in planned]

    if params["POLARISATION"] > CONTENT_FIRE_THRESHOLD:
        planned = [replace(p, intensity="extreme") for p in planned]

    if params["RESTATEMENTS"] > CONTENT_FIRE_THRESHOLD:
        planned = _insert_copy(planned, params, rng, suffix="restated", paraphrase=True)

    if params["REPETITIONS"] > CONTENT_FIRE_THRESHOLD:
        planned = _insert_copy(planned, params, rng, suffix="repeated", paraphrase=False)

    logger.debug(f"Planned {[p.id for p in planned]} from {n} propositions")
    return planned


def _insert_copy(planned: List[Proposition], params: GenerationParams, rng: np.random.Generator,
                 suffix: str, paraphrase: bool) -> List[Proposition]:
    originals = [p for p in planned if p.id.count("/") == 0]
    candidates = _preferred(originals, params["REPETITIONS POLARITY"])
    original = candidates[int(rng.integers(len(candidates)))]
    copy = replace(
        original,
        id=f"{original.id}/{suffix}",
        kind=PropositionKind.SUPPORT,
        rel_to=(original.id, Relation.RESTATE),
        lexical_overrides=dict(original.paraphrases) if paraphrase else dict(original.lexical_overrides),
    )
    index = planned.index(original)
    return planned[:index + 1] + [copy] + planned[index + 1:]


class FeatureListParser:
    """Parser for feature list documents"""

    @staticmethod
    def parse(data) -> List[MalwareFeature]:
        """Parse a list of {token, category, permission}, or {"features": [...]}"""
        if isinstance(data, dict):
            data = data.get("features", [])
        if not isinstance(data, list):
            raise ValidationError("Feature list must be a list of records")
        features = []
        for index, item in enumerate(data):
            if not isinstance(item, dict):
                raise ValidationError(f"record {index}: expected an object")
            try:
                tag = item.get("permission")
                features.append(MalwareFeature(
                    token=str(item["token"]),
                    category=FeatureCategory(item.get("category", "Permission")),
                    permission_tag=PermissionKind.parse(tag) if tag else None,
                ))
            except (KeyError, ValueError, TypeError, AttributeError) as e:
                raise ValidationError(f"record {index}: {e}")
        return features

    @staticmethod
    def to_dict(features: List[MalwareFeature]) -> dict:
        return {
            "features": [
                {
                    "token": f.token,
                    "category": f.category.value,
                    "permission": f.permission_tag.value if f.permission_tag else None,
                }
                for f in features
            ]
        }
