"""PERSCRIBE Data Models"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple
from enum import Enum

from .constants import BFI_ITEM_COUNT, LIKERT_MIN, LIKERT_MAX
from .errors import ValidationError


class PermissionKind(Enum):
    """User-facing permission; definition order is the canonical tie-break order"""
    LOCATION = "Location"
    CONTACTS = "Contacts"
    CALENDARS = "Calendars"
    REMINDERS = "Reminders"
    PHOTOS = "Photos"
    BLUETOOTH = "Bluetooth"
    MICROPHONE = "Microphone"
    CAMERA = "Camera"

    @classmethod
    def parse(cls, name: str) -> "PermissionKind":
        """Look up a permission by name, case-insensitively"""
        for kind in cls:
            if kind.value.lower() == str(name).strip().lower():
                return kind
        raise ValidationError(f"Unknown permission: {name!r}")

    @property
    def canonical_index(self) -> int:
        return CANONICAL_PERMISSIONS.index(self)


CANONICAL_PERMISSIONS: Tuple[PermissionKind, ...] = tuple(PermissionKind)


class AppCategory(Enum):
    """App store category; OTHER absorbs anything unclassified"""
    AUDIO = "Audio"
    GAME = "Game"
    IMAGE = "Image"
    MAPS = "Maps"
    NEWS = "News"
    PRODUCTIVITY = "Productivity"
    SOCIAL = "Social"
    VIDEO = "Video"
    OTHER = "Other"

    @classmethod
    def from_name(cls, name: str) -> "AppCategory":
        """Map a category string to a category, unknown names become OTHER"""
        for category in cls:
            if category.value.lower() == str(name).strip().lower():
                return category
        return cls.OTHER


CATEGORY_ORDER: Tuple[AppCategory, ...] = tuple(AppCategory)


class PermissionStatus(Enum):
    """Per-app permission setting"""
    ALLOW = "allow"
    DENY = "deny"


class RankingSource(Enum):
    """Which path of the ranking algorithm produced a ranking"""
    LEARNED = "Learned"
    DEFAULT = "Default"
    FALLBACK_ALL_APPS = "FallbackAllApps"


class Trait(Enum):
    """Big Five dimension"""
    E = "E"
    A = "A"
    C = "C"
    N = "N"
    O = "O"

    @property
    def full_name(self) -> str:
        return TRAIT_NAMES[self]


TRAIT_NAMES = {
    Trait.E: "Extraversion",
    Trait.A: "Agreeableness",
    Trait.C: "Conscientiousness",
    Trait.N: "Neuroticism",
    Trait.O: "Openness",
}


class TraitLevel(Enum):
    """Three-group trait label"""
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"


class Gender(Enum):
    """Norm table key"""
    MALE = "male"
    FEMALE = "female"


class ModelFamily(Enum):
    """Classifier family for a trait-group model"""
    NAIVE_BAYES = "NaiveBayes"
    DECISION_TREE = "DecisionTree"


class FeatureCategory(Enum):
    """Functional class of a malware-indicative feature"""
    PERMISSION = "Permission"
    INTENT = "Intent"
    NETWORK_ADDRESS = "NetworkAddress"
    API_CALL = "ApiCall"
    COMPONENT = "Component"
    PROVIDER = "Provider"
    HARDWARE_ACCESS = "HardwareAccess"
    STRING = "String"


class Polarity(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


class PropositionKind(Enum):
    CLAIM = "Claim"
    SUPPORT = "Support"


class Relation(Enum):
    """Rhetorical relation between two propositions"""
    JUSTIFY = "Justify"
    CONTRAST = "Contrast"
    INFER = "Infer"
    CONCEDE = "Concede"
    RESTATE = "Restate"


# =============================================================================
# Permission concerns
# =============================================================================

@dataclass
class AppPermissionRecord:
    """One installed app and the status of each permission it requests"""
    app_id: str
    category: AppCategory = AppCategory.OTHER
    statuses: Dict[PermissionKind, PermissionStatus] = field(default_factory=dict)

    def __post_init__(self):
        """Validate record"""
        if not self.app_id:
            raise ValidationError("App id must be non-empty")

    def requests(self, permission: PermissionKind) -> bool:
        return permission in self.statuses

    def denies(self, permission: PermissionKind) -> bool:
        return self.statuses.get(permission) == PermissionStatus.DENY


@dataclass
class PermissionSnapshot:
    """A user's app list with per-permission statuses"""
    records: List[AppPermissionRecord] = field(default_factory=list)

    def __post_init__(self):
        """Validate snapshot"""
        seen = set()
        for record in self.records:
            if record.app_id in seen:
                raise ValidationError(f"Duplicate app id in snapshot: {record.app_id!r}")
            seen.add(record.app_id)

    def is_empty(self) -> bool:
        return not self.records

    def in_category(self, category: AppCategory) -> List[AppPermissionRecord]:
        """Records whose app belongs to the given category"""
        return [r for r in self.records if r.category == category]


@dataclass
class AttentionRanking:
    """All eight permissions ordered by the user's attention level"""
    entries: List[Tuple[PermissionKind, float]]
    source: RankingSource = RankingSource.LEARNED

    def __post_init__(self):
        """Validate ranking"""
        kinds = [kind for kind, _ in self.entries]
        if len(kinds) != len(CANONICAL_PERMISSIONS) or set(kinds) != set(CANONICAL_PERMISSIONS):
            raise ValidationError(
                f"Ranking must hold each of the {len(CANONICAL_PERMISSIONS)} permissions exactly once"
            )
        for kind, level in self.entries:
            if level < 0.0 or level > 1.0:
                raise ValidationError(f"Invalid attention level for {kind.value}: {level}")
        for (kind_a, level_a), (kind_b, level_b) in zip(self.entries, self.entries[1:]):
            if level_b > level_a:
                raise ValidationError(
                    f"Ranking not sorted: {kind_b.value} ({level_b}) after {kind_a.value} ({level_a})"
                )
            if level_a == level_b and kind_a.canonical_index > kind_b.canonical_index:
                raise ValidationError(
                    f"Tie between {kind_a.value} and {kind_b.value} not in canonical order"
                )

    def permissions(self) -> List[PermissionKind]:
        return [kind for kind, _ in self.entries]

    def rank_of(self, permission: PermissionKind) -> int:
        """Zero-based position of a permission in the ranking"""
        return self.permissions().index(permission)

    def level_of(self, permission: PermissionKind) -> float:
        return dict(self.entries)[permission]

    def to_dict(self) -> dict:
        return {
            "source": self.source.value,
            "entries": [{"permission": kind.value, "level": level} for kind, level in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AttentionRanking":
        entries = [(PermissionKind.parse(e["permission"]), float(e["level"])) for e in data["entries"]]
        return cls(entries=entries, source=RankingSource(data.get("source", "Learned")))


# =============================================================================
# Personality
# =============================================================================

@dataclass
class LikertResponse:
    """Answers to the 44-item inventory"""
    answers: List[int]
    gender: Optional[Gender] = None

    def __post_init__(self):
        """Validate answers"""
        if len(self.answers) != BFI_ITEM_COUNT:
            raise ValidationError(f"expected {BFI_ITEM_COUNT} answers, got {len(self.answers)}")
        for index, value in enumerate(self.answers, start=1):
            if isinstance(value, bool) or not isinstance(value, int) or not LIKERT_MIN <= value <= LIKERT_MAX:
                raise ValidationError(
                    f"Answer {index} out of range: {value!r} (must be {LIKERT_MIN}-{LIKERT_MAX})"
                )


@dataclass
class ScoringKey:
    """Item-to-trait key; item indices are 1-based"""
    items: Dict[Trait, List[int]]
    reversed_items: Set[int] = field(default_factory=set)

    def __post_init__(self):
        """Validate that the five lists partition 1..44"""
        if set(self.items) != set(Trait):
            raise ValidationError("Scoring key must list items for all five traits")
        flat = [i for indices in self.items.values() for i in indices]
        if sorted(flat) != list(range(1, BFI_ITEM_COUNT + 1)):
            raise ValidationError(f"Scoring key item lists must partition 1..{BFI_ITEM_COUNT}")
        if any(not indices for indices in self.items.values()):
            raise ValidationError("Every trait needs at least one item")
        if not set(self.reversed_items) <= set(flat):
            raise ValidationError("Reversed items must belong to the key")


@dataclass
class TraitScores:
    """Mean item score per trait"""
    scores: Dict[Trait, float]

    def __post_init__(self):
        """Validate scores"""
        if set(self.scores) != set(Trait):
            raise ValidationError("Trait scores need all five traits")
        for trait, value in self.scores.items():
            if value < LIKERT_MIN or value > LIKERT_MAX:
                raise ValidationError(f"Invalid {trait.value} score: {value}")

    def __getitem__(self, trait: Trait) -> float:
        return self.scores[trait]


@dataclass
class NormEntry:
    """Population mean and standard deviation of a trait score"""
    mean: float
    sd: float

    def __post_init__(self):
        if self.sd <= 0:
            raise ValidationError(f"Norm standard deviation must be positive: {self.sd}")


@dataclass
class NormTable:
    """Per-gender, per-trait norms"""
    entries: Dict[Gender, Dict[Trait, NormEntry]]

    def get(self, gender: Gender, trait: Trait) -> Optional[NormEntry]:
        return self.entries.get(gender, {}).get(trait)


@dataclass
class TraitProfile:
    """Big Five levels, optionally with the scores they came from"""
    levels: Dict[Trait, TraitLevel]
    scores: Optional[TraitScores] = None

    def __post_init__(self):
        """Validate profile"""
        if set(self.levels) != set(Trait):
            raise ValidationError("Trait profile needs all five traits")

    def __getitem__(self, trait: Trait) -> TraitLevel:
        return self.levels[trait]

    @classmethod
    def neutral(cls) -> "TraitProfile":
        return cls(levels={trait: TraitLevel.MEDIUM for trait in Trait})

    @classmethod
    def from_levels(cls, **levels: str) -> "TraitProfile":
        """Build a profile from keyword levels, e.g. from_levels(E="High"); others Medium"""
        result = {trait: TraitLevel.MEDIUM for trait in Trait}
        for name, level in levels.items():
            result[Trait(name)] = TraitLevel(level)
        return cls(levels=result)

    def to_dict(self) -> dict:
        data = {"levels": {trait.value: level.value for trait, level in self.levels.items()}}
        if self.scores is not None:
            data["scores"] = {trait.value: value for trait, value in self.scores.scores.items()}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "TraitProfile":
        try:
            levels = {Trait(name): TraitLevel(level) for name, level in data["levels"].items()}
        except (KeyError, ValueError) as e:
            raise ValidationError(f"Invalid trait profile: {e}")
        scores = None
        if data.get("scores") is not None:
            scores = TraitScores({Trait(name): float(v) for name, v in data["scores"].items()})
        return cls(levels=levels, scores=scores)


@dataclass
class AdoptionVector:
    """Number of installed (non pre-installed) apps per category"""
    counts: Dict[AppCategory, int]

    def __post_init__(self):
        """Validate counts, filling absent categories with zero"""
        for category in CATEGORY_ORDER:
            self.counts.setdefault(category, 0)
        for category, count in self.counts.items():
            if count < 0:
                raise ValidationError(f"Negative app count for {category.value}: {count}")

    def as_list(self, order: Tuple[AppCategory, ...] = CATEGORY_ORDER) -> List[int]:
        return [self.counts[category] for category in order]

    def to_dict(self) -> dict:
        return {category.value: self.counts[category] for category in CATEGORY_ORDER}

    @classmethod
    def from_dict(cls, data: dict) -> "AdoptionVector":
        counts: Dict[AppCategory, int] = {}
        for name, value in data.items():
            category = AppCategory.from_name(name)
            counts[category] = counts.get(category, 0) + int(value)
        return cls(counts=counts)


@dataclass(frozen=True)
class TraitTarget:
    """One of the ten High/Low target groups"""
    trait: Trait
    level: TraitLevel

    def __post_init__(self):
        if self.level == TraitLevel.MEDIUM:
            raise ValidationError("Target groups are High or Low only")

    @property
    def label(self) -> str:
        return f"{self.trait.value}-{self.level.value}"

    @classmethod
    def parse(cls, label: str) -> "TraitTarget":
        try:
            trait, level = label.split("-", 1)
            return cls(Trait(trait.strip().upper()), TraitLevel(level.strip().capitalize()))
        except ValueError:
            raise ValidationError(f"Invalid target group: {label!r} (expected e.g. 'N-High')")


ALL_TARGETS: Tuple[TraitTarget, ...] = tuple(
    TraitTarget(trait, level) for trait in Trait for level in (TraitLevel.HIGH, TraitLevel.LOW)
)


@dataclass
class TraitModel:
    """Fitted classifier for one target group; params are family-specific"""
    target: TraitTarget
    family: ModelFamily
    params: dict
    feature_order: Tuple[AppCategory, ...] = CATEGORY_ORDER


# =============================================================================
# Content
# =============================================================================

@dataclass
class MalwareFeature:
    """Detector-derived feature token"""
    token: str
    category: FeatureCategory
    permission_tag: Optional[PermissionKind] = None

    def __post_init__(self):
        if not self.token:
            raise ValidationError("Feature token must be non-empty")


@dataclass
class Proposition:
    """A unit of content: subject, predicate and its rhetorical link"""
    id: str
    subject: str
    predicate: str
    polarity: Polarity
    kind: PropositionKind
    pattern: str = ""
    subject_type: str = ""
    rel_to: Optional[Tuple[str, Relation]] = None
    lexical_overrides: Dict[str, str] = field(default_factory=dict)
    paraphrases: Dict[str, str] = field(default_factory=dict)
    intensity: str = "neutral"  # neutral | extreme

    @property
    def relation(self) -> Optional[Relation]:
        return self.rel_to[1] if self.rel_to else None

    def is_claim(self) -> bool:
        return self.kind == PropositionKind.CLAIM


# =============================================================================
# Pipeline output
# =============================================================================

@dataclass
class SentenceRecord:
    """A realised sentence with its provenance"""
    text: str
    feature: str
    permission_tag: Optional[PermissionKind] = None
    markers_used: List[str] = field(default_factory=list)
    operation_trace: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "feature": self.feature,
            "permission": self.permission_tag.value if self.permission_tag else None,
            "markers": list(self.markers_used),
            "operations": list(self.operation_trace),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SentenceRecord":
        tag = data.get("permission")
        return cls(
            text=data["text"],
            feature=data["feature"],
            permission_tag=PermissionKind.parse(tag) if tag else None,
            markers_used=list(data.get("markers", [])),
            operation_trace=list(data.get("operations", [])),
        )


@dataclass
class PersonalisedDescription:
    """Ordered personalised sentences for one app"""
    sentences: List[SentenceRecord]
    seed: int
    profile: TraitProfile
    ranking: AttentionRanking

    @property
    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)

    def features(self) -> Set[str]:
        return {s.feature for s in self.sentences}

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "profile": self.profile.to_dict(),
            "ranking": self.ranking.to_dict(),
            "sentences": [s.to_dict() for s in self.sentences],
            "text": self.text,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PersonalisedDescription":
        return cls(
            sentences=[SentenceRecord.from_dict(s) for s in data["sentences"]],
            seed=int(data["seed"]),
            profile=TraitProfile.from_dict(data["profile"]),
            ranking=AttentionRanking.from_dict(data["ranking"]),
        )
