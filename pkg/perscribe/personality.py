"""PERSCRIBE personality modelling

BFI-44 scoring and three-group labelling, app-adoption classifiers for the ten
High/Low target groups, precision evaluation against a random baseline,
Pearson diagnostics and a seeded synthetic dataset generator.

Fitted models keep only their learned parameters (no pickled estimator), so a
model bank reloaded from JSON predicts exactly like the freshly trained one.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats
from sklearn.naive_bayes import GaussianNB
from sklearn.tree import DecisionTreeClassifier

from .constants import (
    DEFAULT_BASELINE_TRIALS, DEFAULT_NORM_BAND, DEFAULT_TEST_FRACTION, DEFAULT_TREE_DEPTH,
    LIKERT_REVERSE_SUM, MIN_SYNTH_SIZE, SCHEMA_VERSION, SYNTH_COUNT_MEAN, SYNTH_COUNT_SD,
)
from .models import (
    ALL_TARGETS, AdoptionVector, AppCategory, CATEGORY_ORDER, Gender, LikertResponse,
    ModelFamily, NormEntry, NormTable, ScoringKey, Trait, TraitLevel, TraitModel,
    TraitProfile, TraitScores, TraitTarget,
)
from .errors import ConfigurationError, DegenerateDataError, ValidationError

logger = logging.getLogger(__name__)

LabelledData = List[Tuple[AdoptionVector, bool]]


# =============================================================================
# Scoring and labelling
# =============================================================================

def score_bfi(response: LikertResponse, key: ScoringKey) -> TraitScores:
    """Score a response: reversed items become 6 - x, each trait is the mean of its items"""
    scores: Dict[Trait, float] = {}
    for trait, items in key.items.items():
        values = []
        for item in items:
            answer = response.answers[item - 1]
            if item in key.reversed_items:
                answer = LIKERT_REVERSE_SUM - answer
            values.append(answer)
        scores[trait] = sum(values) / len(values)
    return TraitScores(scores)


def label_traits(scores: TraitScores, gender: Gender, norms: NormTable,
                 band: float = DEFAULT_NORM_BAND) -> TraitProfile:
    """Label each trait High/Medium/Low against the gender's norms.

    High if score > mean + band*sd, Low if score < mean - band*sd, else Medium.

    Raises:
        ConfigurationError: The norm table has no entry for a trait
    """
    levels: Dict[Trait, TraitLevel] = {}
    for trait in Trait:
        norm = norms.get(gender, trait)
        if norm is None:
            raise ConfigurationError(f"No norm for {trait.value} ({gender.value})")
        score = scores[trait]
        if score > norm.mean + band * norm.sd:
            levels[trait] = TraitLevel.HIGH
        elif score < norm.mean - band * norm.sd:
            levels[trait] = TraitLevel.LOW
        else:
            levels[trait] = TraitLevel.MEDIUM
    return TraitProfile(levels=levels, scores=scores)


def describe_trait(trait: Trait, level: TraitLevel, traits: dict) -> List[str]:
    """Adjectives characterising a trait group; empty for Medium"""
    if level == TraitLevel.MEDIUM:
        return []
    return list(traits.get(trait.value, {}).get(level.value, []))


def profile_from_predictions(predictions: Dict[TraitTarget, bool]) -> TraitProfile:
    """Combine the ten group predictions into a profile.

    A trait is High when only its High model fires, Low when only its Low
    model fires, and Medium when both or neither do.
    """
    levels: Dict[Trait, TraitLevel] = {}
    for trait in Trait:
        high = predictions.get(TraitTarget(trait, TraitLevel.HIGH), False)
        low = predictions.get(TraitTarget(trait, TraitLevel.LOW), False)
        if high and not low:
            levels[trait] = TraitLevel.HIGH
        elif low and not high:
            levels[trait] = TraitLevel.LOW
        else:
            levels[trait] = TraitLevel.MEDIUM
    return TraitProfile(levels=levels)


# =============================================================================
# Classifiers
# =============================================================================

def _feature_matrix(data: Sequence[Tuple[AdoptionVector, bool]],
                    order: Tuple[AppCategory, ...]) -> Tuple[np.ndarray, np.ndarray]:
    X = np.array([vector.as_list(order) for vector, _ in data], dtype=float)
    y = np.array([1 if label else 0 for _, label in data], dtype=int)
    return X, y


def train_model(data: Sequence[Tuple[AdoptionVector, bool]], target: TraitTarget,
                family: ModelFamily, seed: int = 0,
                max_depth: int = DEFAULT_TREE_DEPTH) -> TraitModel:
    """Fit a classifier predicting membership of one target group.

    Args:
        data: (adoption vector, is member) pairs
        target: Target group
        family: NaiveBayes (Gaussian per-category counts) or DecisionTree (Gini)
        seed: Tree random_state
        max_depth: Tree depth limit

    Raises:
        ValidationError: Empty data
        DegenerateDataError: Only one class present
    """
    if not data:
        raise ValidationError("Training data is empty")
    order = CATEGORY_ORDER
    X, y = _feature_matrix(data, order)
    if len(set(y.tolist())) < 2:
        raise DegenerateDataError(f"Training data for {target.label} holds a single class")

    if family == ModelFamily.NAIVE_BAYES:
        clf = GaussianNB().fit(X, y)
        params = {
            "theta": clf.theta_.tolist(),
            "var": clf.var_.tolist(),
            "class_prior": clf.class_prior_.tolist(),
        }
    else:
        clf = DecisionTreeClassifier(criterion="gini", max_depth=max_depth,
                                     random_state=seed % (2 ** 32))
        clf.fit(X, y)
        tree = clf.tree_
        params = {
            "children_left": tree.children_left.tolist(),
            "children_right": tree.children_right.tolist(),
            "feature": tree.feature.tolist(),
            "threshold": tree.threshold.tolist(),
            "value": [[float(v) for v in node[0]] for node in tree.value],
        }

    logger.debug(f"Trained {family.value} model for {target.label} on {len(data)} samples")
    return TraitModel(target=target, family=family, params=params, feature_order=order)


def predict(model: TraitModel, x: AdoptionVector) -> Tuple[bool, float]:
    """Predict group membership.

    Returns:
        (label, score): NaiveBayes scores are posterior log-odds (positive
        means member); DecisionTree scores are the leaf's member fraction.
    """
    features = np.array(x.as_list(model.feature_order), dtype=float)
    params = model.params

    if model.family == ModelFamily.NAIVE_BAYES:
        theta = np.asarray(params["theta"], dtype=float)
        var = np.asarray(params["var"], dtype=float)
        prior = np.asarray(params["class_prior"], dtype=float)
        joint = (np.log(prior)
                 - 0.5 * np.sum(np.log(2.0 * np.pi * var), axis=1)
                 - 0.5 * np.sum((features - theta) ** 2 / var, axis=1))
        score = float(joint[1] - joint[0])
        return score > 0.0, score

    left, right = params["children_left"], params["children_right"]
    node = 0
    while left[node] != -1:
        if features[params["feature"][node]] <= params["threshold"][node]:
            node = left[node]
        else:
            node = right[node]
    counts = params["value"][node]
    score = counts[1] / sum(counts)
    return score > 0.5, float(score)


def precision(preds: Sequence[bool], labels: Sequence[bool]) -> Optional[float]:
    """True positives over predicted positives; None when nothing was predicted positive"""
    if len(preds) != len(labels):
        raise ValidationError(f"Length mismatch: {len(preds)} predictions, {len(labels)} labels")
    predicted = [label for pred, label in zip(preds, labels) if pred]
    if not predicted:
        return None
    return sum(1 for label in predicted if label) / len(predicted)


def random_baseline(labels: Sequence[bool], trials: int, seed: int) -> Optional[float]:
    """Mean precision of assigning each instance to the group by a fair coin"""
    if trials < 1:
        raise ValidationError(f"trials must be at least 1: {trials}")
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(trials):
        preds = rng.random(len(labels)) < 0.5
        value = precision(preds.tolist(), list(labels))
        if value is not None:
            results.append(value)
    if not results:
        return None
    return float(np.mean(results))


def pearson(x: Sequence[float], y: Sequence[float]) -> Optional[float]:
    """Product-moment correlation; None when either vector is constant"""
    if len(x) != len(y):
        raise ValidationError(f"Length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValidationError("Correlation needs at least two points")
    a = np.asarray(x, dtype=float)
    b = np.asarray(y, dtype=float)
    if np.all(a == a[0]) or np.all(b == b[0]):
        return None
    r, _ = stats.pearsonr(a, b)
    return float(r)


# =============================================================================
# Synthetic data
# =============================================================================

@dataclass
class CorrelationPattern:
    """Planted correlation between category counts and one group's membership"""
    target: TraitTarget
    correlations: Dict[AppCategory, float] = field(default_factory=dict)
    prevalence: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.prevalence < 1.0:
            raise ValidationError(f"Prevalence must be in (0, 1): {self.prevalence}")
        for category, rho in self.correlations.items():
            if rho < -1.0 or rho > 1.0:
                raise ValidationError(f"Correlation for {category.value} out of range: {rho}")


def synth_dataset(pattern: CorrelationPattern, n: int, seed: int) -> LabelledData:
    """Generate n labelled adoption vectors following a correlation pattern.

    Membership is drawn with the pattern's prevalence; each category count is
    a rounded, zero-clipped Gaussian whose latent correlation with the
    standardised label equals the planted value.
    """
    if n < MIN_SYNTH_SIZE:
        raise ValidationError(f"n must be at least {MIN_SYNTH_SIZE}: {n}")
    rng = np.random.default_rng(seed)
    p = pattern.prevalence
    labels = rng.random(n) < p
    standardised = (labels.astype(float) - p) / math.sqrt(p * (1.0 - p))

    columns: Dict[AppCategory, np.ndarray] = {}
    for category in CATEGORY_ORDER:
        rho = pattern.correlations.get(category, 0.0)
        noise = rng.standard_normal(n)
        latent = rho * standardised + math.sqrt(1.0 - rho * rho) * noise
        counts = np.rint(SYNTH_COUNT_MEAN + SYNTH_COUNT_SD * latent)
        columns[category] = np.clip(counts, 0, None).astype(int)

    return [
        (AdoptionVector({category: int(columns[category][i]) for category in CATEGORY_ORDER}),
         bool(labels[i]))
        for i in range(n)
    ]


def synth_datasets(patterns: Dict[TraitTarget, CorrelationPattern], n: int,
                   seed: int) -> Dict[TraitTarget, LabelledData]:
    """One dataset per target, each from its own stream derived from (seed, target index)"""
    datasets = {}
    for index, target in enumerate(t for t in ALL_TARGETS if t in patterns):
        derived = int(np.random.SeedSequence([seed, index]).generate_state(1, dtype=np.uint64)[0])
        datasets[target] = synth_dataset(patterns[target], n, derived)
    return datasets


def correlation_table(datasets: Dict[TraitTarget, LabelledData]) -> Dict[TraitTarget, Dict[AppCategory, Optional[float]]]:
    """Pearson r between every category count and group membership"""
    table = {}
    for target, data in datasets.items():
        labels = [1.0 if label else 0.0 for _, label in data]
        table[target] = {
            category: pearson([float(v.counts[category]) for v, _ in data], labels)
            for category in CATEGORY_ORDER
        }
    return table


# =============================================================================
# Evaluation harness
# =============================================================================

@dataclass
class TargetEvaluation:
    """Held-out evaluation of the model families for one target"""
    target: TraitTarget
    precisions: Dict[ModelFamily, Optional[float]]
    best_family: ModelFamily
    best_model: TraitModel
    baseline: Optional[float]

    @property
    def best_precision(self) -> Optional[float]:
        return self.precisions[self.best_family]

    @property
    def uplift(self) -> Optional[float]:
        if self.best_precision is None or self.baseline is None:
            return None
        return self.best_precision - self.baseline


def evaluate_targets(datasets: Dict[TraitTarget, LabelledData],
                     families: Iterable[ModelFamily] = tuple(ModelFamily),
                     seed: int = 0,
                     test_fraction: float = DEFAULT_TEST_FRACTION,
                     trials: int = DEFAULT_BASELINE_TRIALS,
                     max_depth: int = DEFAULT_TREE_DEPTH) -> List[TargetEvaluation]:
    """Train each family per target on a seeded split and keep the most precise.

    The random baseline is computed on the same held-out labels.
    """
    families = list(families)
    results = []
    for index, target in enumerate(t for t in ALL_TARGETS if t in datasets):
        data = datasets[target]
        rng = np.random.default_rng([seed, index])
        order = rng.permutation(len(data))
        n_test = max(1, int(round(len(data) * test_fraction)))
        test = [data[i] for i in order[:n_test]]
        train = [data[i] for i in order[n_test:]]
        test_labels = [label for _, label in test]

        precisions: Dict[ModelFamily, Optional[float]] = {}
        models: Dict[ModelFamily, TraitModel] = {}
        for family in families:
            model = train_model(train, target, family, seed=seed, max_depth=max_depth)
            preds = [predict(model, vector)[0] for vector, _ in test]
            precisions[family] = precision(preds, test_labels)
            models[family] = model

        best = max(families, key=lambda f: -1.0 if precisions[f] is None else precisions[f])
        baseline = random_baseline(test_labels, trials, seed)
        logger.debug(f"{target.label}: best {best.value} precision={precisions[best]} baseline={baseline}")
        results.append(TargetEvaluation(target, precisions, best, models[best], baseline))
    return results


# =============================================================================
# Parsers and codecs
# =============================================================================

class PersonalityParser:
    """Parsers for the personality JSON documents"""

    @staticmethod
    def parse_response(data: dict) -> LikertResponse:
        """Parse {"answers": [44 ints], "gender": "male"|"female"}"""
        if not isinstance(data, dict) or "answers" not in data:
            raise ValidationError("Response document needs an 'answers' list")
        gender = data.get("gender")
        try:
            gender = Gender(str(gender).lower()) if gender else None
        except ValueError:
            raise ValidationError(f"Unknown gender: {gender!r}")
        return LikertResponse(answers=list(data["answers"]), gender=gender)

    @staticmethod
    def parse_scoring_key(data: dict) -> ScoringKey:
        try:
            items = {Trait(name): [int(i) for i in indices] for name, indices in data["items"].items()}
            reversed_items = {int(i) for i in data.get("reversed", [])}
            return ScoringKey(items=items, reversed_items=reversed_items)
        except (KeyError, ValueError, TypeError) as e:
            raise ConfigurationError(f"Invalid scoring key: {e}")

    @staticmethod
    def parse_norm_table(data: dict) -> NormTable:
        try:
            entries = {
                Gender(gender): {
                    Trait(trait): NormEntry(float(norm["mean"]), float(norm["sd"]))
                    for trait, norm in traits.items()
                }
                for gender, traits in data["norms"].items()
            }
        except (KeyError, ValueError, TypeError) as e:
            raise ConfigurationError(f"Invalid norm table: {e}")
        return NormTable(entries)

    @staticmethod
    def parse_correlation_spec(data: dict) -> Dict[TraitTarget, CorrelationPattern]:
        """Parse {"targets": {"N-High": {"prevalence": .5, "correlations": {"Game": .45}}}}"""
        patterns = {}
        try:
            for label, entry in data["targets"].items():
                target = TraitTarget.parse(label)
                correlations = {AppCategory.from_name(name): float(rho)
                                for name, rho in entry.get("correlations", {}).items()}
                patterns[target] = CorrelationPattern(
                    target=target, correlations=correlations,
                    prevalence=float(entry.get("prevalence", 0.5)),
                )
        except (KeyError, AttributeError, TypeError) as e:
            raise ConfigurationError(f"Invalid correlation spec: {e}")
        return patterns


class DatasetCodec:
    """JSON codec for labelled adoption datasets keyed by target"""

    @staticmethod
    def to_dict(datasets: Dict[TraitTarget, LabelledData]) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "targets": {
                target.label: [{"counts": v.to_dict(), "label": label} for v, label in data]
                for target, data in datasets.items()
            },
        }

    @staticmethod
    def from_dict(data: dict) -> Dict[TraitTarget, LabelledData]:
        try:
            return {
                TraitTarget.parse(label): [
                    (AdoptionVector.from_dict(row["counts"]), bool(row["label"])) for row in rows
                ]
                for label, rows in data["targets"].items()
            }
        except (KeyError, TypeError) as e:
            raise ValidationError(f"Invalid dataset document: {e}")


class ModelBankSerializer:
    """JSON codec for a bank of fitted trait models"""

    @staticmethod
    def to_dict(models: Sequence[TraitModel]) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "models": [
                {
                    "target": m.target.label,
                    "family": m.family.value,
                    "feature_order": [c.value for c in m.feature_order],
                    "params": m.params,
                }
                for m in models
            ],
        }

    @staticmethod
    def from_dict(data: dict) -> List[TraitModel]:
        try:
            return [
                TraitModel(
                    target=TraitTarget.parse(entry["target"]),
                    family=ModelFamily(entry["family"]),
                    params=entry["params"],
                    feature_order=tuple(AppCategory(name) for name in entry["feature_order"]),
                )
                for entry in data["models"]
            ]
        except (KeyError, ValueError, TypeError) as e:
            raise ConfigurationError(f"Invalid model bank: {e}")
