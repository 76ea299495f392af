"""PERSCRIBE pragmatic markers

Hedges, fillers, expletives, tag questions and the like, grafted onto
sentence trees at insertion points found by walking the tree. A handful of
classes rewrite the tree instead (subject implicitness, pronominalisation,
negation, stuttering) and run before any insertion.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .constants import (
    MARKER_BAND_CEILING, MARKER_FIRE_THRESHOLD, MARKER_PARAMETERS, MARKER_PROBABLE_THRESHOLD,
)
from .dsynts import (
    DSyntSNode, TRACE_MARKERS, WordClass, append_trace, find_first, main_clause,
)
from .params import GenerationParams
from .errors import ConfigurationError

logger = logging.getLogger(__name__)

POSITIONS = ("start", "pre-verb", "post-verb", "pre-object", "pre-adjective", "end")

TRANSFORM_CLASSES = ("SUBJECT IMPLICITNESS", "PRONOMINALIZATION", "NEGATION", "STUTTERING")
PUNCTUATION_CLASSES = ("EXCLAMATION", "TAG QUESTION")

PARAMETERS_READ = MARKER_PARAMETERS

_CONDITION = re.compile(r"^\s*(?P<name>.+?)\s*(?P<op>[<>])\s*(?P<value>[0-9.]+)\s*$")


@dataclass
class MarkerForm:
    """One surface form of a marker class and where it may go"""
    surface: str
    position: str = "start"
    joiner: str = ","
    requires: str = "sentence"
    conditions: List[Tuple[str, str, float]] = field(default_factory=list)

    def __post_init__(self):
        if self.position not in POSITIONS:
            raise ConfigurationError(f"Unknown marker position {self.position!r} for {self.surface!r}")
        if self.requires not in INSERTION_POINTS:
            raise ConfigurationError(f"Unknown insertion point {self.requires!r} for {self.surface!r}")

    def eligible(self, params: GenerationParams) -> bool:
        """Whether every parameter condition on this form holds"""
        for name, op, value in self.conditions:
            actual = params[name]
            if op == "<" and not actual < value:
                return False
            if op == ">" and not actual > value:
                return False
        return True

    @classmethod
    def from_dict(cls, data: dict) -> "MarkerForm":
        conditions = []
        for text in data.get("when", []):
            match = _CONDITION.match(text)
            if not match or match.group("name") not in MARKER_PARAMETERS:
                raise ConfigurationError(f"Invalid marker condition {text!r}")
            conditions.append((match.group("name"), match.group("op"), float(match.group("value"))))
        return cls(
            surface=str(data["surface"]),
            position=data.get("position", "start"),
            joiner=data.get("joiner", ","),
            requires=data.get("requires", "sentence"),
            conditions=conditions,
        )


@dataclass
class PragmaticMarker:
    """A marker class, named after the parameter controlling it"""
    marker_class: str
    forms: List[MarkerForm]

    def __post_init__(self):
        """Validate class name and forms"""
        if self.marker_class not in MARKER_PARAMETERS:
            raise ConfigurationError(f"Unknown marker class: {self.marker_class!r}")
        if not self.forms:
            raise ConfigurationError(f"Marker class {self.marker_class} has no surface forms")

    @property
    def phase(self) -> int:
        if self.marker_class in TRANSFORM_CLASSES:
            return 0
        if self.marker_class in PUNCTUATION_CLASSES:
            return 2
        return 1


class MarkerBank:
    """Marker classes in application order, plus antonyms used by negation"""

    def __init__(self, markers: List[PragmaticMarker], antonyms: Optional[Dict[str, str]] = None):
        self.markers = sorted(markers, key=lambda m: m.phase)
        self.antonyms = dict(antonyms or {})
        self._by_class = {m.marker_class: m for m in markers}

    def get(self, marker_class: str) -> Optional[PragmaticMarker]:
        return self._by_class.get(marker_class)

    def surfaces(self) -> List[str]:
        words = [form.surface for m in self.markers for form in m.forms]
        return words + list(self.antonyms) + list(self.antonyms.values())

    @classmethod
    def from_dict(cls, data: dict) -> "MarkerBank":
        try:
            markers = [
                PragmaticMarker(entry["class"], [MarkerForm.from_dict(f) for f in entry["forms"]])
                for entry in data["classes"]
            ]
        except KeyError as e:
            raise ConfigurationError(f"Invalid marker bank: missing {e}")
        return cls(markers, data.get("antonyms", {}))


def fires(value: float, rng: np.random.Generator) -> bool:
    """Above 0.5 a class always fires; between 0.3 and 0.5 on a seeded draw; otherwise never"""
    if value > MARKER_FIRE_THRESHOLD:
        return True
    if value > MARKER_PROBABLE_THRESHOLD:
        chance = (value - MARKER_PROBABLE_THRESHOLD) / (MARKER_FIRE_THRESHOLD - MARKER_PROBABLE_THRESHOLD)
        return bool(rng.random() < chance * MARKER_BAND_CEILING)
    return False


# =============================================================================
# Insertion points
# =============================================================================

def _adjective(clause: DSyntSNode) -> Optional[DSyntSNode]:
    return find_first(clause, lambda n: n.word_class == WordClass.ADJECTIVE)


def _subsequent_subject(clause: DSyntSNode) -> bool:
    subject = clause.subject
    return (subject is not None and subject.word_class == WordClass.NOUN
            and subject.get("mention") == "subsequent")


def clause_shape(clause: DSyntSNode) -> str:
    """Verb shape deciding the tag question: be, negated-be, do, negated-do, modal, negated-modal"""
    negated = clause.get("polarity") == "neg"
    if clause.get("modal"):
        shape = "modal"
    elif clause.lexeme == "be":
        shape = "be"
    else:
        shape = "do"
    return f"negated-{shape}" if negated else shape


INSERTION_POINTS: Dict[str, Callable[[DSyntSNode, DSyntSNode], bool]] = {
    "sentence": lambda root, clause: True,
    "utterance-start": lambda root, clause: root.get("utterance") == "first",
    "be-root": lambda root, clause: clause.lexeme == "be" and not clause.get("modal") and not clause.get("ellipsis"),
    "be-object": lambda root, clause: (clause.lexeme == "be" and bool(clause.children("II"))
                                       and not clause.get("ellipsis")),
    "adjective": lambda root, clause: _adjective(clause) is not None,
    "subject": lambda root, clause: clause.subject is not None and not clause.get("omit_subject"),
    "subsequent-subject": lambda root, clause: _subsequent_subject(clause),
    "subsequent-claim": lambda root, clause: (_subsequent_subject(clause)
                                              and clause.get("pattern") == "suspicious-subject"),
    "antonym": lambda root, clause: clause.get("polarity") != "neg",
    "be": lambda root, clause: clause_shape(clause) == "be",
    "negated-be": lambda root, clause: clause_shape(clause) == "negated-be",
    "do": lambda root, clause: clause_shape(clause) == "do",
    "negated-do": lambda root, clause: clause_shape(clause) == "negated-do",
    "modal": lambda root, clause: clause_shape(clause) == "modal",
    "negated-modal": lambda root, clause: clause_shape(clause) == "negated-modal",
}


# =============================================================================
# Transformations
# =============================================================================

def _make_implicit(root: DSyntSNode, clause: DSyntSNode, form: MarkerForm, bank: MarkerBank) -> bool:
    """Rewrite "this permission is the suspicious permission" as "the permission is suspicious" """
    adjective = _adjective(clause)
    if adjective is None:
        return False
    subject = clause.subject
    subject_type = subject.get("subject_type")
    subject.lexeme = subject_type
    subject.attributes["det"] = "the"
    subject.attributes["mention"] = "implicit"
    clause.relations["II"] = [adjective]
    clause.attributes["pattern"] = "suspicious-adjective"
    return True


def _pronominalize(root: DSyntSNode, clause: DSyntSNode, form: MarkerForm, bank: MarkerBank) -> bool:
    old = clause.subject
    clause.relations["I"] = [DSyntSNode(form.surface, WordClass.PRONOUN, attributes={
        "role": "subject", "subject_type": old.get("subject_type"), "mention": "pronoun",
    })]
    return True


def _negate(root: DSyntSNode, clause: DSyntSNode, form: MarkerForm, bank: MarkerBank) -> bool:
    """Swap a modifier for its antonym and negate the verb"""
    adjective = find_first(clause, lambda n: n.word_class == WordClass.ADJECTIVE and n.lexeme in bank.antonyms)
    if adjective is None:
        return False
    adjective.lexeme = bank.antonyms[adjective.lexeme]
    adjective.attributes["fixed"] = "yes"
    clause.attributes["polarity"] = "neg"
    return True


def _stutter(root: DSyntSNode, clause: DSyntSNode, form: MarkerForm, bank: MarkerBank) -> bool:
    clause.subject.attributes["stutter"] = form.surface
    return True


TRANSFORMS = {
    "SUBJECT IMPLICITNESS": _make_implicit,
    "PRONOMINALIZATION": _pronominalize,
    "NEGATION": _negate,
    "STUTTERING": _stutter,
}


def _graft(root: DSyntSNode, clause: DSyntSNode, marker: PragmaticMarker, form: MarkerForm) -> bool:
    surface = form.surface
    if "{subject_type}" in surface:
        subject = clause.subject
        subject_type = subject.get("subject_type") if subject is not None else ""
        surface = surface.format(subject_type=subject_type or "app")

    if marker.marker_class == "EXCLAMATION":
        if root.get("punct") != "?":
            root.attributes["punct"] = surface
        return True
    if marker.marker_class == "TAG QUESTION":
        root.attributes["tag"] = surface
        root.attributes["punct"] = "?"
        return True

    node = DSyntSNode(surface, WordClass.MARKER, attributes={
        "position": form.position, "joiner": form.joiner, "class": marker.marker_class,
    })
    if form.position in ("start", "end"):
        root.add("ATTR", node)
    elif form.position == "pre-adjective":
        adjective = _adjective(clause)
        if adjective is None:
            return False
        adjective.add("ATTR", node)
    else:
        clause.add("ATTR", node)
    return True


def insert_markers(tree: DSyntSNode, params: GenerationParams, bank: MarkerBank,
                   rng: np.random.Generator) -> DSyntSNode:
    """Apply every marker class whose parameter fires.

    A class contributes at most one form per sentence, chosen among the forms
    whose conditions hold and whose insertion point exists. Classes with no
    usable form are skipped.
    """
    root = tree.copy()
    clause = main_clause(root)

    for marker in bank.markers:
        if not fires(params[marker.marker_class], rng):
            continue
        forms = [
            f for f in marker.forms
            if f.eligible(params) and INSERTION_POINTS[f.requires](root, clause)
        ]
        if not forms:
            continue
        form = forms[int(rng.integers(len(forms)))] if len(forms) > 1 else forms[0]

        if marker.marker_class in TRANSFORMS:
            applied = TRANSFORMS[marker.marker_class](root, clause, form, bank)
        else:
            applied = _graft(root, clause, marker, form)
        if applied:
            append_trace(root, TRACE_MARKERS, f"{marker.marker_class}:{form.surface}")
            logger.debug(f"Marker {marker.marker_class}: {form.surface!r}")

    return root
