"""PERSCRIBE syntactic templates

Basic templates realise one proposition pattern as a single clause. Extended
templates embed the same clause under a frame such as "I would say that ..."
or "It is clear that ...".
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List

import numpy as np

from .constants import NEUTRAL_PARAMETER, TEMPLATE_PARAMETERS
from .dsynts import (
    DSyntSNode, TRACE_OPERATIONS, WordClass, append_trace, main_clause, node_from_dict,
)
from .models import Proposition
from .params import GenerationParams
from .errors import ConfigurationError, TemplateCoverageError

logger = logging.getLogger(__name__)

SUBJECT_SLOT = "subject"
CLAUSE_SLOT = "clause"
SOFTENING_MODAL = "could"

# Node attributes that realise as words
WORD_ATTRIBUTES = ("det", "prep", "modal", "complementizer")

PARAMETERS_READ = TEMPLATE_PARAMETERS


class TemplateVariant(Enum):
    BASIC = "Basic"
    EXTENDED = "Extended"


@dataclass
class SyntacticTemplate:
    """A tree skeleton for one proposition pattern"""
    pattern: str
    variant: TemplateVariant
    skeleton: DSyntSNode
    self_reference_count: int = 0
    polarity_hint: str = ""
    name: str = ""

    def __post_init__(self):
        """Validate that extended templates embed a clause or refer to the speaker"""
        if self.variant == TemplateVariant.EXTENDED:
            has_clause = any(n.is_clause() for n in self.skeleton.iter_nodes() if n is not self.skeleton)
            has_self = any(n.word_class == WordClass.PRONOUN and n.lexeme == "I" for n in self.skeleton.iter_nodes())
            if not (has_clause or has_self):
                raise ConfigurationError(f"Extended template {self.name!r} has no subordinate clause or self-reference")


class TemplateBank:
    """All templates, indexed by proposition pattern"""

    def __init__(self, templates: List[SyntacticTemplate]):
        self.templates = templates
        self._by_pattern: Dict[str, List[SyntacticTemplate]] = {}
        for template in templates:
            self._by_pattern.setdefault(template.pattern, []).append(template)

    def matching(self, pattern: str) -> List[SyntacticTemplate]:
        return list(self._by_pattern.get(pattern, []))

    def patterns(self) -> List[str]:
        return list(self._by_pattern)

    def lexemes(self) -> List[str]:
        """Every lexeme written in a skeleton"""
        return [n.lexeme for t in self.templates for n in t.skeleton.iter_nodes() if n.lexeme]

    def words(self) -> List[str]:
        """Lexemes plus the function words carried as attributes (determiners, modals, ...)"""
        words = self.lexemes()
        for template in self.templates:
            for node in template.skeleton.iter_nodes():
                words.extend(node.get(key) for key in WORD_ATTRIBUTES if node.get(key))
        return words + [SOFTENING_MODAL]

    @classmethod
    def from_dict(cls, data: dict) -> "TemplateBank":
        """Parse {"patterns": {name: {"tree", "polarity_hint"}}, "extensions": [...]}.

        Every pattern yields one Basic template plus one Extended template per
        extension, built by binding the basic clause into the extension's
        clause slot.
        """
        templates = []
        try:
            extensions = data.get("extensions", [])
            for pattern, spec in data["patterns"].items():
                basic = node_from_dict(spec["tree"])
                if not basic.is_clause():
                    raise ConfigurationError(f"Template {pattern!r} root must be a Verb")
                hint = spec.get("polarity_hint", "")
                templates.append(SyntacticTemplate(pattern, TemplateVariant.BASIC, basic, 0, hint, "basic"))
                for extension in extensions:
                    skeleton = _bind_slot(node_from_dict(extension["tree"]), CLAUSE_SLOT, basic.copy())
                    templates.append(SyntacticTemplate(
                        pattern, TemplateVariant.EXTENDED, skeleton,
                        int(extension.get("self_reference_count", 0)), hint, extension["name"],
                    ))
        except KeyError as e:
            raise ConfigurationError(f"Invalid template bank: missing {e}")
        return cls(templates)


def _bind_slot(node: DSyntSNode, slot: str, value: DSyntSNode) -> DSyntSNode:
    """Replace slot placeholders (in place) with a copy of value carrying the slot's attributes"""
    for relation, children in node.relations.items():
        for index, child in enumerate(children):
            if child.get("slot") == slot:
                bound = value.copy()
                bound.attributes.update({k: v for k, v in child.attributes.items() if k != "slot"})
                children[index] = bound
            else:
                _bind_slot(child, slot, value)
    return node


def _subject_node(prop: Proposition) -> DSyntSNode:
    return DSyntSNode(
        lexeme=prop.subject,
        word_class=WordClass.NOUN,
        attributes={
            "role": "subject",
            "subject_type": prop.subject_type,
            "mention": "first",
            "phrase": prop.subject,
        },
    )


def _self_reference_aligned(template: SyntacticTemplate, value: float) -> bool:
    if value > NEUTRAL_PARAMETER:
        return template.self_reference_count > 0
    if value < NEUTRAL_PARAMETER:
        return template.self_reference_count == 0
    return True


def select_template(prop: Proposition, params: GenerationParams, bank: TemplateBank,
                    rng: np.random.Generator) -> DSyntSNode:
    """Choose and instantiate a template for a proposition.

    Claims take an Extended template with probability CLAIM COMPLEXITY;
    among Extended templates those agreeing with SELF-REFERENCES are
    preferred. A claim whose CLAIM POLARITY is below neutral gets its
    copula softened to "could be".

    Raises:
        TemplateCoverageError: No template matches the proposition's pattern
    """
    candidates = bank.matching(prop.pattern)
    if not candidates:
        raise TemplateCoverageError(f"No template for pattern {prop.pattern!r} (proposition {prop.id})")

    basic = [t for t in candidates if t.variant == TemplateVariant.BASIC]
    extended = [t for t in candidates if t.variant == TemplateVariant.EXTENDED]

    use_extended = False
    if prop.is_claim() and extended:
        use_extended = rng.random() < params["CLAIM COMPLEXITY"]
    if not basic:
        use_extended = True

    if use_extended:
        aligned = [t for t in extended if _self_reference_aligned(t, params["SELF-REFERENCES"])]
        pool = aligned or extended
    else:
        pool = basic
    template = pool[int(rng.integers(len(pool)))] if len(pool) > 1 else pool[0]

    root = template.skeleton.copy()
    _bind_slot(root, SUBJECT_SLOT, _subject_node(prop))
    for node in root.iter_nodes():
        if "{subject_type}" in node.lexeme:
            node.lexeme = node.lexeme.format(subject_type=prop.subject_type)

    clause = _find_clause(root, template)
    clause.attributes.update({
        "prop": "main",
        "prop_id": prop.id,
        "pattern": prop.pattern,
        "kind": prop.kind.value,
    })
    if prop.rel_to:
        clause.attributes["source"] = prop.rel_to[0]

    for node in clause.iter_nodes():
        if node.get("role") == "subject":
            continue
        if node.lexeme in prop.lexical_overrides:
            node.lexeme = prop.lexical_overrides[node.lexeme]
            node.attributes["fixed"] = "yes"
        if prop.intensity == "extreme" and node.word_class == WordClass.ADJECTIVE:
            node.attributes["intensity"] = "extreme"

    if (prop.is_claim() and params["CLAIM POLARITY"] < NEUTRAL_PARAMETER
            and template.polarity_hint == "Positive" and clause.lexeme == "be"):
        clause.attributes["modal"] = SOFTENING_MODAL

    append_trace(root, TRACE_OPERATIONS, f"template:{prop.pattern}/{template.variant.value}:{template.name}")
    logger.debug(f"Proposition {prop.id}: {template.variant.value} template {template.name}")
    return root


def _find_clause(root: DSyntSNode, template: SyntacticTemplate) -> DSyntSNode:
    """The proposition clause: the root of a Basic template, the embedded clause of an Extended one"""
    if template.variant == TemplateVariant.BASIC:
        return root
    for node in root.iter_nodes():
        if node is not root and node.is_clause() and node.get("complementizer"):
            return node
    return main_clause(root)
