"""PERSCRIBE deep syntactic structures

Dependency-style sentence trees: lexemes linked by I (subject), II (object)
and ATTR (modifier) relations, each node carrying realisation attributes.
"""

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional

from .errors import RealizationError, ConfigurationError

RELATIONS = ("I", "II", "ATTR")

# Root attributes carrying provenance, values joined by TRACE_SEPARATOR
TRACE_MARKERS = "markers"
TRACE_OPERATIONS = "operations"
TRACE_SEPARATOR = "|"


class WordClass(Enum):
    VERB = "Verb"
    NOUN = "Noun"
    ADJECTIVE = "Adjective"
    ADVERB = "Adverb"
    MARKER = "Marker"
    PRONOUN = "Pronoun"


@dataclass
class DSyntSNode:
    """A lexeme with its dependents and realisation attributes"""
    lexeme: str
    word_class: WordClass
    relations: Dict[str, List["DSyntSNode"]] = field(default_factory=dict)
    attributes: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        """Validate relation names"""
        for name in self.relations:
            if name not in RELATIONS:
                raise RealizationError(f"Unknown relation {name!r} under {self.lexeme!r}")
        if len(self.relations.get("I", [])) > 1:
            raise RealizationError(f"Relation I holds more than one child under {self.lexeme!r}")

    def children(self, relation: str) -> List["DSyntSNode"]:
        return self.relations.get(relation, [])

    def add(self, relation: str, node: "DSyntSNode", front: bool = False):
        """Attach a dependent"""
        if relation not in RELATIONS:
            raise RealizationError(f"Unknown relation {relation!r}")
        if relation == "I" and self.children("I"):
            raise RealizationError(f"{self.lexeme!r} already has a subject")
        nodes = self.relations.setdefault(relation, [])
        if front:
            nodes.insert(0, node)
        else:
            nodes.append(node)

    def get(self, key: str, default: str = "") -> str:
        return self.attributes.get(key, default)

    @property
    def subject(self) -> Optional["DSyntSNode"]:
        subjects = self.children("I")
        return subjects[0] if subjects else None

    def iter_nodes(self) -> Iterator["DSyntSNode"]:
        """Pre-order traversal"""
        yield self
        for relation in RELATIONS:
            for child in self.children(relation):
                yield from child.iter_nodes()

    def copy(self) -> "DSyntSNode":
        return copy.deepcopy(self)

    def is_clause(self) -> bool:
        return self.word_class == WordClass.VERB


def validate_tree(root: DSyntSNode):
    """Check a sentence tree: Verb root, acyclic, at most one subject per node

    Raises:
        RealizationError: The tree is malformed
    """
    if root.word_class != WordClass.VERB:
        raise RealizationError(f"Sentence root must be a Verb, got {root.word_class.value} {root.lexeme!r}")

    seen = set()

    def visit(node: DSyntSNode):
        if id(node) in seen:
            raise RealizationError(f"Node {node.lexeme!r} appears twice in the tree")
        seen.add(id(node))
        if len(node.children("I")) > 1:
            raise RealizationError(f"Relation I holds more than one child under {node.lexeme!r}")
        for relation in RELATIONS:
            for child in node.children(relation):
                visit(child)

    visit(root)


def main_clause(root: DSyntSNode) -> DSyntSNode:
    """The clause realising the sentence's leading proposition.

    This is the root itself for basic templates and the embedded that-clause
    for extended ones.
    """
    if root.get("prop") == "main":
        return root
    for child in root.children("II"):
        if child.is_clause():
            found = main_clause(child)
            if found.get("prop") == "main":
                return found
    return root


def find_first(node: DSyntSNode, predicate: Callable[[DSyntSNode], bool],
               relations=("II", "ATTR")) -> Optional[DSyntSNode]:
    """First descendant (pre-order, restricted to the given relations) matching a predicate"""
    for relation in relations:
        for child in node.children(relation):
            # attached clauses belong to other propositions
            if child.get("role") == "cue" or (child.is_clause() and child.get("prop") == "main"):
                continue
            if predicate(child):
                return child
            found = find_first(child, predicate, relations)
            if found is not None:
                return found
    return None


def append_trace(root: DSyntSNode, key: str, value: str):
    current = root.attributes.get(key)
    root.attributes[key] = value if not current else current + TRACE_SEPARATOR + value


def trace(root: DSyntSNode, key: str) -> List[str]:
    value = root.attributes.get(key, "")
    return value.split(TRACE_SEPARATOR) if value else []


# =============================================================================
# JSON skeletons
# =============================================================================

def node_from_dict(data: dict) -> DSyntSNode:
    """Build a node from {"lexeme", "class", "attributes", "I", "II", "ATTR"}.

    Slot placeholders are written {"slot": name} and become Noun nodes with a
    "slot" attribute, bound later by the template bank.
    """
    if not isinstance(data, dict):
        raise ConfigurationError(f"Tree node must be an object: {data!r}")
    if "slot" in data:
        attributes = {"slot": str(data["slot"])}
        attributes.update({k: str(v) for k, v in data.get("attributes", {}).items()})
        return DSyntSNode(lexeme="", word_class=WordClass.NOUN, attributes=attributes)
    try:
        word_class = WordClass(data["class"])
        node = DSyntSNode(
            lexeme=str(data["lexeme"]),
            word_class=word_class,
            attributes={k: str(v) for k, v in data.get("attributes", {}).items()},
        )
    except (KeyError, ValueError) as e:
        raise ConfigurationError(f"Invalid tree node {data!r}: {e}")
    for relation in RELATIONS:
        for child in data.get(relation, []):
            node.add(relation, node_from_dict(child))
    return node


def node_to_dict(node: DSyntSNode) -> dict:
    data = {"lexeme": node.lexeme, "class": node.word_class.value}
    if node.attributes:
        data["attributes"] = dict(node.attributes)
    for relation in RELATIONS:
        if node.children(relation):
            data[relation] = [node_to_dict(child) for child in node.children(relation)]
    return data
