"""PERSCRIBE surface realiser

Deterministic linearisation of sentence trees into English. Morphology is
limited to what the templates need: copula and "have" forms, third-person
-s, do-support under negation and the contractions isn't/doesn't/couldn't.
"""

import logging
from typing import List

from .constants import ELLIPSIS
from .dsynts import DSyntSNode, WordClass, validate_tree
from .errors import RealizationError

logger = logging.getLogger(__name__)

INTENSIFIER = "very"
FUNCTION_WORDS = ("this", "the", "is", "are", "am", "does", "do", "not", "no", "that", "it", INTENSIFIER)

CONTRACTIONS = {
    "is not": "isn't",
    "does not": "doesn't",
    "do not": "don't",
    "could not": "couldn't",
    "would not": "wouldn't",
}


def third_person(lemma: str) -> str:
    """Third-person singular present of a verb lemma"""
    if lemma == "have":
        return "has"
    if lemma.endswith(("s", "sh", "ch", "x", "z", "o")):
        return lemma + "es"
    if len(lemma) > 1 and lemma.endswith("y") and lemma[-2] not in "aeiou":
        return lemma[:-1] + "ies"
    return lemma + "s"


def _contract(text: str) -> str:
    return CONTRACTIONS.get(text, text)


def _first_person(clause: DSyntSNode) -> bool:
    subject = clause.subject
    return subject is not None and subject.word_class == WordClass.PRONOUN and subject.lexeme == "I"


def verb_group(clause: DSyntSNode) -> List[str]:
    """Inflected verb group as words: auxiliary (if any) then the main verb"""
    lemma = clause.lexeme
    negated = clause.get("polarity") == "neg"
    modal = clause.get("modal")

    if modal:
        head = _contract(f"{modal} not") if negated else modal
        return [head, lemma]
    if lemma == "be":
        form = "am" if _first_person(clause) else "is"
        return [_contract(f"{form} not") if negated else form]
    if negated:
        return [_contract("do not" if _first_person(clause) else "does not"), lemma]
    return [lemma if _first_person(clause) else third_person(lemma)]


def _stutter(text: str, surface: str) -> str:
    """Repeat the first letters of the first word: "sending" -> "se-se-sending" """
    first, _, rest = text.partition(" ")
    letters = 2 if len(first) >= 4 else 1
    prefix = first[:letters]
    stuttered = f"{prefix}{surface}{prefix.lower()}{surface}{first}"
    return f"{stuttered} {rest}" if rest else stuttered


def _markers_at(node: DSyntSNode, position: str) -> List[DSyntSNode]:
    return [m for m in node.children("ATTR")
            if m.word_class == WordClass.MARKER and m.get("position") == position and m.get("role") != "cue"]


def _marker_piece(marker: DSyntSNode) -> str:
    """Surface with its joiner: "Err..." or "I mean," or "really" """
    return marker.lexeme + marker.get("joiner")


def realize_adjective(node: DSyntSNode) -> str:
    words = [_marker_piece(m) for m in _markers_at(node, "pre-adjective")]
    if node.get("intensity") == "extreme":
        words.append(INTENSIFIER)
    words.append(node.lexeme)
    return " ".join(words)


def realize_phrase(node: DSyntSNode) -> str:
    """Noun phrase, pronoun, adjective or embedded clause"""
    if node.word_class == WordClass.VERB:
        return realize_clause(node)
    if node.word_class == WordClass.ADJECTIVE:
        return realize_adjective(node)
    if node.word_class in (WordClass.PRONOUN, WordClass.ADVERB, WordClass.MARKER):
        text = node.lexeme
    else:
        words = []
        if node.get("prep"):
            words.append(node.get("prep"))
        if node.get("role") == "subject" and node.get("mention") == "subsequent":
            words.append("this")
        elif node.get("det"):
            words.append(node.get("det"))
        for modifier in node.children("ATTR"):
            if modifier.word_class == WordClass.ADJECTIVE:
                words.append(realize_adjective(modifier))
        for modifier in node.children("ATTR"):
            if modifier.word_class == WordClass.NOUN:
                words.append(realize_phrase(modifier))
        words.append(node.lexeme)
        text = " ".join(w for w in words if w)
    if node.get("stutter"):
        text = _stutter(text, node.get("stutter"))
    return text


def _objects(clause: DSyntSNode) -> str:
    text = ""
    for index, obj in enumerate(clause.children("II")):
        phrase = realize_phrase(obj)
        if index == 0:
            text = phrase
            continue
        coord = obj.get("coord", "and")
        if coord == ",":
            text += ", " + phrase
        elif coord:
            text += f" {coord} {phrase}"
        else:
            text += " " + phrase
    return text


def realize_clause(clause: DSyntSNode) -> str:
    """Subject, verb group with its adverbs and markers, then objects"""
    if clause.word_class != WordClass.VERB:
        raise RealizationError(f"Clause head must be a Verb, got {clause.word_class.value} {clause.lexeme!r}")

    words = []
    if clause.get("complementizer"):
        words.append(clause.get("complementizer"))
    subject = clause.subject
    if subject is not None and not clause.get("omit_subject"):
        words.append(realize_phrase(subject))

    pre_verb = [m.lexeme for m in clause.children("ATTR")
                if m.get("position") == "pre-verb" and m.word_class in (WordClass.ADVERB, WordClass.MARKER)]
    post_verb = [_marker_piece(m) for m in _markers_at(clause, "post-verb")]
    group = verb_group(clause)
    if clause.lexeme == "be" and not clause.get("modal"):
        # adverbs follow the copula: "is really", "isn't really"
        words.extend(group + pre_verb + post_verb)
    else:
        words.extend(pre_verb + group + post_verb)

    if clause.get("ellipsis") == "object":
        return " ".join(words) + ELLIPSIS

    words.extend(_marker_piece(m) for m in _markers_at(clause, "pre-object"))
    objects = _objects(clause)
    if objects:
        words.append(objects)
    return " ".join(w for w in words if w)


def _with_attachments(clause: DSyntSNode, text: str) -> str:
    for cue in clause.children("ATTR"):
        if cue.get("role") != "cue":
            continue
        dependents = cue.children("II")
        if not dependents:
            raise RealizationError(f"Cue word {cue.lexeme!r} has nothing attached")
        text = cue.get("frame").format(head=text, clause=realize_phrase(dependents[0]))
    return text


def realize(tree: DSyntSNode) -> str:
    """Linearise a sentence tree.

    Start markers precede the sentence with their joiners ("Err... ",
    "I mean, "), end markers and tag questions follow it, and the sentence
    closes with the root's punctuation (default ".").

    Start markers without a joiner ("it seems that") introduce the clause,
    so they go after every punctuated one.

    Raises:
        RealizationError: The tree is malformed
    """
    validate_tree(tree)
    text = _with_attachments(tree, realize_clause(tree))

    openers = sorted(_markers_at(tree, "start"), key=lambda m: not m.get("joiner"))
    prefix = "".join(_marker_piece(m) + " " for m in openers)
    text = prefix + text
    for marker in _markers_at(tree, "end"):
        text += f"{marker.get('joiner')} {marker.lexeme}"
    if tree.get("tag"):
        text += f", {tree.get('tag')}"
    text += tree.get("punct", ".")
    return text[0].upper() + text[1:]
