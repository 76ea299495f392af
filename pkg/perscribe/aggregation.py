"""PERSCRIBE clause combining

Adjacent proposition trees are joined by an operation allowed for their
rhetorical relation: a cue word, a relative clause, a merge of objects, or a
plain sentence break.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .constants import NEUTRAL_PARAMETER
from .dsynts import (
    DSyntSNode, TRACE_MARKERS, TRACE_OPERATIONS, WordClass, append_trace, main_clause, trace,
)
from .models import Relation
from .params import GenerationParams

logger = logging.getLogger(__name__)


class Operation(Enum):
    PERIOD = "period"
    RELATIVE_CLAUSE = "relative clause"
    WITH = "with cue word"
    CONJUNCTION = "conjunction"
    MERGE = "merge"
    ALSO = "also cue word"
    SO = "so cue word"
    BECAUSE = "because cue word"
    SINCE = "since cue word"
    HOWEVER = "however cue word"
    WHILE = "while cue word"
    BUT = "but cue word"
    ON_THE_OTHER_HAND = "on the other hand cue word"
    EVEN_IF = "even if cue word"
    ALTHOUGH = "although cue word"
    BUT_THOUGH = "but/though cue word"
    MERGE_WITH_COMMA = "merge with comma"
    OBJECT_ELLIPSIS = "object ellipsis"


@dataclass(frozen=True)
class CueFrame:
    """Cue word and how it joins the head clause with the attached one"""
    cue: str
    frame: str


# Generic parameter row weighting each operation
GENERIC_PARAMETER = {
    Operation.PERIOD: "PERIOD",
    Operation.RELATIVE_CLAUSE: "RELATIVE CLAUSE",
    Operation.WITH: "WITH CUE WORD",
    Operation.CONJUNCTION: "CONJUNCTION",
    Operation.MERGE: "MERGE",
    Operation.ALSO: "ALSO CUE WORD",
    Operation.SO: "JUSTIFY - CUE WORD",
    Operation.BECAUSE: "JUSTIFY - CUE WORD",
    Operation.SINCE: "JUSTIFY - CUE WORD",
    Operation.HOWEVER: "CONTRAST - CUE WORD",
    Operation.WHILE: "CONTRAST - CUE WORD",
    Operation.BUT: "CONTRAST - CUE WORD",
    Operation.ON_THE_OTHER_HAND: "CONTRAST - CUE WORD",
    Operation.EVEN_IF: "CONCEDE - CUE WORD",
    Operation.ALTHOUGH: "CONCEDE - CUE WORD",
    Operation.BUT_THOUGH: "CONCEDE - CUE WORD",
    Operation.MERGE_WITH_COMMA: "MERGE WITH COMMA",
    Operation.OBJECT_ELLIPSIS: "CONJ. WITH ELLIPSIS",
}

# Operations allowed per relation, with their relation-specific parameter
ALLOWED_OPERATIONS: Dict[Relation, List[Tuple[Operation, str]]] = {
    Relation.JUSTIFY: [
        (Operation.WITH, "JUSTIFY - WITH CUE WORD"),
        (Operation.RELATIVE_CLAUSE, "JUSTIFY - RELATIVE CLAUSE"),
        (Operation.SO, "JUSTIFY - SO CUE WORD"),
        (Operation.BECAUSE, "JUSTIFY - BECAUSE CUE WORD"),
        (Operation.SINCE, "JUSTIFY - SINCE CUE WORD"),
        (Operation.PERIOD, "JUSTIFY - PERIOD"),
    ],
    Relation.CONTRAST: [
        (Operation.MERGE, "CONTRAST - MERGE"),
        (Operation.HOWEVER, "CONTRAST - HOWEVER CUE WORD"),
        (Operation.WHILE, "CONTRAST - WHILE CUE WORD"),
        (Operation.CONJUNCTION, "CONTRAST - CONJUNCTION"),
        (Operation.BUT, "CONTRAST - BUT CUE WORD"),
        (Operation.ON_THE_OTHER_HAND, "CONTRAST - ON THE OTHER HAND CUE WORD"),
        (Operation.PERIOD, "CONTRAST - PERIOD"),
    ],
    Relation.INFER: [
        (Operation.MERGE, "INFER - MERGE"),
        (Operation.WITH, "INFER - WITH CUE WORD"),
        (Operation.RELATIVE_CLAUSE, "INFER - RELATIVE CLAUSE"),
        (Operation.ALSO, "INFER - ALSO CUE WORD"),
        (Operation.CONJUNCTION, "INFER - CONJUNCTION"),
        (Operation.PERIOD, "INFER - PERIOD"),
    ],
    Relation.CONCEDE: [
        (Operation.EVEN_IF, "CONCEDE - EVEN IF CUE WORD"),
        (Operation.ALTHOUGH, "CONCEDE - ALTHOUGH CUE WORD"),
        (Operation.BUT_THOUGH, "CONCEDE - BUT/THOUGH CUE WORD"),
    ],
    Relation.RESTATE: [
        (Operation.CONJUNCTION, "RESTATE - CONJUNCTION"),
        (Operation.MERGE_WITH_COMMA, "RESTATE - MERGE WITH COMMA"),
        (Operation.OBJECT_ELLIPSIS, "RESTATE - OBJECT ELLIPSIS"),
    ],
}

# {head} is the clause built so far, {clause} the attached one
CUE_FRAMES: Dict[Operation, CueFrame] = {
    Operation.RELATIVE_CLAUSE: CueFrame("which", "{head}, which {clause}"),
    Operation.WITH: CueFrame("with", "{head}, with {clause}"),
    Operation.CONJUNCTION: CueFrame("and", "{head} and {clause}"),
    Operation.ALSO: CueFrame("also", "{head} and {clause}"),
    Operation.SO: CueFrame("so", "{clause}, so {head}"),
    Operation.BECAUSE: CueFrame("because", "{head} because {clause}"),
    Operation.SINCE: CueFrame("since", "{head}, since {clause}"),
    Operation.HOWEVER: CueFrame("however", "{head}; however, {clause}"),
    Operation.WHILE: CueFrame("while", "while {head}, {clause}"),
    Operation.BUT: CueFrame("but", "{head}, but {clause}"),
    Operation.ON_THE_OTHER_HAND: CueFrame("on the other hand", "{head}; on the other hand, {clause}"),
    Operation.EVEN_IF: CueFrame("even if", "even if {clause}, {head}"),
    Operation.ALTHOUGH: CueFrame("although", "although {clause}, {head}"),
    Operation.BUT_THOUGH: CueFrame("but", "{clause}, but {head}"),
    Operation.OBJECT_ELLIPSIS: CueFrame("and", "{head} {clause}"),
}

PARAMETERS_READ = tuple(
    sorted(set(GENERIC_PARAMETER.values()) | {cell for ops in ALLOWED_OPERATIONS.values() for _, cell in ops})
)


def cue_words() -> List[str]:
    return [frame.cue for frame in CUE_FRAMES.values()]


def _is_basic(tree: DSyntSNode) -> bool:
    return tree.get("prop") == "main"


def _same_verb(head: DSyntSNode, tree: DSyntSNode) -> bool:
    a, b = main_clause(head), main_clause(tree)
    return (_is_basic(tree) and a.lexeme == b.lexeme
            and a.get("polarity") == b.get("polarity") and a.get("modal") == b.get("modal")
            and not a.get("ellipsis"))


def _restates_head(head: DSyntSNode, tree: DSyntSNode) -> bool:
    clause = main_clause(head)
    return (_same_verb(head, tree) and tree.get("source") == clause.get("prop_id")
            and len(clause.children("II")) == 1)


PRECONDITIONS: Dict[Operation, Callable[[DSyntSNode, DSyntSNode], bool]] = {
    Operation.MERGE: _same_verb,
    Operation.MERGE_WITH_COMMA: _same_verb,
    Operation.OBJECT_ELLIPSIS: _restates_head,
    Operation.WITH: lambda head, tree: _is_basic(tree) and tree.lexeme == "have" and bool(tree.children("II")),
    Operation.RELATIVE_CLAUSE: lambda head, tree: _is_basic(tree),
    Operation.ALSO: lambda head, tree: _is_basic(tree),
}


def operation_weight(op: Operation, cell: str, params: GenerationParams) -> float:
    """Weight of an operation: the larger of its generic row and its relation cell"""
    return max(params[GENERIC_PARAMETER[op]], params[cell])


def choose_operation(relation: Optional[Relation], head: DSyntSNode, tree: DSyntSNode,
                     params: GenerationParams, rng: np.random.Generator) -> Operation:
    """Sample an operation for attaching tree to head.

    Operations weighted above neutral are sampled in proportion to their
    excess; when none is, the allowed operations are equally likely.
    Operations whose precondition fails are dropped, and PERIOD remains when
    nothing is left.
    """
    if relation is None:
        return Operation.PERIOD
    allowed = [
        (op, operation_weight(op, cell, params))
        for op, cell in ALLOWED_OPERATIONS[relation]
        if PRECONDITIONS.get(op, lambda h, t: True)(head, tree)
    ]
    if not allowed:
        return Operation.PERIOD

    strong = [(op, w - NEUTRAL_PARAMETER) for op, w in allowed if w > NEUTRAL_PARAMETER]
    if strong:
        weights = np.array([w for _, w in strong])
        index = int(rng.choice(len(strong), p=weights / weights.sum()))
        return strong[index][0]
    return allowed[int(rng.integers(len(allowed)))][0]


def _attach(head: DSyntSNode, op: Operation, dependent: DSyntSNode):
    cue = CUE_FRAMES[op]
    head.add("ATTR", DSyntSNode(
        lexeme=cue.cue,
        word_class=WordClass.MARKER,
        relations={"II": [dependent]},
        attributes={"role": "cue", "frame": cue.frame, "operation": op.value},
    ))


def combine(head: DSyntSNode, tree: DSyntSNode, op: Operation) -> List[DSyntSNode]:
    """Apply an operation; returns the resulting sentence trees"""
    if op == Operation.PERIOD:
        return [head, tree]

    head = head.copy()
    tree = tree.copy()
    clause = main_clause(head)

    if op in (Operation.MERGE, Operation.MERGE_WITH_COMMA):
        coord = "," if op == Operation.MERGE_WITH_COMMA else "and"
        for index, obj in enumerate(main_clause(tree).children("II")):
            if index == 0:
                obj.attributes["coord"] = coord
            clause.add("II", obj)
    elif op == Operation.WITH:
        obj = tree.children("II")[0]
        if tree.get("polarity") == "neg":
            obj.attributes["det"] = "no"
        _attach(head, op, obj)
    else:
        if op == Operation.RELATIVE_CLAUSE:
            tree.attributes["omit_subject"] = "yes"
        elif op == Operation.ALSO:
            subject = tree.subject
            if subject is not None:
                tree.relations["I"] = [DSyntSNode("it", WordClass.PRONOUN, attributes={"role": "subject"})]
            tree.add("ATTR", DSyntSNode("also", WordClass.ADVERB, attributes={"position": "pre-verb"}))
        elif op == Operation.OBJECT_ELLIPSIS:
            clause.attributes["ellipsis"] = "object"
        _attach(head, op, tree)

    for value in trace(tree, TRACE_OPERATIONS):
        append_trace(head, TRACE_OPERATIONS, value)
    for value in trace(tree, TRACE_MARKERS):
        append_trace(head, TRACE_MARKERS, value)
    return [head]


def aggregate(trees: Sequence[Tuple[DSyntSNode, Optional[Relation]]], params: GenerationParams,
              rng: np.random.Generator) -> List[DSyntSNode]:
    """Combine proposition trees into sentence trees.

    Each tree is attached to the sentence built so far through an operation
    sampled for its relation to the predecessor; PERIOD starts a new sentence.
    """
    if not trees:
        return []
    sentences = [trees[0][0]]
    for tree, relation in trees[1:]:
        head = sentences.pop()
        op = choose_operation(relation, head, tree, params, rng)
        label = f"aggregation:{relation.value if relation else 'None'}/{op.value}"
        result = combine(head, tree, op)
        append_trace(result[-1] if op == Operation.PERIOD else result[0], TRACE_OPERATIONS, label)
        logger.debug(label)
        sentences.extend(result)
    return sentences
