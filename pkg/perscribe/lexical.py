"""PERSCRIBE lexical choice"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .constants import LEXICAL_PARAMETERS, NEUTRAL_PARAMETER
from .dsynts import DSyntSNode, WordClass
from .params import GenerationParams
from .errors import ConfigurationError

logger = logging.getLogger(__name__)

PARAMETERS_READ = LEXICAL_PARAMETERS

# Scores closer than this are ties
TIE_TOLERANCE = 1e-12


@dataclass
class SynonymCandidate:
    word: str
    frequency_rank: int = 1  # 1 = most frequent
    strength: int = 0


@dataclass
class SynonymSet:
    """Interchangeable words; the first member is canonical"""
    word_class: WordClass
    members: List[SynonymCandidate]

    def __post_init__(self):
        if not self.members:
            raise ConfigurationError("Synonym set is empty")

    @property
    def canonical(self) -> str:
        return self.members[0].word

    def _normalised(self, values: List[float]) -> List[float]:
        low, high = min(values), max(values)
        if high == low:
            return [0.0] * len(values)
        return [(v - low) / (high - low) for v in values]

    def scores(self, params: GenerationParams) -> List[float]:
        """Blend of word length, frequency and verb strength, each rescaled to [0, 1] over the set"""
        lengths = self._normalised([len(m.word) for m in self.members])
        # lower rank is more frequent
        frequencies = self._normalised([-m.frequency_rank for m in self.members])
        strengths = self._normalised([m.strength for m in self.members])
        wl = params["WORD LENGTH"] - NEUTRAL_PARAMETER
        lf = params["LEXICAL FREQUENCY"] - NEUTRAL_PARAMETER
        vs = params["VERB STRENGTH"] - NEUTRAL_PARAMETER
        return [wl * a + lf * b + vs * c for a, b, c in zip(lengths, frequencies, strengths)]

    def choose(self, params: GenerationParams, rng: np.random.Generator) -> str:
        """Highest-scoring member; ties go to the canonical word, else a seeded pick"""
        scores = self.scores(params)
        best = max(scores)
        tied = [m.word for m, s in zip(self.members, scores) if best - s <= TIE_TOLERANCE]
        if self.canonical in tied:
            return self.canonical
        if len(tied) == 1:
            return tied[0]
        return tied[int(rng.integers(len(tied)))]


class SynonymLexicon:
    """Synonym sets indexed by member word and word class"""

    def __init__(self, sets: List[SynonymSet]):
        self.sets = sets
        self._index: Dict[tuple, SynonymSet] = {}
        for synonym_set in sets:
            for member in synonym_set.members:
                self._index[(member.word.lower(), synonym_set.word_class)] = synonym_set

    def lookup(self, word: str, word_class: WordClass) -> Optional[SynonymSet]:
        return self._index.get((word.lower(), word_class))

    def words(self) -> List[str]:
        return [m.word for s in self.sets for m in s.members]

    @classmethod
    def from_dict(cls, data: dict) -> "SynonymLexicon":
        try:
            sets = [
                SynonymSet(
                    word_class=WordClass(entry["class"]),
                    members=[
                        SynonymCandidate(m["word"], int(m.get("frequency_rank", 1)), int(m.get("strength", 0)))
                        for m in entry["members"]
                    ],
                )
                for entry in data["sets"]
            ]
        except (KeyError, ValueError) as e:
            raise ConfigurationError(f"Invalid synonym lexicon: {e}")
        return cls(sets)


def lexicalize(tree: DSyntSNode, params: GenerationParams, lexicon: SynonymLexicon,
               rng: np.random.Generator) -> DSyntSNode:
    """Pick a synonym for every content word that has a synonym set.

    Subject phrases, markers and words fixed by paraphrase or negation are
    left alone.
    """
    root = tree.copy()
    for node in root.iter_nodes():
        if node.word_class in (WordClass.MARKER, WordClass.PRONOUN) or node.get("role") == "subject":
            if node.word_class != WordClass.NOUN or node.get("mention") not in ("subsequent", "implicit"):
                continue
        if node.get("fixed"):
            continue
        synonym_set = lexicon.lookup(node.lexeme, node.word_class)
        if synonym_set is None:
            continue
        choice = synonym_set.choose(params, rng)
        if choice != node.lexeme:
            logger.debug(f"Lexical choice: {node.lexeme} -> {choice}")
        node.lexeme = choice
    return root
