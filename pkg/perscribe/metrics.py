"""PERSCRIBE metrics

Readability indices over simple text statistics, and the content-lemma overlap
used to check that stylistic variation keeps a description's content.
"""

import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Set

from nltk.stem.porter import PorterStemmer

from .constants import COMPLEX_WORD_SYLLABLES
from .errors import UndefinedMetricError, ValidationError

logger = logging.getLogger(__name__)

_VOWEL_GROUP = re.compile(r"[aeiouy]+")
_NON_LETTER = re.compile(r"[^a-z]")
# A run of terminators followed by whitespace or the end closes a sentence,
# unless it is an ellipsis running on into a lowercase word
_SENTENCE_END = re.compile(r"(?<![.!?])(?!\.{3,}\s+[a-z])[.!?]+(?=\s|$)")
_EDGE_PUNCT = re.compile(r"^\W+|\W+$")
_STUTTER = re.compile(r"\b(\w{1,3})-(?:\1-)*(?=\1)")

_STEMMER = PorterStemmer()


@dataclass(frozen=True)
class TextStats:
    """Counts the readability formulas are computed from"""
    sentences: int = 0
    words: int = 0
    syllables: int = 0
    characters: int = 0
    complex_words: int = 0

    def __post_init__(self):
        """Validate counts"""
        for name in ("sentences", "words", "syllables", "characters", "complex_words"):
            if getattr(self, name) < 0:
                raise ValidationError(f"Negative {name} count: {getattr(self, name)}")
        if self.complex_words > self.words:
            raise ValidationError(f"More complex words ({self.complex_words}) than words ({self.words})")
        if self.words > 0 and self.syllables < self.words:
            raise ValidationError(f"Fewer syllables ({self.syllables}) than words ({self.words})")

    def to_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "words": self.words,
            "syllables": self.syllables,
            "characters": self.characters,
            "complex_words": self.complex_words,
        }


@dataclass(frozen=True)
class ReadabilityScores:
    fre: float
    fkgl: float
    gfs: float
    smog: float
    ari: float

    def to_dict(self) -> dict:
        return {"fre": self.fre, "fkgl": self.fkgl, "gfs": self.gfs, "smog": self.smog, "ari": self.ari}


def count_syllables(word: str) -> int:
    """Heuristic syllable count.

    Counts vowel groups (y included) over the word's letters and drops a
    silent final "e", except in a consonant + "le" ending. Tokens without
    letters count as one syllable; the result is never below one.
    """
    letters = _NON_LETTER.sub("", word.lower())
    if not letters:
        return 1
    count = len(_VOWEL_GROUP.findall(letters))
    if letters.endswith("e") and count > 1:
        consonant_le = len(letters) > 2 and letters.endswith("le") and letters[-3] not in "aeiouy"
        if not consonant_le and letters[-2] not in "aeiouy":
            count -= 1
    return max(1, count)


def words_of(text: str):
    """Whitespace-separated tokens with surrounding punctuation removed"""
    for token in text.split():
        word = _EDGE_PUNCT.sub("", token)
        if word:
            yield word


def text_stats(text: str) -> TextStats:
    """Count sentences, words, syllables, letters/digits and complex words.

    A sentence ends at ".", "!" or "?" followed by whitespace or the end of
    the text, whatever case the next word has. An ellipsis running on into a
    lowercase word ("Err... it is risky.") does not end it.
    Text with words but no terminator counts as one sentence.
    """
    words = list(words_of(text))
    if not words:
        return TextStats()
    sentences = max(1, len(_SENTENCE_END.findall(text.strip())))
    syllables = [count_syllables(w) for w in words]
    return TextStats(
        sentences=sentences,
        words=len(words),
        syllables=sum(syllables),
        characters=sum(1 for w in words for ch in w if ch.isalnum()),
        complex_words=sum(1 for s in syllables if s >= COMPLEX_WORD_SYLLABLES),
    )


def readability(stats: TextStats) -> ReadabilityScores:
    """Flesch Reading Ease, Flesch-Kincaid Grade, Gunning Fog, SMOG and ARI.

    Raises:
        UndefinedMetricError: No sentences or no words
    """
    if stats.sentences == 0 or stats.words == 0:
        raise UndefinedMetricError(
            f"Readability undefined for {stats.sentences} sentences and {stats.words} words"
        )
    w, s = stats.words, stats.sentences
    words_per_sentence = w / s
    syllables_per_word = stats.syllables / w
    return ReadabilityScores(
        fre=206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word,
        fkgl=0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59,
        gfs=0.4 * (words_per_sentence + 100.0 * stats.complex_words / w),
        smog=1.043 * math.sqrt(stats.complex_words * 30.0 / s) + 3.1291,
        ari=4.71 * stats.characters / w + 0.5 * words_per_sentence - 21.43,
    )


def text_readability(text: str) -> ReadabilityScores:
    return readability(text_stats(text))


@lru_cache(maxsize=16)
def _stemmed(stopwords: FrozenSet[str]) -> FrozenSet[str]:
    return frozenset(_STEMMER.stem(w) for w in stopwords)


def content_lemmas(text: str, stopwords: Iterable[str]) -> Set[str]:
    """Porter stems of the content words of a text.

    Stutters collapse ("se-se-sending" -> "sending"); single characters and
    stopwords (compared raw and stemmed) are dropped.
    """
    stopwords = frozenset(w.lower() for w in stopwords)
    stemmed_stopwords = _stemmed(stopwords)
    lemmas = set()
    for word in words_of(_STUTTER.sub("", text.lower())):
        if len(word) < 2 or word in stopwords:
            continue
        stem = _STEMMER.stem(word)
        if stem in stopwords or stem in stemmed_stopwords:
            continue
        lemmas.add(stem)
    return lemmas


def content_overlap(a: str, b: str, stopwords: Iterable[str]) -> float:
    """Jaccard index of the two texts' content lemmas; 1.0 when both are empty"""
    stopwords = frozenset(stopwords)
    first = content_lemmas(a, stopwords)
    second = content_lemmas(b, stopwords)
    union = first | second
    if not union:
        return 1.0
    return len(first & second) / len(union)
