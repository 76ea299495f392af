"""Tests for readability and content overlap"""

import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from perscribe.metrics import (
    TextStats, content_lemmas, content_overlap, count_syllables, readability, text_readability, text_stats,
)
from perscribe.errors import UndefinedMetricError, ValidationError


words = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=12)
sentences = st.lists(words, min_size=1, max_size=15).map(lambda ws: " ".join(ws).capitalize() + ".")

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "readability.json").read_text(encoding="utf-8"))


class TestCountSyllables:
    """Tests for count_syllables"""

    @pytest.mark.parametrize("word,expected", [
        ("cat", 1), ("table", 2), ("make", 1), ("the", 1), ("free", 1),
        ("sending", 2), ("messages", 3), ("suspicious", 3),
        ("SMS", 1), ("123", 1), ("Err...", 1),
    ])
    def test_counts(self, word, expected):
        """Test the vowel-group heuristic on common words"""
        assert count_syllables(word) == expected

    @given(word=st.text(max_size=20))
    def test_at_least_one(self, word):
        """Test every token has at least one syllable"""
        assert count_syllables(word) >= 1


class TestTextStats:
    """Tests for text_stats"""

    def test_baseline_sentence(self):
        """Test counts for a one-sentence baseline"""
        stats = text_stats("App sends SMS messages.")
        assert stats == TextStats(sentences=1, words=4, syllables=6, characters=19, complex_words=1)

    def test_ellipsis_inside_sentence(self):
        """Test a filled pause's ellipsis does not end the sentence"""
        assert text_stats("Err... it is risky, isn't it?").sentences == 1
        assert text_stats("It is risky. It is bad!").sentences == 2

    def test_lowercase_after_period_ends_sentence(self):
        """Test a period ends a sentence whatever the case of the next word"""
        assert text_stats("A b. c d.").sentences == 2
        assert text_stats("Wait... It is risky.").sentences == 2

    def test_no_terminator(self):
        """Test text without punctuation is one sentence"""
        assert text_stats("it is risky").sentences == 1

    def test_empty(self):
        """Test empty text has no counts"""
        assert text_stats("  ") == TextStats()

    def test_invalid_counts(self):
        """Test inconsistent counts are rejected"""
        with pytest.raises(ValidationError):
            TextStats(sentences=1, words=2, syllables=2, complex_words=3)
        with pytest.raises(ValidationError):
            TextStats(sentences=-1)


class TestReadability:
    """Tests for readability"""

    def test_flesch_reading_ease(self):
        """Test the Flesch Reading Ease of the SEND_SMS baseline"""
        scores = text_readability("App sends SMS messages.")
        assert scores.fre == pytest.approx(75.875)
        assert scores.fkgl == pytest.approx(0.39 * 4 + 11.8 * 1.5 - 15.59)

    @pytest.mark.parametrize("case", FIXTURES["stats"])
    def test_hand_scored_stats(self, case):
        """Test every formula against hand-scored statistics"""
        scores = readability(TextStats(**case["stats"]))
        for name, expected in case["scores"].items():
            assert getattr(scores, name) == pytest.approx(expected, abs=1e-9), name

    @pytest.mark.parametrize("pair", FIXTURES["pairs"])
    def test_personalised_pairs_read_easier(self, pair):
        """Test short personalised sentences read easier than their baseline"""
        assert text_readability(pair["personalised"]).fre > text_readability(pair["baseline"]).fre
        assert text_readability(pair["personalised"]).fkgl < text_readability(pair["baseline"]).fkgl

    def test_undefined_without_words(self):
        """Test readability of empty text is an error"""
        with pytest.raises(UndefinedMetricError):
            readability(text_stats(""))

    def test_shorter_sentences_read_easier(self):
        """Test splitting one long sentence raises the reading ease"""
        joined = text_readability("It is risky and it is bad and it is shady and it is wrong.")
        split = text_readability("It is risky. It is bad. It is shady. It is wrong.")
        assert split.fre > joined.fre

    @given(text=sentences)
    def test_duplicated_text_same_score(self, text):
        """Test repeating a text leaves its ratios unchanged"""
        once = text_readability(text)
        twice = text_readability(f"{text} {text}")
        assert twice.fre == pytest.approx(once.fre)
        assert twice.ari == pytest.approx(once.ari)


class TestContentOverlap:
    """Tests for content_overlap"""

    STOPWORDS = frozenset({"the", "is", "a", "app", "it"})

    def test_identical(self):
        """Test a text overlaps fully with itself"""
        text = "Sending SMS messages is the suspicious permission."
        assert content_overlap(text, text, self.STOPWORDS) == 1.0

    def test_disjoint(self):
        """Test texts without shared content words do not overlap"""
        assert content_overlap("Cats purr.", "Dogs bark.", self.STOPWORDS) == 0.0

    def test_only_stopwords(self):
        """Test two texts with no content words count as identical"""
        assert content_overlap("It is the app.", "The app is.", self.STOPWORDS) == 1.0

    def test_inflection_ignored(self):
        """Test stems match across inflections"""
        assert content_overlap("App sends SMS messages.", "Sending an SMS message.", self.STOPWORDS | {"an"}) == 1.0

    def test_stutter_collapsed(self):
        """Test a stuttered word reduces to its stem"""
        lemmas = content_lemmas("Se-se-sending SMS messages", self.STOPWORDS)
        assert "send" in lemmas
        assert "se" not in lemmas

    @given(a=sentences, b=sentences)
    def test_symmetric_and_bounded(self, a, b):
        """Test the overlap is symmetric and within [0, 1]"""
        forward = content_overlap(a, b, self.STOPWORDS)
        assert forward == content_overlap(b, a, self.STOPWORDS)
        assert 0.0 <= forward <= 1.0
