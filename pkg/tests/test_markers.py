"""Tests for pragmatic marker insertion"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from perscribe.constants import MARKER_PARAMETERS
from perscribe.content import explain_feature
from perscribe.dsynts import TRACE_MARKERS, trace
from perscribe.markers import MarkerBank, clause_shape, fires, insert_markers
from perscribe.models import FeatureCategory, MalwareFeature
from perscribe.params import GenerationParams
from perscribe.realizer import realize
from perscribe.templates import select_template
from perscribe.errors import ConfigurationError


SEND_SMS = MalwareFeature("SEND_SMS", FeatureCategory.PERMISSION)


def _tree(resources, prop_id, subsequent=False, first=False):
    params = GenerationParams({"CLAIM COMPLEXITY": 0.0})
    prop = next(p for p in explain_feature(SEND_SMS, resources.lexicon) if p.id == prop_id)
    tree = select_template(prop, params, resources.templates, np.random.default_rng(0))
    if subsequent:
        subject = tree.subject
        subject.lexeme = subject.get("subject_type")
        subject.attributes["mention"] = "subsequent"
    if first:
        tree.attributes["utterance"] = "first"
    return tree


def _only(named=None, **values):
    """Every parameter at 0 except the ones given, by exact name or keyword"""
    changes = dict(named or {})
    changes.update({k.replace("_", " "): v for k, v in values.items()})
    return GenerationParams.constant(0.0).updated(changes)


def _mark(resources, tree, params, seed=0):
    marked = insert_markers(tree, params, resources.markers, np.random.default_rng(seed))
    return marked, realize(marked)


class TestFires:
    """Tests for the firing rule"""

    @pytest.mark.parametrize("value", [0.51, 0.75, 1.0])
    def test_above_half_always(self, value):
        """Test values above 0.5 always fire"""
        rng = np.random.default_rng(0)
        assert all(fires(value, rng) for _ in range(200))

    @pytest.mark.parametrize("value", [0.0, 0.2, 0.3])
    def test_low_never(self, value):
        """Test values at or below 0.3 never fire"""
        rng = np.random.default_rng(0)
        assert not any(fires(value, rng) for _ in range(200))

    @pytest.mark.parametrize("value,rate", [(0.5, 0.1), (0.4, 0.05)])
    def test_band_rate(self, value, rate):
        """Test the 0.3-0.5 band fires at (p - 0.3) / 0.2 * 0.1"""
        rng = np.random.default_rng(42)
        hits = sum(fires(value, rng) for _ in range(10000))
        assert hits / 10000 == pytest.approx(rate, abs=0.015)


class TestInsertMarkers:
    """Tests for insert_markers"""

    def test_filled_pause_and_tag_question(self, resources):
        """Test a hesitant, disagreeable style opens with "err" and tags the negated have"""
        params = _only(FILLED_PAUSES=0.9, TAG_QUESTION=0.9)
        marked, text = _mark(resources, _tree(resources, "no-promise"), params)
        assert text == "Err... sending SMS messages doesn't have any security promise, does it?"
        assert trace(marked, TRACE_MARKERS) == ["FILLED PAUSES:err", "TAG QUESTION:does it"]

    def test_extravert_fillers_and_exclamation(self, resources):
        """Test with EXCLAMATION high the fillers switch to "I mean" and "like" """
        params = _only(FILLED_PAUSES=0.9, EXCLAMATION=0.9)
        texts = {_mark(resources, _tree(resources, "claim"), params, seed)[1] for seed in range(30)}
        assert texts <= {
            "I mean, sending SMS messages is the suspicious permission!",
            "Sending SMS messages is like, the suspicious permission!",
        }
        assert len(texts) == 2

    @pytest.mark.parametrize("marker,surface", [("EXPLETIVES", "damn"), ("NEAR-EXPLETIVES", "bloody")])
    def test_expletives_before_adjective(self, resources, marker, surface):
        """Test expletives go right before the claim's adjective"""
        _, text = _mark(resources, _tree(resources, "claim"), _only({marker: 0.9}))
        assert text == f"Sending SMS messages is the {surface} suspicious permission."

    def test_tag_question_shapes(self, resources):
        """Test the tag question agrees with the verb group"""
        params = _only(TAG_QUESTION=0.9)
        assert _mark(resources, _tree(resources, "claim"), params)[1] == \
            "Sending SMS messages is the suspicious permission, isn't it?"
        softened = _tree(resources, "claim")
        softened.attributes["modal"] = "could"
        assert clause_shape(softened) == "modal"
        assert _mark(resources, softened, params)[1] == \
            "Sending SMS messages could be the suspicious permission, couldn't it?"

    def test_tag_question_wins_over_exclamation(self, resources):
        """Test a tagged sentence ends with a question mark"""
        _, text = _mark(resources, _tree(resources, "claim"), _only(EXCLAMATION=0.9, TAG_QUESTION=0.9))
        assert text.endswith(", isn't it?")

    def test_negation_uses_antonym(self, resources):
        """Test negation swaps high for low and negates the verb"""
        _, text = _mark(resources, _tree(resources, "high-risk"), _only(NEGATION=0.9))
        assert text == "Sending SMS messages isn't at low risk."

    def test_negation_needs_antonym(self, resources):
        """Test negation is skipped when no modifier has an antonym"""
        marked, text = _mark(resources, _tree(resources, "claim"), _only(NEGATION=0.9))
        assert text == "Sending SMS messages is the suspicious permission."
        assert trace(marked, TRACE_MARKERS) == []

    def test_subject_implicitness(self, resources):
        """Test a later claim drops the repeated noun"""
        tree = _tree(resources, "claim", subsequent=True)
        _, text = _mark(resources, tree, _only(SUBJECT_IMPLICITNESS=0.9))
        assert text == "The permission is suspicious."

    def test_pronominalization(self, resources):
        """Test a later mention becomes "it" """
        tree = _tree(resources, "high-risk", subsequent=True)
        _, text = _mark(resources, tree, _only(PRONOMINALIZATION=0.9))
        assert text == "It is at high risk."

    def test_pronominalization_needs_later_mention(self, resources):
        """Test the first mention is never pronominalised"""
        _, text = _mark(resources, _tree(resources, "high-risk"), _only(PRONOMINALIZATION=0.9))
        assert text == "Sending SMS messages is at high risk."

    def test_stuttering(self, resources):
        """Test stuttering repeats the subject's first letters"""
        _, text = _mark(resources, _tree(resources, "high-risk"), _only(STUTTERING=0.9))
        assert text == "Se-se-sending SMS messages is at high risk."

    def test_utterance_start_only_first(self, resources):
        """Test utterance-start markers only open the first sentence"""
        params = _only(INITIAL_REJECTION=0.9)
        _, first = _mark(resources, _tree(resources, "claim", first=True), params)
        assert first == "I'm not sure, sending SMS messages is the suspicious permission."
        _, later = _mark(resources, _tree(resources, "claim"), params)
        assert later == "Sending SMS messages is the suspicious permission."

    def test_complementizer_opener_goes_last(self, resources):
        """Test "everybody knows that" sits right before the clause, after a filled pause"""
        params = _only(COMPETENCE_MITIGATION=0.9, FILLED_PAUSES=0.9)
        _, text = _mark(resources, _tree(resources, "claim", first=True), params)
        assert text == "Err... come on, everybody knows that sending SMS messages is the suspicious permission."

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1))
    def test_nothing_follows_a_complementizer_opener(self, resources, seed):
        """Test punctuated openers never land between "that" and the clause"""
        params = _only({name: 0.9 for name in (
            "INITIAL REJECTION", "COMPETENCE MITIGATION", "CONFIRMATION", "ACKNOWLEDGMENTS",
            "FILLED PAUSES", "SOFTENER HEDGES", "EMPHASIZER HEDGES",
        )})
        _, text = _mark(resources, _tree(resources, "claim", first=True), params, seed)
        clause = text[text.rindex(" that ") + len(" that "):]
        assert clause.startswith("sending SMS messages")

    def test_in_group_marker_at_end(self, resources):
        """Test in-group markers close the sentence"""
        _, text = _mark(resources, _tree(resources, "high-risk"), _only({"IN-GROUP MARKER": 0.9}))
        assert text in {f"Sending SMS messages is at high risk, {w}." for w in ("pal", "mate", "buddy")}

    def test_class_without_insertion_point_skipped(self, resources):
        """Test a class with no usable form leaves the sentence alone"""
        marked, text = _mark(resources, _tree(resources, "no-promise"), _only(EXPLETIVES=0.9))
        assert text == "Sending SMS messages doesn't have any security promise."
        assert trace(marked, TRACE_MARKERS) == []

    def test_all_off(self, resources):
        """Test with every class at 0 nothing is inserted"""
        tree = _tree(resources, "claim", first=True)
        marked, text = _mark(resources, tree, GenerationParams.constant(0.0))
        assert text == realize(tree)
        assert trace(marked, TRACE_MARKERS) == []

    def test_input_untouched(self, resources):
        """Test insertion works on a copy"""
        tree = _tree(resources, "claim")
        before = realize(tree)
        _mark(resources, tree, _only(EXPLETIVES=0.9, TAG_QUESTION=0.9))
        assert realize(tree) == before

    @settings(max_examples=150, deadline=None)
    @given(
        marker=st.sampled_from(MARKER_PARAMETERS),
        value=st.floats(0.0, 1.0),
        others=st.fixed_dictionaries({name: st.floats(0.0, 1.0) for name in MARKER_PARAMETERS}),
        prop_id=st.sampled_from(["claim", "high-risk", "no-promise"]),
        subsequent=st.booleans(),
        first=st.booleans(),
        seed=st.integers(0, 2 ** 32 - 1),
    )
    def test_raising_a_class_never_removes_it(self, resources, marker, value, others, prop_id,
                                               subsequent, first, seed):
        """Test a class present at some value is still present with its parameter at 1"""

        def classes(level):
            params = GenerationParams.constant(0.0).updated({**others, marker: level})
            tree = _tree(resources, prop_id, subsequent=subsequent, first=first)
            marked, _ = _mark(resources, tree, params, seed)
            return {entry.partition(":")[0] for entry in trace(marked, TRACE_MARKERS)}

        assert marker not in classes(0.0)
        if marker in classes(value):
            assert marker in classes(1.0)


class TestMarkerBank:
    """Tests for marker bank parsing"""

    def test_transforms_run_first(self, resources):
        """Test tree-rewriting classes come before insertions and punctuation last"""
        phases = [m.phase for m in resources.markers.markers]
        assert phases == sorted(phases)
        assert resources.markers.markers[-1].marker_class in ("EXCLAMATION", "TAG QUESTION")

    def test_unknown_class(self):
        """Test a class outside the marker parameters is rejected"""
        with pytest.raises(ConfigurationError, match="Unknown marker class"):
            MarkerBank.from_dict({"classes": [{"class": "SARCASM", "forms": [{"surface": "sure"}]}]})

    def test_bad_condition(self):
        """Test conditions must name a marker parameter"""
        data = {"classes": [{"class": "FILLED PAUSES", "forms": [{"surface": "err", "when": ["VERBOSITY < 0.5"]}]}]}
        with pytest.raises(ConfigurationError, match="Invalid marker condition"):
            MarkerBank.from_dict(data)

    def test_bad_position(self):
        """Test an unknown position is rejected"""
        data = {"classes": [{"class": "FILLED PAUSES", "forms": [{"surface": "err", "position": "middle"}]}]}
        with pytest.raises(ConfigurationError, match="Unknown marker position"):
            MarkerBank.from_dict(data)

    def test_empty_forms(self):
        """Test a class needs at least one form"""
        with pytest.raises(ConfigurationError, match="no surface forms"):
            MarkerBank.from_dict({"classes": [{"class": "EXPLETIVES", "forms": []}]})
