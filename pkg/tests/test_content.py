"""Tests for feature explanation and content planning"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from perscribe.content import (
    CLAIM_ID, FALLBACK_PATTERN, FeatureLexicon, FeatureListParser, explain_feature, plan_content,
)
from perscribe.models import (
    FeatureCategory, MalwareFeature, PermissionKind, Polarity, PropositionKind, Relation,
)
from perscribe.params import GenerationParams
from perscribe.errors import ConfigurationError, ValidationError


SEND_SMS = MalwareFeature("SEND_SMS", FeatureCategory.PERMISSION)


def _rng(seed=0):
    return np.random.default_rng(seed)


def _minimal_lexicon(features):
    shared = {"key": "claim", "predicate": "is the suspicious {subject_type}", "polarity": "Positive",
              "kind": "Claim", "pattern": "suspicious-subject"}
    return {
        "propositions": [shared],
        "categories": {
            c.value: {"subject_type": "thing", "baseline_template": "App {phrase}.",
                      "fallback_phrase": "uses {token}"}
            for c in FeatureCategory
        },
        "features": features,
    }


class TestExplainFeature:
    """Tests for explain_feature"""

    def test_known_token(self, resources):
        """Test a lexicon token binds its gerund phrase into every proposition"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        assert [p.id for p in props] == ["claim", "no-promise", "high-risk"]
        assert all(p.subject == "sending SMS messages" for p in props)
        assert props[0].predicate == "is the suspicious permission"
        assert props[0].kind == PropositionKind.CLAIM
        assert props[1].rel_to == ("claim", Relation.JUSTIFY)
        assert props[2].rel_to == ("claim", Relation.INFER)
        assert props[1].polarity == Polarity.NEGATIVE

    def test_unknown_token_falls_back(self, resources):
        """Test an unknown token yields one claim about its category"""
        feature = MalwareFeature("com.example.UNSEEN", FeatureCategory.PROVIDER)
        props = explain_feature(feature, resources.lexicon)
        assert len(props) == 1
        assert props[0].id == CLAIM_ID
        assert props[0].subject == "the requested provider"
        assert props[0].pattern == FALLBACK_PATTERN
        assert props[0].is_claim()

    def test_every_lexicon_token_has_a_claim(self, resources):
        """Test each shipped token explains to exactly one claim"""
        features = resources.lexicon.features()
        assert len(features) == 33
        assert {f.category for f in features} == set(FeatureCategory)
        for feature in features:
            claims = [p for p in explain_feature(feature, resources.lexicon) if p.is_claim()]
            assert len(claims) == 1, feature.token


class TestFeatureLexicon:
    """Tests for FeatureLexicon parsing"""

    def test_permission_tags(self, resources):
        """Test permission tags are parsed from the lexicon"""
        assert resources.lexicon.lookup("READ_CONTACTS").permission_tag == PermissionKind.CONTACTS
        assert resources.lexicon.lookup("SEND_SMS").permission_tag is None

    def test_duplicate_token_rejected(self):
        """Test a token listed twice is a configuration error"""
        item = {"token": "X", "category": "Permission", "gerund_phrase": "doing x", "baseline_phrase": "does x"}
        with pytest.raises(ConfigurationError, match="Duplicate"):
            FeatureLexicon.from_dict(_minimal_lexicon([item, dict(item)]))

    def test_missing_frame_rejected(self):
        """Test every category needs a frame"""
        data = _minimal_lexicon([])
        del data["categories"]["String"]
        with pytest.raises(ConfigurationError, match="String"):
            FeatureLexicon.from_dict(data)

    def test_entry_needs_one_claim(self):
        """Test an entry whose own propositions have no claim is rejected"""
        item = {
            "token": "X", "category": "Permission", "gerund_phrase": "doing x", "baseline_phrase": "does x",
            "propositions": [{"key": "s", "predicate": "is risky", "polarity": "Negative",
                              "kind": "Support", "pattern": "high-risk"}],
        }
        with pytest.raises(ConfigurationError, match="exactly one Claim"):
            FeatureLexicon.from_dict(_minimal_lexicon([item]))


class TestPlanContent:
    """Tests for plan_content"""

    @pytest.mark.parametrize("verbosity,expected", [(0.0, 1), (0.5, 2), (0.9, 3), (1.0, 3)])
    def test_verbosity_count(self, resources, verbosity, expected):
        """Test VERBOSITY keeps ceil(1 + v * (n - 1)) propositions"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        planned = plan_content(props, GenerationParams({"VERBOSITY": verbosity}), _rng())
        assert len(planned) == expected
        assert any(p.is_claim() for p in planned)

    def test_empty_input_rejected(self):
        """Test planning nothing is a validation error"""
        with pytest.raises(ValidationError, match="empty"):
            plan_content([], GenerationParams.neutral(), _rng())

    def test_missing_claim_rejected(self, resources):
        """Test a proposition list without a claim is rejected"""
        supports = explain_feature(SEND_SMS, resources.lexicon)[1:]
        with pytest.raises(ValidationError, match="no Claim"):
            plan_content(supports, GenerationParams.neutral(), _rng())

    def test_positive_content_first(self, resources):
        """Test POSITIVE CONTENT FIRST orders by polarity both ways"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        first = plan_content(props, GenerationParams({"VERBOSITY": 1.0, "POSITIVE CONTENT FIRST": 0.9}), _rng())
        assert first[0].polarity == Polarity.POSITIVE
        last = plan_content(props, GenerationParams({"VERBOSITY": 1.0, "POSITIVE CONTENT FIRST": 0.1}), _rng())
        assert last[-1].polarity == Polarity.POSITIVE

    def test_concession(self, resources):
        """Test CONCESSIONS turns one support into a concession to the claim"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        planned = plan_content(props, GenerationParams({"VERBOSITY": 1.0, "CONCESSIONS": 0.9}), _rng())
        conceded = [p for p in planned if p.relation == Relation.CONCEDE]
        assert len(conceded) == 1
        assert conceded[0].rel_to[0] == CLAIM_ID

    def test_polarisation(self, resources):
        """Test POLARISATION marks every proposition extreme"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        planned = plan_content(props, GenerationParams({"POLARISATION": 0.9}), _rng())
        assert all(p.intensity == "extreme" for p in planned)

    def test_restatement_follows_original(self, resources):
        """Test RESTATEMENTS inserts a paraphrased copy right after its original"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        planned = plan_content(props, GenerationParams({"VERBOSITY": 1.0, "RESTATEMENTS": 0.9}), _rng(3))
        assert len(planned) == 4
        index = next(i for i, p in enumerate(planned) if p.id.endswith("/restated"))
        original = planned[index - 1]
        copy = planned[index]
        assert copy.id == f"{original.id}/restated"
        assert copy.rel_to == (original.id, Relation.RESTATE)
        assert copy.lexical_overrides == original.paraphrases
        assert copy.kind == PropositionKind.SUPPORT

    def test_repetition_is_verbatim(self, resources):
        """Test REPETITIONS inserts a copy without paraphrases"""
        props = explain_feature(SEND_SMS, resources.lexicon)
        planned = plan_content(props, GenerationParams({"VERBOSITY": 1.0, "REPETITIONS": 0.9}), _rng(5))
        copies = [p for p in planned if p.id.endswith("/repeated")]
        assert len(copies) == 1
        assert copies[0].lexical_overrides == {}

    @given(low=st.floats(0, 1), high=st.floats(0, 1), seed=st.integers(0, 2 ** 32))
    def test_verbosity_monotone(self, resources, low, high, seed):
        """Test a larger VERBOSITY only extends the selection"""
        low, high = sorted((low, high))
        props = explain_feature(SEND_SMS, resources.lexicon)
        small = plan_content(props, GenerationParams({"VERBOSITY": low}), _rng(seed))
        large = plan_content(props, GenerationParams({"VERBOSITY": high}), _rng(seed))
        assert {p.id for p in small} <= {p.id for p in large}


class TestFeatureListParser:
    """Tests for FeatureListParser"""

    def test_parse_list_and_object(self):
        """Test both document shapes parse"""
        records = [{"token": "SEND_SMS", "category": "Permission"},
                   {"token": "READ_CONTACTS", "category": "Permission", "permission": "contacts"}]
        features = FeatureListParser.parse(records)
        assert features == FeatureListParser.parse({"features": records})
        assert features[1].permission_tag == PermissionKind.CONTACTS

    def test_default_category(self):
        """Test records without a category are permissions"""
        assert FeatureListParser.parse([{"token": "X"}])[0].category == FeatureCategory.PERMISSION

    def test_bad_record_reports_index(self):
        """Test a bad record names its index"""
        with pytest.raises(ValidationError, match="record 1"):
            FeatureListParser.parse([{"token": "A"}, {"token": "B", "category": "Telepathy"}])

    def test_missing_token(self):
        """Test a record without a token is rejected"""
        with pytest.raises(ValidationError, match="record 0"):
            FeatureListParser.parse([{"category": "Intent"}])

    def test_not_a_list(self):
        """Test a scalar document is rejected"""
        with pytest.raises(ValidationError):
            FeatureListParser.parse("SEND_SMS")

    @pytest.mark.parametrize("item", ["SEND_SMS", ["SEND_SMS"], None])
    def test_record_must_be_an_object(self, item):
        """Test a bare token in place of a record names its index"""
        with pytest.raises(ValidationError, match="record 1: expected an object"):
            FeatureListParser.parse([{"token": "A"}, item])
