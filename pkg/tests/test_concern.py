"""Tests for permission concern learning"""

import pytest
from hypothesis import given, settings, strategies as st

from perscribe.models import (
    AppCategory, AppPermissionRecord, AttentionRanking, CANONICAL_PERMISSIONS,
    PermissionKind, PermissionSnapshot, PermissionStatus, RankingSource,
)
from perscribe.concern import (
    SnapshotParser, attention_level, default_ranking, rank_permissions, reorder_sentences,
)
from perscribe.errors import ConfigurationError, ValidationError


ALLOW = PermissionStatus.ALLOW
DENY = PermissionStatus.DENY


def _make_record(app_id, category=AppCategory.SOCIAL, **statuses):
    return AppPermissionRecord(
        app_id=app_id,
        category=category,
        statuses={PermissionKind.parse(name): status for name, status in statuses.items()},
    )


def _make_default():
    return default_ranking({kind.value: 0.1 * (8 - i) for i, kind in enumerate(CANONICAL_PERMISSIONS)})


class TestAttentionLevel:
    """Tests for attention_level"""

    def test_share_of_denials(self):
        """Test one denial out of four requests"""
        apps = [
            _make_record("a", Location=DENY),
            _make_record("b", Location=ALLOW),
            _make_record("c", Location=ALLOW),
            _make_record("d", Location=ALLOW),
            _make_record("e", Camera=DENY),
        ]
        assert attention_level(apps, PermissionKind.LOCATION) == 0.25

    def test_no_requesters_is_zero(self):
        """Test a permission nobody requests has level 0"""
        apps = [_make_record("a", Camera=DENY)]
        assert attention_level(apps, PermissionKind.CONTACTS) == 0.0
        assert attention_level([], PermissionKind.CONTACTS) == 0.0

    def test_all_denied_is_one(self):
        """Test every requester denying gives level 1"""
        apps = [_make_record("a", Photos=DENY), _make_record("b", Photos=DENY)]
        assert attention_level(apps, PermissionKind.PHOTOS) == 1.0


class TestRankPermissions:
    """Tests for rank_permissions"""

    def test_empty_snapshot_returns_default(self):
        """Test an empty snapshot yields the default ranking"""
        default = _make_default()
        ranking = rank_permissions(AppCategory.GAME, PermissionSnapshot(), default)
        assert ranking.source == RankingSource.DEFAULT
        assert ranking.entries == default.entries

    def test_learned_from_same_category(self):
        """Test levels come from apps of the installing category only"""
        snapshot = PermissionSnapshot([
            _make_record("s1", AppCategory.SOCIAL, Camera=DENY, Location=ALLOW),
            _make_record("g1", AppCategory.GAME, Location=DENY),
        ])
        ranking = rank_permissions(AppCategory.SOCIAL, snapshot, _make_default())
        assert ranking.source == RankingSource.LEARNED
        assert ranking.permissions()[0] == PermissionKind.CAMERA
        assert ranking.level_of(PermissionKind.LOCATION) == 0.0

    def test_fallback_to_all_apps(self):
        """Test a category absent from the snapshot ranks over every app"""
        snapshot = PermissionSnapshot([
            _make_record("g1", AppCategory.GAME, Microphone=DENY),
            _make_record("n1", AppCategory.NEWS, Microphone=ALLOW),
        ])
        ranking = rank_permissions(AppCategory.VIDEO, snapshot, _make_default())
        assert ranking.source == RankingSource.FALLBACK_ALL_APPS
        assert ranking.permissions()[0] == PermissionKind.MICROPHONE
        assert ranking.level_of(PermissionKind.MICROPHONE) == 0.5

    def test_ties_keep_canonical_order(self):
        """Test equal levels are ordered canonically"""
        snapshot = PermissionSnapshot([_make_record("a", AppCategory.SOCIAL, Camera=DENY, Contacts=DENY)])
        ranking = rank_permissions(AppCategory.SOCIAL, snapshot, _make_default())
        assert ranking.permissions()[:2] == [PermissionKind.CONTACTS, PermissionKind.CAMERA]
        assert ranking.permissions()[2:] == [
            k for k in CANONICAL_PERMISSIONS if k not in (PermissionKind.CONTACTS, PermissionKind.CAMERA)
        ]

    @settings(max_examples=50, deadline=None)
    @given(st.lists(
        st.tuples(
            st.sampled_from(list(AppCategory)),
            st.dictionaries(st.sampled_from(CANONICAL_PERMISSIONS), st.sampled_from(list(PermissionStatus))),
        ),
        min_size=1, max_size=12,
    ), st.randoms(use_true_random=False))
    def test_permutation_invariance(self, rows, rnd):
        """Test reordering the snapshot's apps never changes the ranking"""
        records = [AppPermissionRecord(f"app{i}", cat, statuses) for i, (cat, statuses) in enumerate(rows)]
        shuffled = list(records)
        rnd.shuffle(shuffled)
        default = _make_default()
        for category in AppCategory:
            a = rank_permissions(category, PermissionSnapshot(records), default)
            b = rank_permissions(category, PermissionSnapshot(shuffled), default)
            assert a == b


class TestDefaultRanking:
    """Tests for default_ranking"""

    def test_sorted_and_tagged_default(self):
        """Test population levels are sorted descending"""
        levels = {kind.value: 0.5 for kind in CANONICAL_PERMISSIONS}
        levels["Camera"] = 0.9
        ranking = default_ranking(levels)
        assert ranking.source == RankingSource.DEFAULT
        assert ranking.permissions()[0] == PermissionKind.CAMERA

    def test_shipped_order(self, resources):
        """Test the shipped population ranking lists all eight permissions in order"""
        assert [kind.value for kind in resources.default_ranking.permissions()] == [
            "Location", "Photos", "Contacts", "Camera", "Microphone", "Calendars", "Reminders", "Bluetooth",
        ]
        assert resources.default_ranking.source == RankingSource.DEFAULT

    def test_missing_permission_rejected(self):
        """Test a default table without every permission is a config error"""
        with pytest.raises(ConfigurationError, match="missing"):
            default_ranking({"Location": 0.3})

    def test_out_of_range_rejected(self):
        """Test levels outside [0, 1] are rejected"""
        levels = {kind.value: 0.5 for kind in CANONICAL_PERMISSIONS}
        levels["Photos"] = 1.5
        with pytest.raises(ConfigurationError):
            default_ranking(levels)

    def test_unknown_permission_rejected(self):
        """Test an unknown permission name is a config error"""
        levels = {kind.value: 0.5 for kind in CANONICAL_PERMISSIONS}
        levels["Teleport"] = 0.5
        with pytest.raises(ConfigurationError, match="Teleport"):
            default_ranking(levels)


class TestReorderSentences:
    """Tests for reorder_sentences"""

    def test_tagged_sentences_lifted_in_ranking_order(self):
        """Test tagged sentences follow the ranking and untagged keep their order"""
        ranking = AttentionRanking(
            entries=[(PermissionKind.CAMERA, 0.9)] + [
                (k, 0.1) for k in CANONICAL_PERMISSIONS if k != PermissionKind.CAMERA
            ],
        )
        items = [
            ("boot", None),
            ("location", PermissionKind.LOCATION),
            ("network", None),
            ("camera", PermissionKind.CAMERA),
        ]
        result = [text for text, _ in reorder_sentences(items, ranking)]
        assert result == ["camera", "location", "boot", "network"]

    def test_stable_within_equal_rank(self):
        """Test sentences tagged with the same permission keep their order"""
        ranking = _make_default()
        items = [("a", PermissionKind.PHOTOS), ("b", PermissionKind.PHOTOS)]
        assert [t for t, _ in reorder_sentences(items, ranking)] == ["a", "b"]


class TestSnapshotParser:
    """Tests for SnapshotParser"""

    def test_parse_records(self):
        """Test parsing a record list with unknown categories mapped to Other"""
        snapshot = SnapshotParser.parse({
            "records": [
                {"app_id": "x", "category": "Social", "statuses": {"Camera": "Deny"}},
                {"app_id": "y", "category": "Weather", "statuses": {}},
            ]
        })
        assert snapshot.records[0].denies(PermissionKind.CAMERA)
        assert snapshot.records[1].category == AppCategory.OTHER

    def test_unknown_permission_names_record(self):
        """Test an unknown permission is reported with its record index"""
        with pytest.raises(ValidationError, match="record 1"):
            SnapshotParser.parse([
                {"app_id": "x", "statuses": {}},
                {"app_id": "y", "statuses": {"Teleport": "deny"}},
            ])

    def test_duplicate_app_ids_rejected(self):
        """Test duplicate app ids are a validation error"""
        with pytest.raises(ValidationError, match="Duplicate"):
            SnapshotParser.parse([{"app_id": "x"}, {"app_id": "x"}])

    @pytest.mark.parametrize("statuses", [["Location"], "Location", 3])
    def test_statuses_must_be_an_object(self, statuses):
        """Test non-object statuses name their record"""
        with pytest.raises(ValidationError, match="record 1: statuses must be an object"):
            SnapshotParser.parse([{"app_id": "x"}, {"app_id": "y", "statuses": statuses}])

    def test_to_dict_round_trip(self):
        """Test a snapshot survives serialisation"""
        snapshot = PermissionSnapshot([_make_record("a", AppCategory.GAME, Camera=DENY, Location=ALLOW)])
        assert SnapshotParser.parse(SnapshotParser.to_dict(snapshot)) == snapshot
