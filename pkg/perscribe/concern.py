"""PERSCRIBE permission concern learning

Attention levels per permission from a user's settings history, the
category-specific ranking used at install time, and sentence reordering
against a ranking.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, TypeVar

from .models import (
    AppCategory, AppPermissionRecord, AttentionRanking, CANONICAL_PERMISSIONS,
    PermissionKind, PermissionSnapshot, PermissionStatus, RankingSource,
)
from .errors import ConfigurationError, ValidationError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def attention_level(apps: Sequence[AppPermissionRecord], permission: PermissionKind) -> float:
    """Share of the apps requesting a permission whose status was set to Deny.

    Args:
        apps: App records (may be empty)
        permission: Permission to measure

    Returns:
        Fraction in [0, 1]; 0.0 when no app requests the permission
    """
    requesting = [app for app in apps if app.requests(permission)]
    if not requesting:
        return 0.0
    denied = sum(1 for app in requesting if app.denies(permission))
    return denied / len(requesting)


def _sorted_entries(levels: Dict[PermissionKind, float]) -> List[Tuple[PermissionKind, float]]:
    # Descending level, ties in canonical permission order
    return sorted(
        ((kind, levels[kind]) for kind in CANONICAL_PERMISSIONS),
        key=lambda entry: (-entry[1], entry[0].canonical_index),
    )


def rank_permissions(category: AppCategory, snapshot: PermissionSnapshot,
                     default: AttentionRanking) -> AttentionRanking:
    """Rank the eight permissions for an app being installed in a category.

    An empty snapshot returns the default ranking. Otherwise levels are
    computed over the snapshot's apps of the same category, falling back to
    every app when none match.
    """
    if snapshot.is_empty():
        logger.debug("Empty snapshot, using default ranking")
        return AttentionRanking(entries=list(default.entries), source=RankingSource.DEFAULT)

    apps = snapshot.in_category(category)
    source = RankingSource.LEARNED
    if not apps:
        logger.debug(f"No {category.value} apps in snapshot, ranking over all {len(snapshot.records)} apps")
        apps = snapshot.records
        source = RankingSource.FALLBACK_ALL_APPS

    levels = {kind: attention_level(apps, kind) for kind in CANONICAL_PERMISSIONS}
    return AttentionRanking(entries=_sorted_entries(levels), source=source)


def default_ranking(levels: Dict[str, float]) -> AttentionRanking:
    """Build the default ranking from population statistics.

    Args:
        levels: Permission name -> attention level, one per permission

    Raises:
        ConfigurationError: A permission is missing, unknown or out of range
    """
    parsed: Dict[PermissionKind, float] = {}
    for name, value in levels.items():
        if name == "schema_version":
            continue
        try:
            kind = PermissionKind.parse(name)
        except ValidationError as e:
            raise ConfigurationError(f"Default ranking: {e}")
        value = float(value)
        if value < 0.0 or value > 1.0:
            raise ConfigurationError(f"Default ranking: level for {kind.value} out of range: {value}")
        parsed[kind] = value

    missing = [kind.value for kind in CANONICAL_PERMISSIONS if kind not in parsed]
    if missing:
        raise ConfigurationError(f"Default ranking missing permissions: {', '.join(missing)}")

    return AttentionRanking(entries=_sorted_entries(parsed), source=RankingSource.DEFAULT)


def reorder_sentences(items: Sequence[Tuple[T, Optional[PermissionKind]]],
                      ranking: AttentionRanking) -> List[Tuple[T, Optional[PermissionKind]]]:
    """Lift permission-tagged sentences to the top in ranking order.

    Untagged sentences follow in their original relative order; the sort is
    stable within equal ranks.
    """
    positions = {kind: index for index, kind in enumerate(ranking.permissions())}

    def key(indexed):
        index, (_, tag) = indexed
        if tag is None:
            return (1, 0, index)
        return (0, positions[tag], index)

    return [item for _, item in sorted(enumerate(items), key=key)]


class SnapshotParser:
    """Parser for snapshot JSON documents"""

    @staticmethod
    def parse_record(data: dict, index: int = 0) -> AppPermissionRecord:
        """Parse one {app_id, category, statuses} record.

        Unknown category strings map to Other; unknown permission names or
        statuses are rejected.
        """
        if not isinstance(data, dict):
            raise ValidationError(f"record {index}: expected an object")
        raw_statuses = data.get("statuses") or {}
        if not isinstance(raw_statuses, dict):
            raise ValidationError(f"record {index}: statuses must be an object")
        statuses: Dict[PermissionKind, PermissionStatus] = {}
        for name, status in raw_statuses.items():
            try:
                kind = PermissionKind.parse(name)
                statuses[kind] = PermissionStatus(str(status).strip().lower())
            except ValueError as e:
                raise ValidationError(f"record {index}: {e}")
        try:
            return AppPermissionRecord(
                app_id=str(data.get("app_id", "")),
                category=AppCategory.from_name(data.get("category", "Other")),
                statuses=statuses,
            )
        except ValidationError as e:
            raise ValidationError(f"record {index}: {e}")

    @staticmethod
    def parse(data) -> PermissionSnapshot:
        """Parse a snapshot document: a record list, or an object with a "records" list"""
        if isinstance(data, dict):
            data = data.get("records", [])
        if not isinstance(data, list):
            raise ValidationError("Snapshot must be a list of records")
        records = [SnapshotParser.parse_record(entry, i) for i, entry in enumerate(data)]
        return PermissionSnapshot(records=records)

    @staticmethod
    def to_dict(snapshot: PermissionSnapshot) -> dict:
        return {
            "records": [
                {
                    "app_id": r.app_id,
                    "category": r.category.value,
                    "statuses": {k.value: s.value for k, s in r.statuses.items()},
                }
                for r in snapshot.records
            ]
        }
