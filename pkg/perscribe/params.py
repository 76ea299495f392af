"""PERSCRIBE generation parameters

The 67 stylistic controls and the map turning a Big Five profile into them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Tuple

import numpy as np

from .constants import NEUTRAL_PARAMETER, PARAMETER_GROUPS, PARAMETER_NAMES
from .models import Trait, TraitLevel, TraitProfile
from .errors import ConfigurationError, ValidationError

logger = logging.getLogger(__name__)

COMBINERS = ("mean", "max")


@dataclass
class GenerationParams:
    """All 67 parameters, each in [0, 1]; names not given are neutral (0.5)"""
    values: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        """Validate names and ranges, fill the rest with the neutral value"""
        for name, value in self.values.items():
            if name not in PARAMETER_NAMES:
                raise ValidationError(f"Unknown generation parameter: {name!r}")
            if value < 0.0 or value > 1.0:
                raise ValidationError(f"Parameter {name} out of range: {value}")
        for name in PARAMETER_NAMES:
            self.values.setdefault(name, NEUTRAL_PARAMETER)

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    @classmethod
    def neutral(cls) -> "GenerationParams":
        return cls({})

    @classmethod
    def constant(cls, value: float) -> "GenerationParams":
        return cls({name: value for name in PARAMETER_NAMES})

    def updated(self, overrides: Mapping[str, float]) -> "GenerationParams":
        values = dict(self.values)
        values.update(overrides)
        return GenerationParams(values)

    def group(self, name: str) -> Dict[str, float]:
        return {p: self.values[p] for p in PARAMETER_GROUPS[name]}

    def to_dict(self) -> dict:
        return {name: self.values[name] for name in PARAMETER_NAMES}


@dataclass
class TraitParamMap:
    """Per (trait, level) parameter contributions and the rule combining them"""
    contributions: Dict[Tuple[Trait, TraitLevel], List[Tuple[str, float]]]
    combiner: str = "mean"

    def __post_init__(self):
        """Validate parameter names, values and combiner"""
        if self.combiner not in COMBINERS:
            raise ConfigurationError(f"Unknown combiner {self.combiner!r} (expected one of {', '.join(COMBINERS)})")
        for (trait, level), entries in self.contributions.items():
            for name, value in entries:
                if name not in PARAMETER_NAMES:
                    raise ConfigurationError(
                        f"Unknown parameter {name!r} in map entry {trait.value}-{level.value}"
                    )
                if value < 0.0 or value > 1.0:
                    raise ConfigurationError(f"Contribution for {name} out of range: {value}")

    @classmethod
    def from_dict(cls, data: dict) -> "TraitParamMap":
        """Parse {"combiner": "mean", "entries": {"E-High": {"EXCLAMATION": 0.9}}}"""
        contributions = {}
        try:
            for label, entries in data.get("entries", {}).items():
                trait, level = label.split("-", 1)
                key = (Trait(trait), TraitLevel(level))
                contributions[key] = [(name, float(value)) for name, value in entries.items()]
        except (ValueError, AttributeError) as e:
            raise ConfigurationError(f"Invalid trait-parameter map: {e}")
        return cls(contributions=contributions, combiner=data.get("combiner", "mean"))

    def to_dict(self) -> dict:
        return {
            "combiner": self.combiner,
            "entries": {
                f"{trait.value}-{level.value}": {name: value for name, value in entries}
                for (trait, level), entries in self.contributions.items()
            },
        }


def params_from_profile(profile: TraitProfile, mapping: TraitParamMap) -> GenerationParams:
    """Combine the contributions of the profile's five (trait, level) pairs.

    Parameters that no pair names stay neutral.
    """
    collected: Dict[str, List[float]] = {}
    for trait in Trait:
        for name, value in mapping.contributions.get((trait, profile[trait]), []):
            collected.setdefault(name, []).append(value)

    values = {}
    for name, contributions in collected.items():
        if mapping.combiner == "max":
            values[name] = float(np.max(contributions))
        else:
            values[name] = float(np.mean(contributions))

    logger.debug(f"Profile {profile.to_dict()['levels']} sets {len(values)} parameters")
    return GenerationParams(values)
