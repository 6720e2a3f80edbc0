"""The fixed condition vocabulary and the four-state label alphabet.

Thirteen pathologies (plus the support-devices class) are labeled directly
from report text; ``NO_FINDING`` is never matched in text, it is derived from
the other labels after aggregation.
"""

from __future__ import annotations

import enum


class Condition(enum.Enum):
    ATELECTASIS = "atelectasis"
    CARDIOMEGALY = "cardiomegaly"
    CONSOLIDATION = "consolidation"
    EDEMA = "edema"
    LUNG_OPACITY = "lung_opacity"
    PNEUMONIA = "pneumonia"
    PLEURAL_EFFUSION = "pleural_effusion"
    PNEUMOTHORAX = "pneumothorax"
    PLEURAL_OTHER = "pleural_other"
    HERNIA = "hernia"
    EMPHYSEMA = "emphysema"
    FRACTURE = "fracture"
    SUPPORT_DEVICES = "support_devices"
    NO_FINDING = "no_finding"

    def __str__(self) -> str:
        return self.value

    @property
    def display_name(self) -> str:
        return DISPLAY_NAMES[self]


#: The 13 conditions that may appear as lexicon targets and carry scores.
PATHOLOGIES: tuple[Condition, ...] = tuple(c for c in Condition if c is not Condition.NO_FINDING)

#: Conditions counted when deriving NO_FINDING. Support devices are equipment,
#: not pathology; fractures do count as findings.
DEFAULT_NO_FINDING_SUBSET: frozenset[Condition] = frozenset(
    c for c in PATHOLOGIES if c is not Condition.SUPPORT_DEVICES
)

DISPLAY_NAMES: dict[Condition, str] = {
    Condition.ATELECTASIS: "Atelectasis",
    Condition.CARDIOMEGALY: "Cardiomegaly",
    Condition.CONSOLIDATION: "Consolidation",
    Condition.EDEMA: "Edema",
    Condition.LUNG_OPACITY: "Lung Opacity",
    Condition.PNEUMONIA: "Pneumonia",
    Condition.PLEURAL_EFFUSION: "Pleural Effusion",
    Condition.PNEUMOTHORAX: "Pneumothorax",
    Condition.PLEURAL_OTHER: "Pleural Other",
    Condition.HERNIA: "Hernia",
    Condition.EMPHYSEMA: "Emphysema",
    Condition.FRACTURE: "Fracture",
    Condition.SUPPORT_DEVICES: "Support Devices",
    Condition.NO_FINDING: "No Finding",
}


class Label4(enum.Enum):
    """Four-state label attached to every (record, condition) pair."""

    POSITIVE = "POS"
    NEGATIVE = "NEG"
    UNCERTAIN = "UNC"
    NO_MENTION = "NOMENTION"

    def __str__(self) -> str:
        return self.value


_LABEL_BY_CODE = {m.value: m for m in Label4}


def parse_label(text: str) -> Label4:
    """Parse a CSV label code, case-insensitively."""
    try:
        return _LABEL_BY_CODE[text.strip().upper()]
    except KeyError:
        raise ValueError(f"unknown label code {text!r}") from None


def condition_from_key(key: str) -> Condition:
    """Look up a condition by its snake_case key."""
    try:
        return Condition(key.strip().lower())
    except ValueError:
        raise ValueError(f"unknown condition {key!r}") from None


def label_column(condition: Condition) -> str:
    return f"label_{condition.value}"


def score_column(condition: Condition) -> str:
    return f"score_{condition.value}"
