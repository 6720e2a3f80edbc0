"""Binarization policies for four-state labels.

Evaluation needs binary ground truth. Positive and negative labels always map
to themselves; the policy decides what happens to uncertain and no-mention
labels (mapped to a class, or excluded from the evaluation of that condition).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .conditions import Label4
from .errors import ValidationError


class Binarized(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    EXCLUDED = "excluded"


class UncertainPolicy(enum.Enum):
    AS_POSITIVE = "uncertain-positive"
    AS_NEGATIVE = "uncertain-negative"
    EXCLUDED = "uncertain-exclude"


class NoMentionPolicy(enum.Enum):
    AS_NEGATIVE = "nomention-negative"
    EXCLUDED = "nomention-exclude"


@dataclass(frozen=True)
class LabelPolicy:
    uncertain: UncertainPolicy = UncertainPolicy.EXCLUDED
    no_mention: NoMentionPolicy = NoMentionPolicy.AS_NEGATIVE

    def describe(self) -> str:
        return f"{self.uncertain.value},{self.no_mention.value}"


DEFAULT_POLICY = LabelPolicy()

_UNCERTAIN_MAP = {
    UncertainPolicy.AS_POSITIVE: Binarized.POSITIVE,
    UncertainPolicy.AS_NEGATIVE: Binarized.NEGATIVE,
    UncertainPolicy.EXCLUDED: Binarized.EXCLUDED,
}
_NO_MENTION_MAP = {
    NoMentionPolicy.AS_NEGATIVE: Binarized.NEGATIVE,
    NoMentionPolicy.EXCLUDED: Binarized.EXCLUDED,
}


def apply_label_policy(label: Label4, policy: LabelPolicy = DEFAULT_POLICY) -> Binarized:
    """Map one four-state label to positive/negative/excluded."""
    if label is Label4.POSITIVE:
        return Binarized.POSITIVE
    if label is Label4.NEGATIVE:
        return Binarized.NEGATIVE
    if label is Label4.UNCERTAIN:
        return _UNCERTAIN_MAP[policy.uncertain]
    return _NO_MENTION_MAP[policy.no_mention]


def parse_policy(text: str) -> LabelPolicy:
    """Parse a policy flag such as ``uncertain-exclude,nomention-negative``.

    Both parts are required, in either order.
    """
    uncertain: UncertainPolicy | None = None
    no_mention: NoMentionPolicy | None = None
    for part in text.split(","):
        part = part.strip().lower()
        if not part:
            continue
        matched = False
        for member in UncertainPolicy:
            if part == member.value:
                uncertain, matched = member, True
        for member in NoMentionPolicy:
            if part == member.value:
                no_mention, matched = member, True
        if not matched:
            raise ValidationError(f"unknown policy component {part!r}")
    if uncertain is None or no_mention is None:
        raise ValidationError(
            f"policy {text!r} must name both an uncertain- and a nomention- component"
        )
    return LabelPolicy(uncertain=uncertain, no_mention=no_mention)
