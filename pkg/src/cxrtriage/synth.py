"""Synthetic per-condition classifier scores from an equal-variance binormal
model.

Positives draw from N(mu, 1), negatives from N(0, 1), and the separation
mu = sqrt(2) * quantile(target_auroc) makes the model's AUROC equal the
target exactly in expectation. Scores pass through the logistic function into
(0, 1), which preserves ranks and therefore the empirical AUROC.

Randomness is a seeded PCG64 generator with one independent stream per
condition, keyed by (seed, condition index), so a condition's output does not
depend on which other conditions are generated or in what order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from .conditions import Condition, DISPLAY_NAMES, Label4, PATHOLOGIES
from .errors import DomainError, ValidationError
from .labeler import derive_no_finding
from .normal import inverse_normal_cdf
from .records import StudyRecord

#: Trigger phrase used when rendering a condition state into report text.
#: Every phrase is part of the bundled default lexicon.
SENTENCE_PHRASES: dict[Condition, str] = {
    Condition.ATELECTASIS: "atelectasis",
    Condition.CARDIOMEGALY: "cardiomegaly",
    Condition.CONSOLIDATION: "consolidation",
    Condition.EDEMA: "pulmonary edema",
    Condition.LUNG_OPACITY: "opacity",
    Condition.PNEUMONIA: "pneumonia",
    Condition.PLEURAL_EFFUSION: "pleural effusion",
    Condition.PNEUMOTHORAX: "pneumothorax",
    Condition.PLEURAL_OTHER: "pleural thickening",
    Condition.HERNIA: "hiatal hernia",
    Condition.EMPHYSEMA: "emphysema",
    Condition.FRACTURE: "rib fracture",
    Condition.SUPPORT_DEVICES: "chest tube",
}


def mu_for_auroc(target_auroc: float) -> float:
    """Class-mean separation giving the target AUROC under the binormal
    model: sqrt(2) * quantile(target)."""
    if not 0.0 < target_auroc < 1.0:
        raise DomainError(f"target AUROC must be in (0, 1), got {target_auroc}")
    return math.sqrt(2.0) * inverse_normal_cdf(target_auroc)


@dataclass(frozen=True)
class ConditionSpec:
    target_auroc: float
    disease_ratio: float

    def __post_init__(self):
        if not 0.0 < self.target_auroc < 1.0:
            raise DomainError(f"target AUROC must be in (0, 1), got {self.target_auroc}")
        if not 0.0 < self.disease_ratio < 1.0:
            raise DomainError(f"disease ratio must be in (0, 1), got {self.disease_ratio}")


@dataclass(frozen=True)
class SynthSpec:
    n_records: int
    seed: int
    conditions: dict[Condition, ConditionSpec]

    def __post_init__(self):
        if self.n_records < 2:
            raise ValidationError(f"n_records must be >= 2, got {self.n_records}")
        if self.seed < 0:
            raise ValidationError(f"seed must be non-negative, got {self.seed}")
        if set(self.conditions) != set(PATHOLOGIES):
            raise ValidationError("spec must cover exactly the 13 pathologies")

    @classmethod
    def uniform(
        cls, n_records: int, seed: int, target_auroc: float, disease_ratio: float
    ) -> "SynthSpec":
        spec = ConditionSpec(target_auroc, disease_ratio)
        return cls(n_records, seed, {c: spec for c in PATHOLOGIES})

    def to_dict(self) -> dict:
        return {
            "n_records": self.n_records,
            "seed": self.seed,
            "conditions": {
                c.value: {
                    "target_auroc": s.target_auroc,
                    "disease_ratio": s.disease_ratio,
                }
                for c, s in sorted(self.conditions.items(), key=lambda kv: kv[0].value)
            },
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "SynthSpec":
        try:
            conditions = {
                Condition(key): ConditionSpec(**value)
                for key, value in payload["conditions"].items()
            }
            return cls(
                n_records=payload["n_records"],
                seed=payload["seed"],
                conditions=conditions,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad synth spec: {exc}") from exc

    @classmethod
    def from_json(cls, path: str | Path) -> "SynthSpec":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ValidationError(f"cannot read synth spec {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON in synth spec {path}: {exc}") from exc
        return cls.from_dict(payload)


def _condition_stream(seed: int, condition_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, condition_index])))


def _render_report(states: dict[Condition, Label4]) -> str:
    sentences = []
    for condition in PATHOLOGIES:
        phrase = SENTENCE_PHRASES[condition]
        if states[condition] is Label4.POSITIVE:
            sentences.append(phrase.capitalize() + " is present.")
        else:
            sentences.append("No " + phrase + ".")
    return " ".join(sentences)


def generate_scores(spec: SynthSpec, *, with_reports: bool = True) -> list[StudyRecord]:
    """Generate labeled, scored records; deterministic for a fixed seed.

    Each record carries binary POS/NEG labels for the 13 pathologies, the
    derived no-finding label, logistic-squashed binormal scores, and (by
    default) a rendered report text that the rule labeler maps back to the
    same labels.
    """
    n = spec.n_records
    is_positive: dict[Condition, np.ndarray] = {}
    scores: dict[Condition, np.ndarray] = {}
    for index, condition in enumerate(PATHOLOGIES):
        params = spec.conditions[condition]
        rng = _condition_stream(spec.seed, index)
        positive = rng.random(n) < params.disease_ratio
        raw = rng.standard_normal(n) + mu_for_auroc(params.target_auroc) * positive
        is_positive[condition] = positive
        scores[condition] = 1.0 / (1.0 + np.exp(-raw))

    width = max(6, len(str(n)))
    records = []
    for i in range(n):
        labels = {
            c: (Label4.POSITIVE if is_positive[c][i] else Label4.NEGATIVE)
            for c in PATHOLOGIES
        }
        labels[Condition.NO_FINDING] = derive_no_finding(labels)
        records.append(
            StudyRecord(
                study_id=f"synth-{i + 1:0{width}d}",
                report_text=_render_report(labels) if with_reports else None,
                labels=labels,
                scores={c: float(scores[c][i]) for c in PATHOLOGIES},
            )
        )
    return records
