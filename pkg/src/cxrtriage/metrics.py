"""Empirical ROC curves, AUROC, high-sensitivity operating points, work
reduction, and model comparison.

All curve arithmetic is exact: cumulative counts are integers and rates are
``Fraction`` values, so the trapezoidal AUROC equals the tie-corrected
pairwise ranking statistic identically, not just within float tolerance.
Floats appear only at rendering time.

Threshold semantics are fixed as "predict positive iff score >= threshold";
operating points are chosen on the empirical curve without interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import _kernels
from .conditions import Condition, PATHOLOGIES, condition_from_key
from .errors import (
    DegenerateClassError,
    MismatchedConditionsError,
    MissingLabelsError,
    ZeroBaselineError,
)
from .policy import Binarized, LabelPolicy, DEFAULT_POLICY, apply_label_policy
from .records import StudyRecord


@dataclass(frozen=True)
class RocPoint:
    threshold: float
    tpr: Fraction
    fpr: Fraction


@dataclass(frozen=True)
class RocCurve:
    """Empirical ROC curve over cumulative counts.

    ``thresholds[0]`` is the +inf anchor (nothing predicted positive); the
    last threshold is the minimum score (everything predicted positive).
    """

    thresholds: tuple[float, ...]
    tp: tuple[int, ...]
    fp: tuple[int, ...]
    n_pos: int
    n_neg: int

    def __post_init__(self):
        if self.n_pos < 1 or self.n_neg < 1:
            raise DegenerateClassError("curve needs at least one sample per class")
        if not (len(self.thresholds) == len(self.tp) == len(self.fp)):
            raise ValueError("threshold/count lengths differ")
        if self.tp[0] != 0 or self.fp[0] != 0:
            raise ValueError("curve must start at the (0, 0) anchor")
        if self.tp[-1] != self.n_pos or self.fp[-1] != self.n_neg:
            raise ValueError("curve must end at (1, 1)")

    def tpr(self, index: int) -> Fraction:
        return Fraction(self.tp[index], self.n_pos)

    def fpr(self, index: int) -> Fraction:
        return Fraction(self.fp[index], self.n_neg)

    @property
    def points(self) -> list[RocPoint]:
        return [
            RocPoint(self.thresholds[i], self.tpr(i), self.fpr(i))
            for i in range(len(self.thresholds))
        ]


def roc_curve(scores: Sequence[float], truths: Sequence[int]) -> RocCurve:
    """Build the empirical ROC curve; one point per distinct score value.

    ``truths`` are 0/1 (or falsy/truthy). Raises DegenerateClassError when
    either class is empty.
    """
    if len(scores) != len(truths):
        raise ValueError("scores and truths differ in length")
    n_pos = sum(1 for t in truths if t)
    n_neg = len(truths) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateClassError("need at least one positive and one negative")
    thresholds, tp, fp = _kernels.roc_sweep(scores, truths)
    return RocCurve(
        thresholds=(math.inf, *thresholds),
        tp=(0, *tp),
        fp=(0, *fp),
        n_pos=n_pos,
        n_neg=n_neg,
    )


def auroc(curve: RocCurve) -> Fraction:
    """Trapezoidal area under the curve over the FPR axis, exact."""
    acc = 0
    for i in range(1, len(curve.thresholds)):
        acc += (curve.fp[i] - curve.fp[i - 1]) * (curve.tp[i] + curve.tp[i - 1])
    return Fraction(acc, 2 * curve.n_pos * curve.n_neg)


@dataclass(frozen=True)
class OperatingPoint:
    threshold: float
    sensitivity: Fraction
    specificity: Fraction
    target_sensitivity: float

    def __post_init__(self):
        if self.sensitivity < self.target_sensitivity:
            raise ValueError("achieved sensitivity below target")


def operating_point_at_sensitivity(
    scores: Sequence[float], truths: Sequence[int], target: float = 0.95
) -> OperatingPoint:
    """Highest-specificity threshold whose sensitivity reaches the target.

    Along the empirical curve, sensitivity only grows as the threshold drops
    while specificity only shrinks, so the answer is the largest qualifying
    threshold; ties in specificity resolve to it as well. No interpolation.
    """
    if not 0.0 < target <= 1.0:
        raise ValueError(f"target sensitivity must be in (0, 1], got {target}")
    curve = roc_curve(scores, truths)
    for i in range(1, len(curve.thresholds)):
        sensitivity = curve.tpr(i)
        if sensitivity >= target:
            return OperatingPoint(
                threshold=curve.thresholds[i],
                sensitivity=sensitivity,
                specificity=1 - curve.fpr(i),
                target_sensitivity=target,
            )
    raise AssertionError("unreachable: the minimum threshold has sensitivity 1")


def work_reduction(sensitivity, specificity, disease_ratio):
    """Fraction of all cases predicted negative (de-prioritized).

    Affine in the disease ratio: specificity at ratio 0, (1 - sensitivity) at
    ratio 1. Accepts floats or Fractions and preserves their arithmetic.
    """
    for name, value in (
        ("sensitivity", sensitivity),
        ("specificity", specificity),
        ("disease_ratio", disease_ratio),
    ):
        if not 0 <= value <= 1:
            raise ValueError(f"{name} must be in [0, 1], got {value}")
    return specificity * (1 - disease_ratio) + (1 - sensitivity) * disease_ratio


def wr_curve(
    operating_points: Sequence[tuple[float, float]],
    ratio_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """Average work reduction across conditions at each grid disease ratio.

    ``operating_points`` holds per-condition (sensitivity, specificity)
    pairs. Each output point is (ratio, mean work reduction).
    """
    if not operating_points:
        raise ValueError("no operating points")
    if not len(ratio_grid):
        raise ValueError("empty ratio grid")
    out = []
    for ratio in ratio_grid:
        total = sum(work_reduction(sens, spec, ratio) for sens, spec in operating_points)
        out.append((ratio, total / len(operating_points)))
    return out


def relative_change(baseline: float, new: float) -> float:
    """(new - baseline) / baseline."""
    if baseline == 0:
        raise ZeroBaselineError("relative change needs a non-zero baseline")
    return (new - baseline) / baseline


@dataclass(frozen=True)
class ConditionEval:
    auroc: float
    threshold: float
    sensitivity: float
    specificity: float
    work_reduction: float
    prevalence: float
    n_pos: int
    n_neg: int


@dataclass(frozen=True)
class EvalReport:
    conditions: dict[Condition, ConditionEval]
    policy: str
    target_sensitivity: float
    wr_sensitivity: str  # "achieved" or "nominal"
    dataset_id: str | None = None
    model_id: str | None = None

    @property
    def auroc_mean(self) -> float:
        return _mean([c.auroc for c in self.conditions.values()])

    @property
    def auroc_std(self) -> float:
        return _pstdev([c.auroc for c in self.conditions.values()])

    @property
    def specificity_mean(self) -> float:
        return _mean([c.specificity for c in self.conditions.values()])

    @property
    def work_reduction_mean(self) -> float:
        return _mean([c.work_reduction for c in self.conditions.values()])

    def to_dict(self) -> dict:
        return {
            "dataset_id": self.dataset_id,
            "model_id": self.model_id,
            "policy": self.policy,
            "target_sensitivity": self.target_sensitivity,
            "wr_sensitivity": self.wr_sensitivity,
            "conditions": {
                c.value: vars(e).copy() for c, e in sorted(
                    self.conditions.items(), key=lambda kv: kv[0].value
                )
            },
            "aggregate": {
                "auroc_mean": self.auroc_mean,
                "auroc_std": self.auroc_std,
                "specificity_mean": self.specificity_mean,
                "work_reduction_mean": self.work_reduction_mean,
            },
        }

    @classmethod
    def from_dict(cls, payload: Mapping) -> "EvalReport":
        conditions = {
            condition_from_key(key): ConditionEval(**value)
            for key, value in payload["conditions"].items()
        }
        return cls(
            conditions=conditions,
            policy=payload["policy"],
            target_sensitivity=payload["target_sensitivity"],
            wr_sensitivity=payload["wr_sensitivity"],
            dataset_id=payload.get("dataset_id"),
            model_id=payload.get("model_id"),
        )


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def _pstdev(values: Sequence[float]) -> float:
    # Population standard deviation: the 13 conditions are the whole
    # population of interest, not a sample.
    mu = _mean(values)
    return math.sqrt(sum((v - mu) ** 2 for v in values) / len(values))


def binarize_condition(
    records: Sequence[StudyRecord], condition: Condition, policy: LabelPolicy
) -> tuple[list[float], list[int]]:
    """Scores and binary truths for one condition after policy binarization.

    Records whose label maps to EXCLUDED are dropped for this condition.
    """
    scores: list[float] = []
    truths: list[int] = []
    for record in records:
        if record.labels is None or record.scores is None:
            what = "labels" if record.labels is None else "scores"
            raise MissingLabelsError(f"record {record.study_id} has no {what}")
        outcome = apply_label_policy(record.labels[condition], policy)
        if outcome is Binarized.EXCLUDED:
            continue
        scores.append(record.scores[condition])
        truths.append(1 if outcome is Binarized.POSITIVE else 0)
    return scores, truths


def evaluate_model(
    records: Sequence[StudyRecord],
    policy: LabelPolicy = DEFAULT_POLICY,
    target_sensitivity: float = 0.95,
    *,
    wr_sensitivity: str = "achieved",
    prevalence_override: Mapping[Condition, float] | None = None,
    dataset_id: str | None = None,
    model_id: str | None = None,
) -> EvalReport:
    """Per-condition AUROC, operating point, and work reduction.

    Work reduction uses the prevalence observed in the evaluated records
    (after exclusions) unless ``prevalence_override`` supplies external
    ratios, and the achieved sensitivity at the chosen threshold unless
    ``wr_sensitivity="nominal"`` substitutes the target value.
    """
    if wr_sensitivity not in ("achieved", "nominal"):
        raise ValueError(f"wr_sensitivity must be 'achieved' or 'nominal', got {wr_sensitivity!r}")
    per_condition: dict[Condition, ConditionEval] = {}
    for condition in PATHOLOGIES:
        scores, truths = binarize_condition(records, condition, policy)
        n_pos = sum(truths)
        n_neg = len(truths) - n_pos
        if n_pos == 0 or n_neg == 0:
            raise DegenerateClassError(
                f"condition {condition.value} has an empty class after binarization "
                f"(n_pos={n_pos}, n_neg={n_neg})",
                condition=condition,
            )
        curve = roc_curve(scores, truths)
        area = auroc(curve)
        point = operating_point_at_sensitivity(scores, truths, target_sensitivity)
        if prevalence_override is not None and condition in prevalence_override:
            prevalence = Fraction(prevalence_override[condition])
        else:
            prevalence = Fraction(n_pos, n_pos + n_neg)
        wr_sens = (
            Fraction(target_sensitivity)
            if wr_sensitivity == "nominal"
            else point.sensitivity
        )
        wr = work_reduction(wr_sens, point.specificity, prevalence)
        per_condition[condition] = ConditionEval(
            auroc=float(area),
            threshold=point.threshold,
            sensitivity=float(point.sensitivity),
            specificity=float(point.specificity),
            work_reduction=float(wr),
            prevalence=float(prevalence),
            n_pos=n_pos,
            n_neg=n_neg,
        )
    return EvalReport(
        conditions=per_condition,
        policy=policy.describe(),
        target_sensitivity=target_sensitivity,
        wr_sensitivity=wr_sensitivity,
        dataset_id=dataset_id,
        model_id=model_id,
    )


@dataclass(frozen=True)
class ConditionDelta:
    auroc_a: float
    auroc_b: float
    delta: float
    relative: float
    better: str  # "a", "b", or "tie"


@dataclass(frozen=True)
class ModelComparison:
    """Per-condition AUROC deltas of report B against baseline report A."""

    model_a: str
    model_b: str
    dataset_id: str | None
    conditions: dict[Condition, ConditionDelta]
    auroc_mean_a: float
    auroc_mean_b: float
    auroc_mean_delta: float
    auroc_mean_relative: float
    wr_mean_a: float
    wr_mean_b: float
    wr_mean_relative: float

    def wins(self, which: str) -> int:
        return sum(1 for d in self.conditions.values() if d.better == which)


def compare_models(report_a: EvalReport, report_b: EvalReport) -> ModelComparison:
    """Compare two evaluation reports over the same conditions and dataset."""
    if set(report_a.conditions) != set(report_b.conditions):
        raise MismatchedConditionsError("reports cover different condition sets")
    if report_a.dataset_id != report_b.dataset_id:
        raise MismatchedConditionsError(
            f"reports evaluate different datasets: "
            f"{report_a.dataset_id!r} vs {report_b.dataset_id!r}"
        )
    deltas: dict[Condition, ConditionDelta] = {}
    for condition, eval_a in report_a.conditions.items():
        eval_b = report_b.conditions[condition]
        delta = eval_b.auroc - eval_a.auroc
        deltas[condition] = ConditionDelta(
            auroc_a=eval_a.auroc,
            auroc_b=eval_b.auroc,
            delta=delta,
            relative=relative_change(eval_a.auroc, eval_b.auroc),
            better="tie" if delta == 0 else ("b" if delta > 0 else "a"),
        )
    return ModelComparison(
        model_a=report_a.model_id or "a",
        model_b=report_b.model_id or "b",
        dataset_id=report_a.dataset_id,
        conditions=deltas,
        auroc_mean_a=report_a.auroc_mean,
        auroc_mean_b=report_b.auroc_mean,
        auroc_mean_delta=report_b.auroc_mean - report_a.auroc_mean,
        auroc_mean_relative=relative_change(report_a.auroc_mean, report_b.auroc_mean),
        wr_mean_a=report_a.work_reduction_mean,
        wr_mean_b=report_b.work_reduction_mean,
        wr_mean_relative=relative_change(
            report_a.work_reduction_mean, report_b.work_reduction_mean
        ),
    )
