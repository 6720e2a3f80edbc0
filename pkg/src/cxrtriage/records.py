"""Study records: CSV ingest/egress, validation, and prevalence statistics.

The records CSV schema:

    study_id,patient_id,report_text,label_<condition>...,score_<condition>...

``study_id`` is required and unique. ``patient_id`` and ``report_text`` are
optional columns; the 14 label columns and the 13 score columns are
independently optional, but each block must be complete when present. Label
cells hold POS/NEG/UNC/NOMENTION (case-insensitive); score cells hold
decimals in [0, 1]. Unknown columns are rejected. Files are UTF-8 with
RFC-4180 quoting, so report text may contain commas and newlines.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .conditions import (
    Condition,
    Label4,
    PATHOLOGIES,
    label_column,
    parse_label,
    score_column,
)
from .errors import DuplicateIdError, MissingLabelsError, SchemaError

ID_COLUMNS = ("study_id", "patient_id", "report_text")
LABEL_COLUMNS = tuple(label_column(c) for c in Condition)
SCORE_COLUMNS = tuple(score_column(c) for c in PATHOLOGIES)


@dataclass(frozen=True)
class StudyRecord:
    """One chest X-ray study: identifiers, optional report text, optional
    labels (complete over 14 conditions), optional scores (13 conditions)."""

    study_id: str
    patient_id: str | None = None
    report_text: str | None = None
    labels: dict[Condition, Label4] | None = None
    scores: dict[Condition, float] | None = None

    def __post_init__(self):
        if not self.study_id:
            raise SchemaError("study_id must be non-empty")
        if self.labels is not None and set(self.labels) != set(Condition):
            raise SchemaError(
                "label mapping must cover all 14 conditions", column="labels"
            )
        if self.scores is not None:
            if set(self.scores) != set(PATHOLOGIES):
                raise SchemaError(
                    "score mapping must cover the 13 pathologies", column="scores"
                )
            for condition, value in self.scores.items():
                if not 0.0 <= value <= 1.0:
                    raise SchemaError(
                        f"score {value!r} outside [0, 1]",
                        column=score_column(condition),
                    )


def _check_header(header: Sequence[str]) -> tuple[bool, bool, bool, bool]:
    seen = set()
    for name in header:
        if name in seen:
            raise SchemaError("duplicated column", column=name)
        seen.add(name)
    known = set(ID_COLUMNS) | set(LABEL_COLUMNS) | set(SCORE_COLUMNS)
    for name in header:
        if name not in known:
            raise SchemaError("unknown column", column=name)
    if "study_id" not in seen:
        raise SchemaError("missing required column", column="study_id")

    label_present = [c for c in LABEL_COLUMNS if c in seen]
    if label_present and len(label_present) != len(LABEL_COLUMNS):
        missing = sorted(set(LABEL_COLUMNS) - seen)
        raise SchemaError(f"incomplete label block; missing {missing}")
    score_present = [c for c in SCORE_COLUMNS if c in seen]
    if score_present and len(score_present) != len(SCORE_COLUMNS):
        missing = sorted(set(SCORE_COLUMNS) - seen)
        raise SchemaError(f"incomplete score block; missing {missing}")
    return (
        "patient_id" in seen,
        "report_text" in seen,
        bool(label_present),
        bool(score_present),
    )


def parse_records(source: str | Path | io.TextIOBase) -> list[StudyRecord]:
    """Parse a records CSV; raises SchemaError/DuplicateIdError on bad input."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as handle:
            return parse_records(handle)

    reader = csv.DictReader(source)
    if reader.fieldnames is None:
        raise SchemaError("empty file: missing header")
    has_patient, has_text, has_labels, has_scores = _check_header(reader.fieldnames)

    records: list[StudyRecord] = []
    seen_ids: set[str] = set()
    duplicates: set[str] = set()
    for row_num, row in enumerate(reader, start=1):
        if None in row or any(v is None for v in row.values()):
            raise SchemaError("wrong number of fields", row=row_num)
        study_id = row["study_id"].strip()
        if not study_id:
            raise SchemaError("empty study_id", row=row_num, column="study_id")
        if study_id in seen_ids:
            duplicates.add(study_id)
        seen_ids.add(study_id)

        labels = None
        if has_labels:
            labels = {}
            for condition in Condition:
                cell = row[label_column(condition)]
                try:
                    labels[condition] = parse_label(cell)
                except ValueError as exc:
                    raise SchemaError(
                        str(exc), row=row_num, column=label_column(condition)
                    ) from None
        scores = None
        if has_scores:
            scores = {}
            for condition in PATHOLOGIES:
                cell = row[score_column(condition)]
                try:
                    value = float(cell)
                except ValueError:
                    raise SchemaError(
                        f"not a number: {cell!r}", row=row_num, column=score_column(condition)
                    ) from None
                if not 0.0 <= value <= 1.0:
                    raise SchemaError(
                        f"score {value} outside [0, 1]",
                        row=row_num,
                        column=score_column(condition),
                    )
                scores[condition] = value

        records.append(
            StudyRecord(
                study_id=study_id,
                patient_id=(row["patient_id"] or None) if has_patient else None,
                report_text=(row["report_text"] or None) if has_text else None,
                labels=labels,
                scores=scores,
            )
        )
    if duplicates:
        raise DuplicateIdError(duplicates)
    return records


def write_records(
    records: Sequence[StudyRecord],
    target: str | Path | io.TextIOBase,
    *,
    with_labels: bool | None = None,
    with_scores: bool | None = None,
) -> None:
    """Write records CSV. Block presence defaults to whether the first record
    carries the block; all records must then agree."""
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="", encoding="utf-8") as handle:
            write_records(
                records, handle, with_labels=with_labels, with_scores=with_scores
            )
            return

    if with_labels is None:
        with_labels = bool(records) and records[0].labels is not None
    if with_scores is None:
        with_scores = bool(records) and records[0].scores is not None

    header = list(ID_COLUMNS)
    if with_labels:
        header += list(LABEL_COLUMNS)
    if with_scores:
        header += list(SCORE_COLUMNS)
    writer = csv.writer(target)
    writer.writerow(header)
    for record in records:
        row = [record.study_id, record.patient_id or "", record.report_text or ""]
        if with_labels:
            if record.labels is None:
                raise MissingLabelsError(f"record {record.study_id} has no labels")
            row += [record.labels[c].value for c in Condition]
        if with_scores:
            if record.scores is None:
                raise SchemaError(f"record {record.study_id} has no scores")
            row += [repr(record.scores[c]) for c in PATHOLOGIES]
        writer.writerow(row)


@dataclass(frozen=True)
class PrevalenceTable:
    """Exact per-condition counts of the four label states."""

    counts: dict[Condition, dict[Label4, int]]
    total: int

    def fraction(self, condition: Condition, label: Label4) -> float:
        return self.counts[condition][label] / self.total

    def percent(self, condition: Condition, label: Label4, digits: int = 2) -> float:
        """Rendered percentage: exact count ratio rounded half-up."""
        count = self.counts[condition][label]
        scale = 10 ** digits
        return (100 * count * scale * 2 + self.total) // (2 * self.total) / scale


def prevalence_stats(records: Sequence[StudyRecord]) -> PrevalenceTable:
    """Count label states per condition. All records must carry labels."""
    counts = {c: {label: 0 for label in Label4} for c in Condition}
    for record in records:
        if record.labels is None:
            raise MissingLabelsError(f"record {record.study_id} has no labels")
        for condition, label in record.labels.items():
            counts[condition][label] += 1
    return PrevalenceTable(counts=counts, total=len(records))
