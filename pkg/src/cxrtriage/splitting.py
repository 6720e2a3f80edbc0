"""Reproducible train/validation/test splitting.

Units (studies, or patients when grouping) are sorted by id, shuffled with a
seeded RNG, and allocated to splits by largest-remainder apportionment, so a
given (id set, seed, ratios) always yields the same assignment regardless of
input order. Grouping keeps all studies of one patient in one split; records
without a patient id form singleton groups.
"""

from __future__ import annotations

import enum
import io
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import EmptyDatasetError, SchemaError, ValidationError
from .records import StudyRecord


class Split(enum.Enum):
    TRAIN = "train"
    VALIDATION = "val"
    TEST = "test"


DEFAULT_RATIOS = (0.6, 0.2, 0.2)


@dataclass(frozen=True)
class SplitAssignment:
    assignments: dict[str, Split]  # study_id -> split
    seed: int
    grouped_by_patient: bool

    def ids(self, split: Split) -> list[str]:
        return sorted(sid for sid, s in self.assignments.items() if s is split)


def _apportion(n: int, ratios: Sequence[float]) -> list[int]:
    """Largest-remainder allocation of n units to len(ratios) buckets."""
    raw = [n * r for r in ratios]
    base = [int(x) for x in raw]
    remainder = n - sum(base)
    order = sorted(range(len(ratios)), key=lambda i: (-(raw[i] - base[i]), i))
    for i in order[:remainder]:
        base[i] += 1
    return base


def split_dataset(
    records: Sequence[StudyRecord],
    ratios: tuple[float, float, float] = DEFAULT_RATIOS,
    seed: int = 0,
    group_by_patient: bool | None = None,
) -> SplitAssignment:
    """Assign every record to train/val/test.

    ``group_by_patient=None`` groups automatically when any record carries a
    patient id. Split sizes are exact in units (largest remainder), so record
    counts deviate from the ratios by at most one group.
    """
    if not records:
        raise EmptyDatasetError("no records to split")
    if any(r <= 0 for r in ratios):
        raise ValidationError(f"ratios must be positive, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValidationError(f"ratios must sum to 1, got {ratios}")

    if group_by_patient is None:
        group_by_patient = any(r.patient_id for r in records)

    groups: dict[str, list[str]] = {}
    for record in records:
        if group_by_patient and record.patient_id:
            key = f"patient:{record.patient_id}"
        else:
            key = f"study:{record.study_id}"
        groups.setdefault(key, []).append(record.study_id)

    unit_keys = sorted(groups)
    rng = random.Random(seed)
    rng.shuffle(unit_keys)

    counts = _apportion(len(unit_keys), ratios)
    assignments: dict[str, Split] = {}
    cursor = 0
    for split, count in zip(Split, counts):
        for key in unit_keys[cursor : cursor + count]:
            for study_id in groups[key]:
                assignments[study_id] = split
        cursor += count

    return SplitAssignment(
        assignments=assignments, seed=seed, grouped_by_patient=group_by_patient
    )


def write_split(assignment: SplitAssignment, target: str | Path | io.TextIOBase) -> None:
    """Write `study_id,split` rows under a `# seed=... grouped=...` comment."""
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="", encoding="utf-8") as handle:
            write_split(assignment, handle)
            return
    target.write(
        f"# seed={assignment.seed} grouped={str(assignment.grouped_by_patient).lower()}\n"
    )
    target.write("study_id,split\n")
    for study_id in sorted(assignment.assignments):
        target.write(f"{study_id},{assignment.assignments[study_id].value}\n")


def read_split(source: str | Path | io.TextIOBase) -> SplitAssignment:
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as handle:
            return read_split(handle)
    lines = [line.rstrip("\n") for line in source]
    if not lines or not lines[0].startswith("#"):
        raise SchemaError("split file must start with a '# seed=... grouped=...' line")
    meta = dict(
        part.split("=", 1) for part in lines[0].lstrip("# ").split() if "=" in part
    )
    try:
        seed = int(meta["seed"])
        grouped = meta["grouped"] == "true"
    except (KeyError, ValueError):
        raise SchemaError(f"bad split header {lines[0]!r}") from None
    if not lines[1:] or lines[1] != "study_id,split":
        raise SchemaError("missing 'study_id,split' header")
    assignments: dict[str, Split] = {}
    by_value = {s.value: s for s in Split}
    for row_num, line in enumerate(lines[2:], start=1):
        if not line:
            continue
        try:
            study_id, split_name = line.split(",", 1)
            assignments[study_id] = by_value[split_name]
        except (ValueError, KeyError):
            raise SchemaError("bad split row", row=row_num) from None
    return SplitAssignment(assignments=assignments, seed=seed, grouped_by_patient=grouped)
