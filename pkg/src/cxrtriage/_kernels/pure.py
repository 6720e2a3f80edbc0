"""Pure-Python ROC sweep kernel.

Reference implementation; the compiled extension in ``_roc_sweep.pyx`` must
produce identical output for identical input.
"""

from __future__ import annotations

import math
from typing import Sequence

BACKEND = "pure"


def roc_sweep(
    scores: Sequence[float], truths: Sequence[int]
) -> tuple[list[float], list[int], list[int]]:
    """Cumulative true/false-positive counts at each distinct score.

    Returns (thresholds, tp, fp) with thresholds strictly descending; entry k
    counts the samples with score >= thresholds[k]. Tied scores collapse into
    one entry. Scores must be finite; truths are 0/1.
    """
    if len(scores) != len(truths):
        raise ValueError("scores and truths differ in length")
    for s in scores:
        if not math.isfinite(s):
            raise ValueError(f"non-finite score {s!r}")
    pairs = sorted(zip(scores, truths), key=lambda p: p[0], reverse=True)

    thresholds: list[float] = []
    tp_counts: list[int] = []
    fp_counts: list[int] = []
    tp = fp = 0
    i = 0
    n = len(pairs)
    while i < n:
        threshold = pairs[i][0]
        while i < n and pairs[i][0] == threshold:
            if pairs[i][1]:
                tp += 1
            else:
                fp += 1
            i += 1
        thresholds.append(threshold)
        tp_counts.append(tp)
        fp_counts.append(fp)
    return thresholds, tp_counts, fp_counts
