# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled ROC sweep kernel. Must match ``pure.roc_sweep`` exactly."""

from libc.math cimport isfinite
from libc.stdlib cimport free, malloc, qsort

BACKEND = "compiled"

cdef struct ScoredSample:
    double score
    unsigned char truth

cdef int _cmp_desc(const void* a, const void* b) noexcept nogil:
    cdef double sa = (<const ScoredSample*> a).score
    cdef double sb = (<const ScoredSample*> b).score
    if sa < sb:
        return 1
    if sa > sb:
        return -1
    return 0


def roc_sweep(scores, truths):
    """Cumulative true/false-positive counts at each distinct score.

    Returns (thresholds, tp, fp) with thresholds strictly descending; entry k
    counts the samples with score >= thresholds[k]. Tied scores collapse into
    one entry. Scores must be finite; truths are 0/1.
    """
    cdef Py_ssize_t n = len(scores)
    cdef Py_ssize_t i
    cdef double s, threshold
    cdef long long tp = 0, fp = 0
    cdef ScoredSample* samples

    if n != len(truths):
        raise ValueError("scores and truths differ in length")
    if n == 0:
        return [], [], []

    samples = <ScoredSample*> malloc(n * sizeof(ScoredSample))
    if samples == NULL:
        raise MemoryError()

    try:
        for i in range(n):
            s = scores[i]
            if not isfinite(s):
                raise ValueError(f"non-finite score {scores[i]!r}")
            samples[i].score = s
            samples[i].truth = 1 if truths[i] else 0

        with nogil:
            qsort(samples, n, sizeof(ScoredSample), _cmp_desc)

        thresholds = []
        tp_counts = []
        fp_counts = []
        i = 0
        while i < n:
            threshold = samples[i].score
            while i < n and samples[i].score == threshold:
                if samples[i].truth:
                    tp += 1
                else:
                    fp += 1
                i += 1
            thresholds.append(threshold)
            tp_counts.append(tp)
            fp_counts.append(fp)
        return thresholds, tp_counts, fp_counts
    finally:
        free(samples)
