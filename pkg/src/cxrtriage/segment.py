"""Deterministic sentence segmentation and tokenization for report text.

Segmentation splits on sentence-final punctuation (``. ! ? ;``) followed by
whitespace, and on every newline. A period does not end a sentence when it
terminates a known abbreviation ("Dr.", "e.g.", ...) or an enumerator at the
start of a segment ("1. Cardiomegaly."). Periods inside decimal numbers are
never boundaries because they are not followed by whitespace.

Each returned segment keeps its character offsets into the original text, so
downstream consumers can point back at the source report.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

#: Dotless, lower-cased forms of abbreviations whose trailing period must not
#: end a sentence.
ABBREVIATIONS = frozenset(
    {"dr", "mr", "mrs", "ms", "prof", "st", "vs", "e.g", "i.e", "cf", "approx"}
)

_BOUNDARY = re.compile(r"[.!?;](?=\s)|\n")
_TRAILING_WORD = re.compile(r"(?:\w+\.)*\w+$")
_TOKEN = re.compile(r"\w+")


@dataclass(frozen=True)
class SentenceSpan:
    """One sentence with its [start, end) offsets into the source text."""

    text: str
    start: int
    end: int


class Token(NamedTuple):
    text: str  # lower-cased
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    """Word tokens (Unicode word characters), lower-cased, with offsets."""
    return [Token(m.group().lower(), m.start(), m.end()) for m in _TOKEN.finditer(text)]


def _trailing_word(text: str, dot_pos: int) -> re.Match | None:
    # Bounded lookbehind; abbreviations and enumerators are short.
    return _TRAILING_WORD.search(text, max(0, dot_pos - 64), dot_pos)


def _is_abbreviation(text: str, dot_pos: int) -> bool:
    m = _trailing_word(text, dot_pos)
    return m is not None and m.group().lower() in ABBREVIATIONS


def _is_enumerator(text: str, dot_pos: int, seg_start: int) -> bool:
    m = _trailing_word(text, dot_pos)
    if m is None or not m.group().isdigit():
        return False
    return seg_start == m.start() or text[seg_start : m.start()].isspace()


def segment_sentences(report_text: str) -> list[SentenceSpan]:
    """Split report text into sentences, preserving source offsets.

    Empty and all-whitespace segments are dropped; an empty input yields an
    empty list. Re-segmenting any returned sentence yields it unchanged.
    """
    spans: list[SentenceSpan] = []

    def flush(seg_start: int, seg_end: int) -> None:
        raw = report_text[seg_start:seg_end]
        stripped = raw.strip()
        if not stripped:
            return
        start = seg_start + (len(raw) - len(raw.lstrip()))
        spans.append(SentenceSpan(stripped, start, start + len(stripped)))

    seg_start = 0
    for m in _BOUNDARY.finditer(report_text):
        if m.start() < seg_start:
            continue
        ch = m.group()
        if ch == "\n":
            flush(seg_start, m.start())
            seg_start = m.end()
        else:
            if ch == "." and (
                _is_abbreviation(report_text, m.start())
                or _is_enumerator(report_text, m.start(), seg_start)
            ):
                continue
            flush(seg_start, m.end())
            seg_start = m.end()
    flush(seg_start, len(report_text))
    return spans
