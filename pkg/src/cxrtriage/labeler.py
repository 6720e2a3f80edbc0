"""Three-stage rule pipeline turning report text into per-condition labels.

Stage 1 extracts trigger-phrase mentions (longest match, non-overlapping,
token-aligned). Stage 2 classifies each mention by cue precedence:
pre-negation, then post-negation, then uncertainty, else positive. Stage 3
aggregates mention polarities per condition (positive > uncertain > negative)
and derives the no-finding pseudo-label.

Everything here is a pure function over an immutable lexicon, so reports can
be labeled in parallel without shared state.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .conditions import DEFAULT_NO_FINDING_SUBSET, Condition, Label4, PATHOLOGIES
from .lexicon import Cue, Lexicon
from .segment import SentenceSpan, Token, segment_sentences, tokenize

RULE_DEFAULT_POSITIVE = "default-positive"

_POLARITY_RANK = {Label4.POSITIVE: 2, Label4.UNCERTAIN: 1, Label4.NEGATIVE: 0}


@dataclass(frozen=True)
class Mention:
    """One trigger-phrase occurrence inside a report sentence.

    ``start``/``end`` are character offsets into the sentence; the matched
    text equals the phrase only up to case and token separators.
    """

    condition: Condition
    sentence_index: int
    start: int
    end: int
    matched_phrase: str
    polarity: Label4 | None = None
    rule_fired: str | None = None


def _sentence_text(sentence: str | SentenceSpan) -> str:
    return sentence.text if isinstance(sentence, SentenceSpan) else sentence


def _match_sentence(text: str, tokens: list[Token], sentence_index: int, lexicon: Lexicon) -> list[Mention]:
    mentions = []
    i = 0
    n = len(tokens)
    while i < n:
        hit = None
        for trigger in lexicon.triggers_starting_with(tokens[i].text):
            span = len(trigger.tokens)
            if i + span <= n and all(
                tokens[i + k].text == trigger.tokens[k] for k in range(1, span)
            ):
                hit = trigger
                break  # buckets are sorted longest-first
        if hit is None:
            i += 1
            continue
        start = tokens[i].start
        end = tokens[i + len(hit.tokens) - 1].end
        mentions.append(
            Mention(
                condition=hit.condition,
                sentence_index=sentence_index,
                start=start,
                end=end,
                matched_phrase=text[start:end],
            )
        )
        i += len(hit.tokens)
    return mentions


def extract_mentions(
    sentences: Sequence[str | SentenceSpan], lexicon: Lexicon
) -> list[Mention]:
    """Unclassified mentions, ordered by (sentence_index, start offset)."""
    mentions: list[Mention] = []
    for index, sentence in enumerate(sentences):
        text = _sentence_text(sentence)
        mentions.extend(_match_sentence(text, tokenize(text), index, lexicon))
    return mentions


def _cue_hits(tokens: list[Token], cues: Iterable[Cue]) -> list[tuple[int, int, Cue]]:
    """(first_token_index, last_token_index, cue) for every cue occurrence."""
    hits = []
    n = len(tokens)
    for cue in cues:
        span = len(cue.tokens)
        for p in range(0, n - span + 1):
            if all(tokens[p + k].text == cue.tokens[k] for k in range(span)):
                hits.append((p, p + span - 1, cue))
    return hits


def _token_range(tokens: list[Token], mention: Mention) -> tuple[int, int]:
    first = last = None
    for idx, tok in enumerate(tokens):
        if first is None and tok.start >= mention.start:
            first = idx
        if tok.end <= mention.end:
            last = idx
    if first is None or last is None or last < first:
        raise ValueError("mention span does not align with sentence tokens")
    return first, last


def _best_hit(candidates: list[tuple[int, tuple[int, int, Cue]]]) -> Cue | None:
    # candidates: (distance, hit); nearest cue wins, leftmost on ties
    if not candidates:
        return None
    candidates.sort(key=lambda c: (c[0], c[1][0], c[1][2].phrase))
    return candidates[0][2][2]


class _SentenceContext:
    """Tokenization and cue occurrences, computed once per sentence."""

    def __init__(self, text: str, lexicon: Lexicon):
        self.text = text
        self.tokens = tokenize(text)
        self.pre = _cue_hits(self.tokens, lexicon.pre_negation)
        self.post = _cue_hits(self.tokens, lexicon.post_negation)
        self.uncertain = _cue_hits(self.tokens, lexicon.uncertainty)


def _classify(mention: Mention, ctx: _SentenceContext) -> Mention:
    first, last = _token_range(ctx.tokens, mention)

    def before(hits):
        out = []
        for a, b, cue in hits:
            if b >= first:
                continue
            distance = first - b
            if cue.window is None or distance <= cue.window:
                out.append((distance, (a, b, cue)))
        return out

    def after(hits):
        out = []
        for a, b, cue in hits:
            if a <= last:
                continue
            distance = a - last
            if cue.window is None or distance <= cue.window:
                out.append((distance, (a, b, cue)))
        return out

    cue = _best_hit(before(ctx.pre))
    if cue is not None:
        return dataclasses.replace(
            mention, polarity=Label4.NEGATIVE, rule_fired=f"pre_neg:{cue.phrase}"
        )
    cue = _best_hit(after(ctx.post))
    if cue is not None:
        return dataclasses.replace(
            mention, polarity=Label4.NEGATIVE, rule_fired=f"post_neg:{cue.phrase}"
        )
    cue = _best_hit(before(ctx.uncertain) + after(ctx.uncertain))
    if cue is not None:
        return dataclasses.replace(
            mention, polarity=Label4.UNCERTAIN, rule_fired=f"uncertain:{cue.phrase}"
        )
    return dataclasses.replace(
        mention, polarity=Label4.POSITIVE, rule_fired=RULE_DEFAULT_POSITIVE
    )


def classify_mention(mention: Mention, sentence: str | SentenceSpan, lexicon: Lexicon) -> Mention:
    """Assign polarity to one mention given its sentence.

    Precedence: pre-negation beats post-negation beats uncertainty beats the
    positive default; within a stage the nearest cue wins.
    """
    return _classify(mention, _SentenceContext(_sentence_text(sentence), lexicon))


def aggregate_labels(mentions: Iterable[Mention]) -> dict[Condition, Label4]:
    """Fold classified mentions into one label per pathology.

    A condition with no mentions is NO_MENTION; otherwise the strongest
    polarity wins (positive > uncertain > negative).
    """
    best: dict[Condition, Label4] = {}
    for mention in mentions:
        if mention.polarity is None:
            raise ValueError(f"unclassified mention for {mention.condition.value}")
        rank = _POLARITY_RANK[mention.polarity]
        current = best.get(mention.condition)
        if current is None or rank > _POLARITY_RANK[current]:
            best[mention.condition] = mention.polarity
    return {c: best.get(c, Label4.NO_MENTION) for c in PATHOLOGIES}


def derive_no_finding(
    labels: Mapping[Condition, Label4],
    pathology_subset: frozenset[Condition] = DEFAULT_NO_FINDING_SUBSET,
) -> Label4:
    """POSITIVE when no counted pathology is positive or uncertain, else
    NO_MENTION. Never NEGATIVE or UNCERTAIN."""
    for condition in pathology_subset:
        if labels[condition] in (Label4.POSITIVE, Label4.UNCERTAIN):
            return Label4.NO_MENTION
    return Label4.POSITIVE


def label_report(
    report_text: str,
    lexicon: Lexicon,
    *,
    no_finding_subset: frozenset[Condition] = DEFAULT_NO_FINDING_SUBSET,
) -> tuple[dict[Condition, Label4], list[Mention]]:
    """Label one report; returns the 14-entry label map and the audit trail
    of classified mentions."""
    sentences = segment_sentences(report_text)
    classified: list[Mention] = []
    for index, span in enumerate(sentences):
        ctx = _SentenceContext(span.text, lexicon)
        for mention in _match_sentence(span.text, ctx.tokens, index, lexicon):
            classified.append(_classify(mention, ctx))
    labels = aggregate_labels(classified)
    labels[Condition.NO_FINDING] = derive_no_finding(labels, no_finding_subset)
    return labels, classified
