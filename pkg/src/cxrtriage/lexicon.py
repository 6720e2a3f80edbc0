"""Lexicon loading and validation.

A lexicon is a line-oriented UTF-8 TSV file::

    <stage> \\t <condition-or-GLOBAL> \\t <phrase> [\\t window=<n|sentence>]

with ``#`` comment lines and blank lines ignored. Stages:

``mention``
    Trigger phrase for one condition (the second field names the condition).
``pre_neg`` / ``post_neg`` / ``uncertain``
    Global cue phrase (second field must be ``GLOBAL``). The optional fourth
    field sets the cue's scope window in tokens; ``window=sentence`` makes it
    sentence-bounded. Cues without a window use ``DEFAULT_CUE_WINDOW``.

Phrases are matched case-insensitively on word-token boundaries, so
"ground glass" also matches "ground-glass". A loaded lexicon is immutable;
violated invariants (a phrase mapped to two conditions, a cue colliding with
a trigger phrase, an unknown stage or condition) raise :class:`LexiconError`.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .conditions import Condition, condition_from_key
from .errors import LexiconError
from .segment import tokenize

#: Default cue scope: the cue's nearest token must lie within this many token
#: positions of the mention edge (adjacent = 1).
DEFAULT_CUE_WINDOW = 6

MENTION_STAGE = "mention"
CUE_STAGES = ("pre_neg", "post_neg", "uncertain")
STAGES = (MENTION_STAGE, *CUE_STAGES)


@dataclass(frozen=True)
class Cue:
    stage: str
    phrase: str
    tokens: tuple[str, ...]
    window: int | None  # None = sentence-bounded


@dataclass(frozen=True)
class Trigger:
    condition: Condition
    phrase: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Lexicon:
    triggers: tuple[Trigger, ...]
    pre_negation: tuple[Cue, ...]
    post_negation: tuple[Cue, ...]
    uncertainty: tuple[Cue, ...]
    #: first trigger token -> triggers sorted by token length, longest first
    _index: dict[str, list[Trigger]] = field(repr=False, compare=False, default_factory=dict)

    def cues(self, stage: str) -> tuple[Cue, ...]:
        return {
            "pre_neg": self.pre_negation,
            "post_neg": self.post_negation,
            "uncertain": self.uncertainty,
        }[stage]

    def triggers_starting_with(self, token: str) -> list[Trigger]:
        return self._index.get(token, [])

    def conditions_covered(self) -> set[Condition]:
        return {t.condition for t in self.triggers}


def _phrase_tokens(phrase: str, lineno: int, source: str) -> tuple[str, ...]:
    tokens = tuple(t.text for t in tokenize(phrase))
    if not tokens:
        raise LexiconError(f"{source}:{lineno}: phrase {phrase!r} has no word tokens")
    return tokens


def _parse_window(value: str, lineno: int, source: str) -> int | None:
    if not value.startswith("window="):
        raise LexiconError(f"{source}:{lineno}: expected window=<n|sentence>, got {value!r}")
    arg = value[len("window=") :]
    if arg == "sentence":
        return None
    try:
        window = int(arg)
    except ValueError:
        raise LexiconError(f"{source}:{lineno}: bad window value {arg!r}") from None
    if window < 1:
        raise LexiconError(f"{source}:{lineno}: window must be >= 1, got {window}")
    return window


def parse_lexicon(lines: Iterable[str], source: str = "<lexicon>") -> Lexicon:
    triggers: list[Trigger] = []
    cues: dict[str, list[Cue]] = {stage: [] for stage in CUE_STAGES}
    seen_triggers: dict[tuple[str, ...], tuple[Condition, str]] = {}

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (3, 4):
            raise LexiconError(
                f"{source}:{lineno}: expected 3 or 4 tab-separated fields, got {len(fields)}"
            )
        stage, target, phrase = fields[0].strip(), fields[1].strip(), fields[2].strip()
        if stage not in STAGES:
            raise LexiconError(f"{source}:{lineno}: unknown stage {stage!r}")

        if stage == MENTION_STAGE:
            if len(fields) == 4:
                raise LexiconError(f"{source}:{lineno}: mention lines take no window field")
            try:
                condition = condition_from_key(target)
            except ValueError as exc:
                raise LexiconError(f"{source}:{lineno}: {exc}") from None
            if condition is Condition.NO_FINDING:
                raise LexiconError(
                    f"{source}:{lineno}: {Condition.NO_FINDING.value} is derived, "
                    "never a lexicon target"
                )
            tokens = _phrase_tokens(phrase, lineno, source)
            if tokens in seen_triggers:
                prev_condition, prev_phrase = seen_triggers[tokens]
                raise LexiconError(
                    f"{source}:{lineno}: phrase {phrase!r} already mapped to "
                    f"{prev_condition.value} (as {prev_phrase!r})"
                )
            seen_triggers[tokens] = (condition, phrase)
            triggers.append(Trigger(condition, phrase, tokens))
        else:
            if target != "GLOBAL":
                raise LexiconError(
                    f"{source}:{lineno}: cue stage {stage!r} requires GLOBAL, got {target!r}"
                )
            window: int | None = DEFAULT_CUE_WINDOW
            if len(fields) == 4:
                window = _parse_window(fields[3].strip(), lineno, source)
            tokens = _phrase_tokens(phrase, lineno, source)
            cues[stage].append(Cue(stage, phrase, tokens, window))

    trigger_tokens = set(seen_triggers)
    for stage in CUE_STAGES:
        for cue in cues[stage]:
            if cue.tokens in trigger_tokens:
                raise LexiconError(
                    f"{source}: cue {cue.phrase!r} ({stage}) collides with a trigger phrase"
                )

    index: dict[str, list[Trigger]] = {}
    for trigger in triggers:
        index.setdefault(trigger.tokens[0], []).append(trigger)
    for bucket in index.values():
        bucket.sort(key=lambda t: len(t.tokens), reverse=True)

    return Lexicon(
        triggers=tuple(triggers),
        pre_negation=tuple(cues["pre_neg"]),
        post_negation=tuple(cues["post_neg"]),
        uncertainty=tuple(cues["uncertain"]),
        _index=index,
    )


def load_lexicon(path: str | Path) -> Lexicon:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon file {path}: {exc}") from exc
    return parse_lexicon(text.splitlines(), source=str(path))


def default_lexicon() -> Lexicon:
    """The bundled English lexicon covering all 13 conditions."""
    resource = importlib.resources.files("cxrtriage").joinpath("data/default_lexicon.tsv")
    return parse_lexicon(resource.read_text(encoding="utf-8").splitlines(), source="default")
