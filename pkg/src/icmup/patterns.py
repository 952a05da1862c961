"""Atomic symbols, patterns, pattern stores, and the shared bit-cost model.

Costs are fractional "ideal" bits throughout: a symbol over an alphabet of
size A costs log2(A) bits (1 bit for the degenerate A=1 alphabet), and a
stored pattern's code costs -log2(f/F) bits where f is its frequency and F
the store total.  The raw baseline is deliberately model-free (fixed-length,
no frequency weighting) so compression differences are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateAlphabet, InputFormatError, UnknownPattern

TOKENIZE_MODES = ("whitespace", "chars")


@dataclass(frozen=True, slots=True, order=True)
class SPSymbol:
    """One atomic token.  Two symbols are equal iff their texts are identical."""

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("symbol text must be non-empty")
        if any(ch.isspace() for ch in self.text):
            raise ValueError(f"symbol text may not contain whitespace: {self.text!r}")

    def __str__(self) -> str:
        return self.text


class PatternKind(Enum):
    NEW = "New"
    OLD = "Old"


@dataclass(frozen=True, slots=True)
class SPPattern:
    """An ordered, non-empty sequence of symbols with an id and a frequency."""

    id: str
    symbols: tuple[SPSymbol, ...]
    frequency: int = 1
    kind: PatternKind = PatternKind.OLD

    def __post_init__(self):
        if not self.id:
            raise ValueError("pattern id must be non-empty")
        if not self.symbols:
            raise ValueError(f"pattern {self.id!r} has no symbols")
        if self.frequency < 1:
            raise ValueError(f"pattern {self.id!r} frequency must be >= 1")
        object.__setattr__(self, "symbols", tuple(self.symbols))

    @classmethod
    def from_text(cls, id: str, text: str, *, frequency: int = 1,
                  kind: PatternKind = PatternKind.OLD,
                  mode: str = "whitespace") -> "SPPattern":
        return cls(id, tuple(tokenize(text, mode)), frequency, kind)

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(s.text for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def render(self) -> str:
        return render(self.symbols)


def tokenize(text: str, mode: str = "whitespace") -> list[SPSymbol]:
    """Split text into symbols: on whitespace runs, or one symbol per
    non-whitespace character.  Empty input yields an empty list."""
    if mode not in TOKENIZE_MODES:
        raise ValueError(f"unknown tokenize mode {mode!r}")
    if mode == "whitespace":
        return [SPSymbol(tok) for tok in text.split()]
    return [SPSymbol(ch) for ch in text if not ch.isspace()]


def render(symbols: Iterable[SPSymbol]) -> str:
    """Inverse of whitespace tokenization: single-space-joined symbol texts."""
    return " ".join(s.text for s in symbols)


class PatternStore:
    """An immutable dictionary of Old patterns with a derived alphabet,
    total frequency, and a symbol-to-pattern retrieval index."""

    def __init__(self, patterns: Iterable[SPPattern] = ()):
        by_id: dict[str, SPPattern] = {}
        index: dict[str, set[str]] = {}
        total = 0
        for p in patterns:
            if p.kind is not PatternKind.OLD:
                raise ValueError(f"store accepts Old patterns only, got {p.id!r}")
            if p.id in by_id:
                raise ValueError(f"duplicate pattern id {p.id!r}")
            by_id[p.id] = p
            total += p.frequency
            for s in p.symbols:
                index.setdefault(s.text, set()).add(p.id)
        self._by_id = by_id
        self._index = {t: tuple(sorted(ids)) for t, ids in index.items()}
        self.alphabet: frozenset[str] = frozenset(index)
        self.total_frequency: int = total

    def get(self, pattern_id: str) -> SPPattern:
        try:
            return self._by_id[pattern_id]
        except KeyError:
            raise UnknownPattern(f"no pattern with id {pattern_id!r}") from None

    def ids(self) -> list[str]:
        return sorted(self._by_id)

    def patterns_containing(self, text: str) -> tuple[str, ...]:
        return self._index.get(text, ())

    def __contains__(self, pattern_id: str) -> bool:
        return pattern_id in self._by_id

    def __iter__(self) -> Iterator[SPPattern]:
        for pid in self.ids():
            yield self._by_id[pid]

    def __len__(self) -> int:
        return len(self._by_id)


def symbol_cost_bits(alphabet_size: int) -> float:
    """Fixed-length cost of one symbol: log2(A) bits, floored at 1 bit for A=1."""
    if alphabet_size <= 0:
        raise DegenerateAlphabet("alphabet size must be >= 1")
    if alphabet_size == 1:
        return 1.0
    return math.log2(alphabet_size)


def code_cost_bits(frequency: int, total_frequency: int) -> float:
    """Ideal code length -log2(f/F) for a pattern of frequency f in a store
    totalling F.  Zero iff the pattern is the store's only mass."""
    if frequency < 1 or total_frequency < frequency:
        raise ValueError("need 1 <= frequency <= total_frequency")
    return -math.log2(frequency / total_frequency)


def raw_cost(pattern: SPPattern | Sequence[SPSymbol], alphabet_size: int) -> float:
    """Length times per-symbol cost under the fixed-length baseline."""
    return len(pattern) * symbol_cost_bits(alphabet_size)


def code_cost(pattern_id: str, store: PatternStore) -> float:
    p = store.get(pattern_id)
    return code_cost_bits(p.frequency, store.total_frequency)


def parse_grammar(text: str) -> PatternStore:
    """Parse the grammar file format, one pattern per line:

        PATTERN <id> <freq>: <sym> <sym> ...

    ``<freq>`` may be omitted (defaults to 1).  Lines starting with ``#`` and
    blank lines are ignored.  Duplicate ids are a load error.
    """
    patterns: list[SPPattern] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not stripped.startswith("PATTERN"):
            raise InputFormatError(f"line {lineno}: expected 'PATTERN', got {stripped.split()[0]!r}")
        head, sep, body = stripped[len("PATTERN"):].partition(":")
        if not sep:
            raise InputFormatError(f"line {lineno}: missing ':' separator")
        fields = head.split()
        if len(fields) == 1:
            pid, freq = fields[0], 1
        elif len(fields) == 2:
            pid = fields[0]
            try:
                freq = int(fields[1])
            except ValueError:
                raise InputFormatError(f"line {lineno}: bad frequency {fields[1]!r}") from None
        else:
            raise InputFormatError(f"line {lineno}: expected '<id> [<freq>]' before ':'")
        if pid in seen:
            raise InputFormatError(f"line {lineno}: duplicate pattern id {pid!r}")
        seen.add(pid)
        syms = body.split()
        if not syms:
            raise InputFormatError(f"line {lineno}: pattern {pid!r} has no symbols")
        if freq < 1:
            raise InputFormatError(f"line {lineno}: frequency must be >= 1")
        patterns.append(SPPattern(pid, tuple(SPSymbol(s) for s in syms), freq))
    return PatternStore(patterns)


def load_grammar(path: str) -> PatternStore:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())
