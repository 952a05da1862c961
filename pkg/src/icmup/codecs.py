"""Executable codecs: repeated-chunk unification, chunking-with-codes,
run-length coding, and schema-plus-correction.

Chunk discovery and encoding are deterministic by construction: occurrence
counting is non-overlapping and left-to-right, discovery is greedy
longest-first, and encoding takes the longest dictionary match at each
position (ties broken by discovery order).  Chunk and run codecs are
lossless; plain unification deliberately is not (it discards positions).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

from .errors import (BadCorrection, InputFormatError, NoSchemaMatch,
                     NotDecodable, NotPresent, UnknownCode)
from .patterns import (PatternStore, SPPattern, SPSymbol, code_cost_bits,
                       symbol_cost_bits)


@dataclass(frozen=True, slots=True)
class ChunkEntry:
    code: str
    chunk: SPPattern
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"chunk {self.code!r} must occur at least twice")
        if len(self.chunk) < 2:
            raise ValueError(f"chunk {self.code!r} must span at least two symbols")


class ChunkDictionary:
    """Discovered chunks with their codes and occurrence counts."""

    def __init__(self, entries: Sequence[ChunkEntry] = ()):
        self.entries = tuple(entries)
        by_code: dict[str, ChunkEntry] = {}
        for e in self.entries:
            if e.code in by_code:
                raise ValueError(f"duplicate chunk code {e.code!r}")
            by_code[e.code] = e
        self._by_code = by_code

    def get(self, code: str) -> ChunkEntry:
        try:
            return self._by_code[code]
        except KeyError:
            raise UnknownCode(f"no chunk with code {code!r}") from None

    def __contains__(self, code: str) -> bool:
        return code in self._by_code

    def __iter__(self) -> Iterator[ChunkEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def as_store(self) -> PatternStore:
        """View the dictionary as a pattern store (code = id, count = frequency)."""
        return PatternStore(
            SPPattern(e.code, e.chunk.symbols, frequency=e.count) for e in self.entries
        )


@dataclass(frozen=True, slots=True)
class CodeRef:
    code: str


@dataclass(frozen=True, slots=True)
class Literal:
    symbol: SPSymbol


Token = Union[CodeRef, Literal]


@dataclass(frozen=True)
class EncodedStream:
    dictionary: ChunkDictionary
    tokens: tuple[Token, ...]


def _occurrences(texts: Sequence[str], gram: tuple[str, ...],
                 claimed: Sequence[bool]) -> list[int]:
    """Non-overlapping left-to-right occurrence starts, skipping claimed cells."""
    n = len(gram)
    occs = []
    pos = 0
    while pos + n <= len(texts):
        if (not any(claimed[pos:pos + n])
                and tuple(texts[pos:pos + n]) == gram):
            occs.append(pos)
            pos += n
        else:
            pos += 1
    return occs


def expected_count(gram: Sequence[str], corpus_freq: Mapping[str, int],
                   corpus_len: int) -> float:
    """Expected occurrences of the n-gram under a zero-order symbol model."""
    n = len(gram)
    if corpus_len < n:
        return 0.0
    p = 1.0
    for t in gram:
        p *= corpus_freq.get(t, 0) / corpus_len
    return (corpus_len - n + 1) * p


def _longest_repeat(texts: Sequence[str], start: int) -> int:
    """Largest n <= len/2 at which some n-gram still occurs twice (counting
    overlaps); an upper bound for useful chunk lengths."""
    limit = len(texts) // 2
    n = start - 1
    while n < limit:
        counts = Counter(tuple(texts[i:i + n + 1])
                         for i in range(len(texts) - n))
        if not counts or max(counts.values()) < 2:
            return n
        n += 1
    return n


def discover_chunks(corpus: Sequence[SPSymbol], min_len: int = 2,
                    min_count: int = 2) -> ChunkDictionary:
    """Find maximal repeated contiguous chunks worth a dictionary entry.

    A chunk is kept when its non-overlapping occurrence count is at least
    ``min_count`` and exceeds the count expected by chance under a zero-order
    model of the corpus.  Search is greedy longest-first; accepted
    occurrences are claimed so shorter chunks cannot reuse their cells.
    Codes are assigned ``w1, w2, ...`` in discovery order.  Discovery is
    single-pass: the residue is not re-scanned for second-order chunks built
    out of codes.
    """
    if min_len < 2 or min_count < 2:
        raise ValueError("min_len and min_count must both be >= 2")
    texts = [s.text for s in corpus]
    length = len(texts)
    freq = Counter(texts)
    claimed = [False] * length
    entries: list[ChunkEntry] = []
    for n in range(_longest_repeat(texts, min_len), min_len - 1, -1):
        # overlap-counting totals bound the non-overlapping counts from above
        naive = Counter(tuple(texts[i:i + n]) for i in range(length - n + 1))
        if max(naive.values()) < min_count:
            continue
        rejected: set[tuple[str, ...]] = set()
        pos = 0
        while pos + n <= length:
            if any(claimed[pos:pos + n]):
                pos += 1
                continue
            gram = tuple(texts[pos:pos + n])
            if gram in rejected or naive[gram] < min_count:
                pos += 1
                continue
            occs = _occurrences(texts, gram, claimed)
            if len(occs) >= min_count and len(occs) > expected_count(gram, freq, length):
                code = f"w{len(entries) + 1}"
                chunk = SPPattern(code, tuple(SPSymbol(t) for t in gram))
                entries.append(ChunkEntry(code, chunk, len(occs)))
                for start in occs:
                    for k in range(start, start + n):
                        claimed[k] = True
                pos += n
            else:
                rejected.add(gram)
                pos += 1
    return ChunkDictionary(entries)


def unify_basic(corpus: Sequence[SPSymbol],
                chunk: SPPattern) -> tuple[SPPattern, list[SPSymbol]]:
    """Merge every occurrence of ``chunk`` into one pattern carrying the count.

    Lossy on purpose: the residue no longer records where the occurrences
    were.  Occurrence counting is non-overlapping, left to right.
    """
    gram = chunk.texts
    n = len(gram)
    residue: list[SPSymbol] = []
    count = 0
    pos = 0
    while pos < len(corpus):
        window = tuple(s.text for s in corpus[pos:pos + n])
        if window == gram:
            count += 1
            pos += n
        else:
            residue.append(corpus[pos])
            pos += 1
    if count == 0:
        raise NotPresent(f"chunk {chunk.id!r} does not occur in the corpus")
    unified = SPPattern(chunk.id, chunk.symbols, frequency=count)
    return unified, residue


def chunk_encode(corpus: Sequence[SPSymbol],
                 dictionary: ChunkDictionary) -> EncodedStream:
    """Replace chunk occurrences by code references, longest match first."""
    ordered = sorted(enumerate(dictionary),
                     key=lambda pair: (-len(pair[1].chunk), pair[0]))
    tokens: list[Token] = []
    pos = 0
    while pos < len(corpus):
        for _, entry in ordered:
            gram = entry.chunk.texts
            n = len(gram)
            if tuple(s.text for s in corpus[pos:pos + n]) == gram:
                tokens.append(CodeRef(entry.code))
                pos += n
                break
        else:
            tokens.append(Literal(corpus[pos]))
            pos += 1
    return EncodedStream(dictionary, tuple(tokens))


def chunk_decode(stream: EncodedStream) -> list[SPSymbol]:
    out: list[SPSymbol] = []
    for tok in stream.tokens:
        if isinstance(tok, CodeRef):
            out.extend(stream.dictionary.get(tok.code).chunk.symbols)
        else:
            out.append(tok.symbol)
    return out


def encoded_cost_bits(stream: EncodedStream, alphabet_size: int) -> float:
    """Fractional-bit cost of a stream: code costs for references (dictionary
    counts as frequencies) plus fixed-length costs for literals."""
    total_freq = sum(e.count for e in stream.dictionary)
    cost = 0.0
    per_symbol = symbol_cost_bits(alphabet_size) if stream.tokens else 0.0
    for tok in stream.tokens:
        if isinstance(tok, CodeRef):
            cost += code_cost_bits(stream.dictionary.get(tok.code).count, total_freq)
        else:
            cost += per_symbol
    return cost


class Unbounded:
    """Display-only repetition marker: the run repeats, end unstated."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"


UNBOUNDED = Unbounded()


@dataclass(frozen=True)
class Run:
    pattern: SPPattern
    count: "int | Unbounded"

    def __post_init__(self):
        if isinstance(self.count, int) and self.count < 1:
            raise ValueError("run count must be >= 1")


def rle_encode(seq: Sequence[SPSymbol]) -> list[Run]:
    """Detect immediately repeated blocks, maximal munch.

    At each position the candidate block maximises the munched span
    (block length x repeat count); span ties go to the longest block, then
    the greatest count.  Positions with no repeated block become single-symbol
    runs of count 1.
    """
    texts = [s.text for s in seq]
    runs: list[Run] = []
    i = 0
    ridx = 1
    while i < len(seq):
        rem = len(seq) - i
        best = None  # (span, block_len, count)
        for b in range(1, rem // 2 + 1):
            block = texts[i:i + b]
            c = 1
            while texts[i + c * b:i + (c + 1) * b] == block:
                c += 1
            if c >= 2:
                cand = (b * c, b, c)
                if best is None or cand > best:
                    best = cand
        if best is None:
            block_len, count = 1, 1
        else:
            _, block_len, count = best
        pattern = SPPattern(f"r{ridx}", tuple(seq[i:i + block_len]))
        runs.append(Run(pattern, count))
        ridx += 1
        i += block_len * count
    return runs


def rle_decode(runs: Sequence[Run]) -> list[SPSymbol]:
    out: list[SPSymbol] = []
    for run in runs:
        if not isinstance(run.count, int):
            raise NotDecodable(f"run {run.pattern.id!r} has an unbounded count")
        out.extend(run.pattern.symbols * run.count)
    return out


@dataclass(frozen=True, slots=True)
class FixedSymbol:
    symbol: SPSymbol


@dataclass(frozen=True)
class Slot:
    name: str
    fillers: tuple[tuple[str, SPPattern], ...]  # (code, filler) pairs

    def __post_init__(self):
        codes = [c for c, _ in self.fillers]
        if len(set(codes)) != len(codes):
            raise ValueError(f"slot {self.name!r} has duplicate filler codes")
        bodies = [f.texts for _, f in self.fillers]
        if len(set(bodies)) != len(bodies):
            raise ValueError(f"slot {self.name!r} has fillers with identical symbols")

    def filler(self, code: str) -> SPPattern:
        for c, f in self.fillers:
            if c == code:
                return f
        raise BadCorrection(f"slot {self.name!r} has no filler {code!r}")


SchemaElement = Union[FixedSymbol, Slot]


@dataclass(frozen=True)
class Schema:
    id: str
    elements: tuple[SchemaElement, ...]

    def __post_init__(self):
        names = [e.name for e in self.elements if isinstance(e, Slot)]
        if len(set(names)) != len(names):
            raise ValueError(f"schema {self.id!r} has duplicate slot names")

    @property
    def slot_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.elements if isinstance(e, Slot))


def schema_instantiate(schema: Schema, corrections: Mapping[str, str]) -> SPPattern:
    """Substitute one filler per slot, positionally, around the fixed symbols."""
    unknown = set(corrections) - set(schema.slot_names)
    if unknown:
        raise BadCorrection(f"unknown slots: {sorted(unknown)}")
    symbols: list[SPSymbol] = []
    chosen: list[str] = []
    for element in schema.elements:
        if isinstance(element, FixedSymbol):
            symbols.append(element.symbol)
        else:
            if element.name not in corrections:
                raise BadCorrection(f"slot {element.name!r} has no assignment")
            code = corrections[element.name]
            symbols.extend(element.filler(code).symbols)
            chosen.append(code)
    instance_id = f"{schema.id}({','.join(chosen)})"
    return SPPattern(instance_id, tuple(symbols))


def schema_encode(instance: SPPattern, schema: Schema) -> dict[str, str]:
    """Recover the filler code per slot from an instantiated pattern.

    Backtracking parse; when several fillers could match at a position the
    longest (then lexicographically first code) is preferred, so encoding
    inverts instantiation whenever the schema parses unambiguously.
    """
    texts = instance.texts

    def parse(elem_idx: int, pos: int) -> "dict[str, str] | None":
        if elem_idx == len(schema.elements):
            return {} if pos == len(texts) else None
        element = schema.elements[elem_idx]
        if isinstance(element, FixedSymbol):
            if pos < len(texts) and texts[pos] == element.symbol.text:
                return parse(elem_idx + 1, pos + 1)
            return None
        candidates = sorted(element.fillers,
                            key=lambda cf: (-len(cf[1]), cf[0]))
        for code, filler in candidates:
            body = filler.texts
            if texts[pos:pos + len(body)] == body:
                rest = parse(elem_idx + 1, pos + len(body))
                if rest is not None:
                    return {element.name: code, **rest}
        return None

    result = parse(0, 0)
    if result is None:
        raise NoSchemaMatch(f"instance does not match schema {schema.id!r}")
    return result


def stream_to_json(stream: EncodedStream) -> str:
    """Serialise a chunk stream to the two-section structured-text format."""
    doc = {
        "dictionary": [
            {"code": e.code, "symbols": list(e.chunk.texts), "count": e.count}
            for e in stream.dictionary
        ],
        "stream": [
            {"code": tok.code} if isinstance(tok, CodeRef) else {"lit": tok.symbol.text}
            for tok in stream.tokens
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def stream_from_json(text: str) -> EncodedStream:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"stream file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "dictionary" not in doc or "stream" not in doc:
        raise InputFormatError("stream file needs 'dictionary' and 'stream' sections")
    try:
        entries = [
            ChunkEntry(d["code"],
                       SPPattern(d["code"], tuple(SPSymbol(s) for s in d["symbols"])),
                       int(d["count"]))
            for d in doc["dictionary"]
        ]
        dictionary = ChunkDictionary(entries)
        tokens: list[Token] = []
        for item in doc["stream"]:
            if "code" in item:
                if item["code"] not in dictionary:
                    raise InputFormatError(f"stream references unknown code {item['code']!r}")
                tokens.append(CodeRef(item["code"]))
            elif "lit" in item:
                tokens.append(Literal(SPSymbol(item["lit"])))
            else:
                raise InputFormatError(f"stream token needs 'code' or 'lit': {item!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed stream file: {exc}") from None
    return EncodedStream(dictionary, tuple(tokens))


def runs_to_json(runs: Sequence[Run]) -> str:
    doc = {
        "runs": [
            {"symbols": list(r.pattern.texts),
             "count": r.count if isinstance(r.count, int) else "*"}
            for r in runs
        ]
    }
    return json.dumps(doc, indent=2) + "\n"


def runs_from_json(text: str) -> list[Run]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"runs file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "runs" not in doc:
        raise InputFormatError("runs file needs a 'runs' section")
    out: list[Run] = []
    try:
        for k, item in enumerate(doc["runs"], start=1):
            pattern = SPPattern(f"r{k}", tuple(SPSymbol(s) for s in item["symbols"]))
            count = UNBOUNDED if item["count"] == "*" else int(item["count"])
            out.append(Run(pattern, count))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed runs file: {exc}") from None
    return out


def rle_cost_bits(runs: Sequence[Run], alphabet_size: int) -> float:
    """Cost of a run list: block symbols at fixed length, plus one symbol's
    worth for each repeat count actually recorded (count >= 2)."""
    per_symbol = symbol_cost_bits(alphabet_size)
    cost = 0.0
    for r in runs:
        cost += len(r.pattern) * per_symbol
        if not isinstance(r.count, int) or r.count >= 2:
            cost += per_symbol
    return cost
