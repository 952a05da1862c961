"""Multiple-alignment engine: encode a driving (New) pattern economically
against stored (Old) patterns.

An alignment is a column arrangement: each column holds occurrences of one
symbol text from one or more rows, every symbol occurrence lands in exactly
one column, and each row's occurrences appear in their original order.  A
column occupied by two or more rows is a hit.  Alignments are scored by
compression difference: the fixed-length cost of the driving pattern minus
the cost of encoding it (code costs for the Old rows used, plus fixed-length
costs for driving symbols left unmatched).  Old-row symbols in non-hit
columns cost nothing - they are the predictions a partial match licenses.

Search is a deterministic beam search.  Candidates are extended by aligning
a further stored pattern against the still-unmatched columns (driving or
Old), which is what lets bracketing service symbols chain upward through
grammar-like stores.  Ranking ties break by fewer rows, then the Old-id
sequence, so results never depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import EmptyRanking
from .patterns import (PatternStore, SPPattern, SPSymbol, code_cost,
                       raw_cost, symbol_cost_bits)


@dataclass(frozen=True, slots=True)
class Column:
    """One alignment column: a symbol text plus (row, position) occupants.

    Row 0 is the driving row; rows 1..n are Old rows in placement order.
    """

    symbol: str
    entries: tuple[tuple[int, int], ...]

    @property
    def is_hit(self) -> bool:
        return len(self.entries) >= 2

    def rows(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.entries)


@dataclass(frozen=True)
class Alignment:
    new_row: SPPattern
    old_rows: tuple[SPPattern, ...]
    columns: tuple[Column, ...]
    encoding_cost: float
    compression_difference: float

    def hit_count(self) -> int:
        return sum(1 for c in self.columns if c.is_hit)

    def new_hit_positions(self) -> set[int]:
        """Driving-row positions that sit in hit columns."""
        out = set()
        for col in self.columns:
            if col.is_hit:
                for r, pos in col.entries:
                    if r == 0:
                        out.add(pos)
        return out

    def row_label(self, row_index: int) -> str:
        if row_index == 0:
            return self.new_row.id
        return self.old_rows[row_index - 1].id

    def validate(self) -> None:
        """Assert the structural invariants (used by tests)."""
        rows = [self.new_row] + list(self.old_rows)
        seen: dict[int, list[int]] = {r: [] for r in range(len(rows))}
        for col in self.columns:
            assert col.entries, "empty column"
            for r, pos in col.entries:
                assert rows[r].symbols[pos].text == col.symbol, "column symbol mismatch"
                seen[r].append(pos)
        for r, positions in seen.items():
            assert positions == sorted(positions), f"row {r} out of order"
            assert sorted(positions) == list(range(len(rows[r]))), f"row {r} not partitioned"


def _literal_columns(new: SPPattern) -> tuple[Column, ...]:
    return tuple(Column(s.text, ((0, i),)) for i, s in enumerate(new.symbols))


def _extend_columns(columns: Sequence[Column], pattern: SPPattern,
                    row_index: int) -> tuple[tuple[Column, ...], int]:
    """Merge a further pattern into the column structure as a new row.

    The pattern is matched (maximally, leftmost) against the sequence of
    non-hit columns; matched columns become hits, unmatched pattern symbols
    are inserted as fresh columns adjacent to their nearest anchor.  Returns
    the new columns and the number of matched pairs.
    """
    targets = [(ci, col.symbol) for ci, col in enumerate(columns) if not col.is_hit]
    target_texts = tuple(t for _, t in targets)
    p_texts = pattern.texts
    ids_target, ids_p = kernels.intern_ids(target_texts, p_texts)
    pairs = kernels.match_pairs(ids_target, ids_p)

    hit_at: dict[int, int] = {}
    insert_before: dict[int, list[int]] = {}
    insert_after: dict[int, list[int]] = {}
    if pairs:
        anchor_cols = [targets[ti][0] for ti, _ in pairs]
        for (ti, pj), ci in zip(pairs, anchor_cols):
            hit_at[ci] = pj
        first_pj = pairs[0][1]
        insert_before[anchor_cols[0]] = list(range(0, first_pj))
        for k in range(1, len(pairs)):
            prev_pj = pairs[k - 1][1]
            cur_pj = pairs[k][1]
            insert_before.setdefault(anchor_cols[k], []).extend(
                range(prev_pj + 1, cur_pj))
        last_pj = pairs[-1][1]
        insert_after[anchor_cols[-1]] = list(range(last_pj + 1, len(p_texts)))
    else:
        # nothing matched: the whole pattern trails the existing columns
        insert_after[len(columns) - 1] = list(range(len(p_texts)))

    out: list[Column] = []
    for ci, col in enumerate(columns):
        for pj in insert_before.get(ci, ()):
            out.append(Column(p_texts[pj], ((row_index, pj),)))
        if ci in hit_at:
            col = Column(col.symbol, col.entries + ((row_index, hit_at[ci]),))
        out.append(col)
        for pj in insert_after.get(ci, ()):
            out.append(Column(p_texts[pj], ((row_index, pj),)))
    return tuple(out), len(pairs)


def _unmatched_new_count(new: SPPattern, columns: Sequence[Column]) -> int:
    hit = 0
    for col in columns:
        if col.is_hit:
            hit += sum(1 for r, _ in col.entries if r == 0)
    return len(new) - hit


def encoding_cost(al: Alignment, store: PatternStore, alphabet_size: int) -> float:
    """Code costs of the Old rows used, plus fixed-length costs of driving
    symbols in non-hit columns.  Old-row symbols in non-hit columns are free
    (predicted content)."""
    cost = sum(code_cost(row.id, store) for row in al.old_rows)
    cost += _unmatched_new_count(al.new_row, al.columns) * symbol_cost_bits(alphabet_size)
    return cost


def default_alphabet(new: SPPattern, store: PatternStore | None = None) -> int:
    texts = set(new.texts)
    if store is not None:
        texts |= store.alphabet
    return max(len(texts), 1)


def _build(new: SPPattern, old_rows: tuple[SPPattern, ...],
           columns: tuple[Column, ...], store: PatternStore | None,
           alphabet_size: int) -> Alignment:
    if store is None:
        cost = _unmatched_new_count(new, columns) * symbol_cost_bits(alphabet_size)
    else:
        cost = (sum(code_cost(r.id, store) for r in old_rows)
                + _unmatched_new_count(new, columns) * symbol_cost_bits(alphabet_size))
    cd = raw_cost(new, alphabet_size) - cost
    return Alignment(new, old_rows, columns, cost, cd)


def literal_alignment(new: SPPattern, store: PatternStore | None = None,
                      alphabet_size: int | None = None) -> Alignment:
    """The no-Old-rows floor: every driving symbol in its own column, CD 0."""
    alphabet_size = alphabet_size or default_alphabet(new, store)
    return _build(new, (), _literal_columns(new), store, alphabet_size)


def align_pair(a: SPPattern, b: SPPattern,
               alphabet_size: int | None = None) -> Alignment:
    """Two-row alignment maximising hit columns, leftmost on ties.

    The hit count equals the longest-common-subsequence length of the two
    symbol sequences.  Standalone pairwise costing treats ``b`` as the sole
    stored pattern, so its code is free and CD is the matched symbol mass.
    """
    if alphabet_size is None:
        alphabet_size = max(len(set(a.texts) | set(b.texts)), 1)
    columns, _ = _extend_columns(_literal_columns(a), b, row_index=1)
    return _build(a, (b,), columns, None, alphabet_size)


def compose_alignment(new: SPPattern, row_patterns: Sequence[SPPattern],
                      store: PatternStore,
                      alphabet_size: int | None = None) -> Alignment:
    """Build an alignment with an explicit Old-row order (no search)."""
    alphabet_size = alphabet_size or default_alphabet(new, store)
    columns = _literal_columns(new)
    rows: tuple[SPPattern, ...] = ()
    for pattern in row_patterns:
        columns, _ = _extend_columns(columns, pattern, row_index=len(rows) + 1)
        rows = rows + (pattern,)
    return _build(new, rows, columns, store, alphabet_size)


def _signature(al: Alignment):
    return (tuple(r.id for r in al.old_rows),
            tuple((c.symbol, c.entries) for c in al.columns))


def _rank_key(al: Alignment):
    return (-al.compression_difference, len(al.old_rows),
            tuple(r.id for r in al.old_rows), _signature(al))


@dataclass(frozen=True)
class AlignmentRanking:
    alignments: tuple[Alignment, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        assert len(self.alignments) == len(self.probabilities)

    @property
    def best(self) -> Alignment:
        return self.alignments[0]


def alignment_probabilities(alignments: Sequence[Alignment]) -> list[float]:
    """Relative probabilities 2^(-cost), normalised over the given list."""
    if not alignments:
        raise EmptyRanking("no alignments to assign probabilities to")
    costs = [al.encoding_cost for al in alignments]
    cmin = min(costs)
    weights = [2.0 ** (cmin - c) for c in costs]
    total = sum(weights)
    return [w / total for w in weights]


def build_alignments(new: SPPattern, store: PatternStore, beam: int = 50,
                     max_old_rows: int = 12,
                     alphabet_size: int | None = None) -> AlignmentRanking:
    """Beam search over alignments of ``new`` against the store.

    Seeds with the literal alignment plus every single-row pairwise
    alignment, then repeatedly extends beam members with further stored
    patterns matched against their unmatched columns.  Deterministic: the
    ranking is independent of candidate arrival order.
    """
    if beam < 1:
        raise ValueError("beam must be >= 1")
    if max_old_rows < 0:
        raise ValueError("max_old_rows must be >= 0")
    alphabet_size = alphabet_size or default_alphabet(new, store)

    def extend(al: Alignment, pattern: SPPattern) -> Alignment | None:
        columns, hits = _extend_columns(al.columns, pattern,
                                        row_index=len(al.old_rows) + 1)
        if hits == 0:
            return None
        return _build(new, al.old_rows + (pattern,), columns, store, alphabet_size)

    literal = literal_alignment(new, store, alphabet_size)
    kept: dict = {_signature(literal): literal}
    expanded: set = set()
    while True:
        ranked = sorted(kept.values(), key=_rank_key)[:beam]
        kept = {_signature(al): al for al in ranked}
        frontier = [al for al in ranked
                    if _signature(al) not in expanded
                    and len(al.old_rows) < max_old_rows]
        if not frontier:
            break
        for al in frontier:
            expanded.add(_signature(al))
            for pid in store.ids():
                ext = extend(al, store.get(pid))
                if ext is not None:
                    kept.setdefault(_signature(ext), ext)

    ranked = sorted(kept.values(), key=_rank_key)[:beam]
    probs = alignment_probabilities(ranked)
    return AlignmentRanking(tuple(ranked), tuple(probs))


def infer_unmatched(al: Alignment) -> list[tuple[str, SPSymbol]]:
    """Old-row symbols in non-hit columns, in column order: the content the
    partial match predicts."""
    out: list[tuple[str, SPSymbol]] = []
    for col in al.columns:
        if col.is_hit:
            continue
        for r, pos in col.entries:
            if r >= 1:
                row = al.old_rows[r - 1]
                out.append((row.id, row.symbols[pos]))
    return out


def retrieve(query: SPPattern, store: PatternStore,
             k: int) -> list[tuple[str, float]]:
    """Top-k stored patterns by pairwise compression difference against the
    query, with store code costs; ties break by id."""
    if k < 1:
        raise ValueError("k must be >= 1")
    alphabet_size = default_alphabet(query, store)
    per_symbol = symbol_cost_bits(alphabet_size)
    raw = raw_cost(query, alphabet_size)
    scored: list[tuple[str, float]] = []
    for pid in store.ids():
        al = align_pair(query, store.get(pid), alphabet_size)
        unmatched = len(query) - len(al.new_hit_positions())
        cd = raw - (code_cost(pid, store) + unmatched * per_symbol)
        scored.append((pid, cd))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


def parse_render(al: Alignment) -> str:
    """Bracketed constituent rendering: each Old row wraps the column span it
    occupies, nested by containment; non-hit symbols appear bare."""
    spans: dict[int, tuple[int, int]] = {}
    for r in range(1, len(al.old_rows) + 1):
        cols = [ci for ci, col in enumerate(al.columns)
                if any(entry[0] == r for entry in col.entries)]
        spans[r] = (cols[0], cols[-1])
    opens: dict[int, list[int]] = {}
    for r, (start, end) in spans.items():
        opens.setdefault(start, []).append(r)
    for start in opens:
        opens[start].sort(key=lambda r: (-spans[r][1], r))
    tokens: list[str] = []
    stack: list[int] = []
    for ci, col in enumerate(al.columns):
        for r in opens.get(ci, ()):
            tokens.append(f"{al.old_rows[r - 1].id}(")
            stack.append(r)
        tokens.append(col.symbol)
        while stack and spans[stack[-1]][1] <= ci:
            stack.pop()
            tokens.append(")")
    return " ".join(tokens)


def dump_columns(al: Alignment) -> str:
    """Stable column-per-line dump: index, symbol, contributing row ids."""
    lines = []
    for ci, col in enumerate(al.columns):
        labels = ",".join(al.row_label(r) for r, _ in sorted(col.entries))
        lines.append(f"{ci}\t{col.symbol}\t{labels}")
    return "\n".join(lines)
