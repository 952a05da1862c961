"""Match-and-unify execution of function tables, NAND-only circuits, and a
transition-table tape machine.

Table evaluation selects the row with the most matched input cells and only
answers when that maximum is unique and complete - the same selection rule
drives gate evaluation (every gate is a lookup in the four-row NAND table)
and tape-machine transitions, so no primitive boolean operator appears
anywhere in the execution path.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (ArityMismatch, InputFormatError, MissingInput, NoMatch,
                     TooLarge)
from .patterns import SPSymbol

MAX_TABLE_INPUTS = 16


@dataclass(frozen=True)
class FunctionTable:
    """A named input/output table; deterministic (input tuples are unique)."""

    name: str
    input_cols: tuple[str, ...]
    output_cols: tuple[str, ...]
    rows: tuple[tuple[tuple[SPSymbol, ...], tuple[SPSymbol, ...]], ...]

    def __post_init__(self):
        seen = set()
        for inputs, outputs in self.rows:
            if len(inputs) != len(self.input_cols):
                raise ValueError(f"table {self.name!r}: row input arity mismatch")
            if len(outputs) != len(self.output_cols):
                raise ValueError(f"table {self.name!r}: row output arity mismatch")
            key = tuple(s.text for s in inputs)
            if key in seen:
                raise ValueError(f"table {self.name!r}: duplicate input row {key}")
            seen.add(key)

    @property
    def arity(self) -> int:
        return len(self.input_cols)


@dataclass(frozen=True)
class RowSelection:
    """Diagnostics from row selection: per-row match counts and the winner."""

    match_counts: tuple[int, ...]
    best_row: int | None
    full_match: bool


def score_rows(table: FunctionTable, inputs: Sequence[SPSymbol]) -> RowSelection:
    """Count cell matches per row; the winner must be unique and complete."""
    if len(inputs) != table.arity:
        raise ArityMismatch(
            f"table {table.name!r} takes {table.arity} inputs, got {len(inputs)}")
    texts = [s.text for s in inputs]
    counts = []
    for row_inputs, _ in table.rows:
        counts.append(sum(1 for given, cell in zip(texts, row_inputs)
                          if given == cell.text))
    if not counts:
        return RowSelection((), None, False)
    best = max(counts)
    winners = [i for i, c in enumerate(counts) if c == best]
    unique_full = best == table.arity and len(winners) == 1
    return RowSelection(tuple(counts), winners[0], unique_full)


def eval_table(table: FunctionTable,
               inputs: Sequence[SPSymbol]) -> tuple[SPSymbol, ...]:
    """Outputs of the single row matching every input cell."""
    selection = score_rows(table, inputs)
    if not selection.full_match:
        raise NoMatch(
            f"table {table.name!r} has no row fully matching "
            f"({', '.join(s.text for s in inputs)})")
    return table.rows[selection.best_row][1]


def _sym(value) -> SPSymbol:
    if isinstance(value, SPSymbol):
        return value
    return SPSymbol(str(value))


def _bit_row(bits: Iterable, out_bits: Iterable):
    return (tuple(_sym(b) for b in bits), tuple(_sym(b) for b in out_bits))


NAND_TABLE = FunctionTable(
    "NAND",
    ("a", "b"),
    ("out",),
    (
        _bit_row((1, 1), (0,)),
        _bit_row((1, 0), (1,)),
        _bit_row((0, 1), (1,)),
        _bit_row((0, 0), (1,)),
    ),
)


@dataclass(frozen=True, slots=True)
class Gate:
    id: str
    source_a: str
    source_b: str


@dataclass(frozen=True)
class NandCircuit:
    """NAND gates over named input terminals, sources defined before use."""

    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        defined = set(self.inputs)
        if len(defined) != len(self.inputs):
            raise ValueError("duplicate input terminal names")
        for gate in self.gates:
            if gate.id in defined:
                raise ValueError(f"duplicate name {gate.id!r}")
            for src in (gate.source_a, gate.source_b):
                if src not in defined:
                    raise ValueError(f"gate {gate.id!r} uses undefined source {src!r}")
            defined.add(gate.id)
        for out in self.outputs:
            if out not in defined:
                raise ValueError(f"output {out!r} is not a gate or terminal")


def eval_circuit(circuit: NandCircuit,
                 inputs: Mapping[str, object]) -> dict[str, str]:
    """Evaluate gates in order, each via a NAND-table lookup."""
    values: dict[str, str] = {}
    for terminal in circuit.inputs:
        if terminal not in inputs:
            raise MissingInput(f"no value for input terminal {terminal!r}")
        values[terminal] = _sym(inputs[terminal]).text
    for gate in circuit.gates:
        out = eval_table(NAND_TABLE, (SPSymbol(values[gate.source_a]),
                                      SPSymbol(values[gate.source_b])))
        values[gate.id] = out[0].text
    return {out: values[out] for out in circuit.outputs}


def compile_truth_table(circuit: NandCircuit,
                        name: str = "compiled") -> FunctionTable:
    """Enumerate every input assignment (descending binary order) into a table."""
    n = len(circuit.inputs)
    if n > MAX_TABLE_INPUTS:
        raise TooLarge(f"{n} input terminals exceeds the cap of {MAX_TABLE_INPUTS}")
    rows = []
    for bits in product((1, 0), repeat=n):
        assignment = dict(zip(circuit.inputs, bits))
        result = eval_circuit(circuit, assignment)
        rows.append(_bit_row(bits, (result[out] for out in circuit.outputs)))
    return FunctionTable(name, tuple(circuit.inputs), tuple(circuit.outputs),
                         tuple(rows))


def xor_nand_circuit() -> NandCircuit:
    """Four-gate XOR built only from NAND."""
    return NandCircuit(
        ("a", "b"),
        (
            Gate("g1", "a", "b"),
            Gate("g2", "a", "g1"),
            Gate("g3", "b", "g1"),
            Gate("g4", "g2", "g3"),
        ),
        ("g4",),
    )


def adder_nand_circuit() -> NandCircuit:
    """One-bit adder (sum and carry) built only from NAND."""
    return NandCircuit(
        ("a", "b"),
        (
            Gate("g1", "a", "b"),
            Gate("g2", "a", "g1"),
            Gate("g3", "b", "g1"),
            Gate("g4", "g2", "g3"),   # sum = a XOR b
            Gate("g5", "g1", "g1"),   # carry = a AND b
        ),
        ("g4", "g5"),
    )


TM_ACTIONS = ("W0", "W1", "L", "R")


@dataclass(frozen=True, slots=True)
class TMRow:
    state: str
    read: int
    next_state: str
    action: str

    def __post_init__(self):
        if self.read not in (0, 1):
            raise ValueError("read cell must be 0 or 1")
        if self.action not in TM_ACTIONS:
            raise ValueError(f"unknown action {self.action!r}")


@dataclass(frozen=True)
class TuringMachine:
    rows: tuple[TMRow, ...]

    def __post_init__(self):
        seen = set()
        for row in self.rows:
            key = (row.state, row.read)
            if key in seen:
                raise ValueError(f"duplicate transition for {key}")
            seen.add(key)


@dataclass(frozen=True)
class TapeState:
    """Tape cells (default 0 outside the mapping), head, state, step count."""

    cells: dict[int, int]
    head: int
    state: str
    steps: int = 0

    def read(self, position: int) -> int:
        return self.cells.get(position, 0)


class Halted:
    """Returned by ``tm_step`` when no transition matches: a value, not an error."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "HALTED"


HALTED = Halted()


def tm_step(machine: TuringMachine, state: TapeState) -> "TapeState | Halted":
    """Apply the single transition matching (state, cell at head).

    Lookup is by match counting over the rows, exactly as in table
    evaluation.  Writes leave the head in place; moves leave cells alone.
    """
    read = state.read(state.head)
    best_row = None
    best = -1
    unique = False
    for row in machine.rows:
        count = (row.state == state.state) + (row.read == read)
        if count > best:
            best, best_row, unique = count, row, True
        elif count == best:
            unique = False
    if best_row is None or best < 2 or not unique:
        return HALTED
    cells = state.cells
    head = state.head
    if best_row.action == "W0":
        cells = dict(cells)
        cells[head] = 0
    elif best_row.action == "W1":
        cells = dict(cells)
        cells[head] = 1
    elif best_row.action == "L":
        head -= 1
    else:
        head += 1
    return TapeState(cells, head, best_row.next_state, state.steps + 1)


@dataclass(frozen=True)
class TMRunResult:
    state: TapeState
    halted: bool
    attempts: int  # tm_step calls, including the final one that halted


def tm_run(machine: TuringMachine, tape: Mapping[int, int], head: int,
           start: str, max_steps: int) -> TMRunResult:
    """Iterate ``tm_step`` until it halts or ``max_steps`` steps are taken."""
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    current = TapeState(dict(tape), head, start, steps=0)
    attempts = 0
    while attempts < max_steps:
        attempts += 1
        nxt = tm_step(machine, current)
        if nxt is HALTED:
            return TMRunResult(current, True, attempts)
        current = nxt
    return TMRunResult(current, False, attempts)


def unary_successor_machine() -> TuringMachine:
    """Scan right over a block of 1s, append a 1, return to its start.

    Run on a zero-delimited block of n ones starting at the leftmost 1, it
    halts (in state s2) on a block of n+1 ones.
    """
    return TuringMachine((
        TMRow("s0", 1, "s0", "R"),
        TMRow("s0", 0, "s1", "W1"),
        TMRow("s1", 1, "s1", "L"),
        TMRow("s1", 0, "s2", "R"),
    ))


def parse_table(text: str, name: str = "table") -> FunctionTable:
    """Parse the tab-separated table format: a header row of ``in:<name>``
    then ``out:<name>`` columns, one data row per following line."""
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputFormatError("table file is empty")
    header = lines[0].split("\t")
    input_cols: list[str] = []
    output_cols: list[str] = []
    for cell in header:
        cell = cell.strip()
        if cell.startswith("in:"):
            if output_cols:
                raise InputFormatError("in: columns must precede out: columns")
            input_cols.append(cell[3:])
        elif cell.startswith("out:"):
            output_cols.append(cell[4:])
        else:
            raise InputFormatError(f"bad header cell {cell!r}")
    if not input_cols or not output_cols:
        raise InputFormatError("table needs at least one in: and one out: column")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split("\t")]
        if len(cells) != len(input_cols) + len(output_cols):
            raise InputFormatError(f"line {lineno}: expected "
                                   f"{len(input_cols) + len(output_cols)} cells")
        try:
            rows.append((tuple(SPSymbol(c) for c in cells[:len(input_cols)]),
                         tuple(SPSymbol(c) for c in cells[len(input_cols):])))
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: {exc}") from None
    try:
        return FunctionTable(name, tuple(input_cols), tuple(output_cols),
                             tuple(rows))
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None


def load_table(path: str, name: str | None = None) -> FunctionTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read(), name or path)


def parse_tm(text: str) -> TuringMachine:
    """Parse the transition format: ``<state> <read> -> <next> <W0|W1|L|R>``."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        head, sep, tail = stripped.partition("->")
        if not sep:
            raise InputFormatError(f"line {lineno}: missing '->'")
        left = head.split()
        right = tail.split()
        if len(left) != 2 or len(right) != 2:
            raise InputFormatError(
                f"line {lineno}: expected '<state> <read> -> <next> <action>'")
        if left[1] not in ("0", "1"):
            raise InputFormatError(f"line {lineno}: read cell must be 0 or 1")
        if right[1] not in TM_ACTIONS:
            raise InputFormatError(f"line {lineno}: unknown action {right[1]!r}")
        rows.append(TMRow(left[0], int(left[1]), right[0], right[1]))
    try:
        return TuringMachine(tuple(rows))
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None


def load_tm(path: str) -> TuringMachine:
    with open(path, encoding="utf-8") as fh:
        return parse_tm(fh.read())


def parse_circuit(text: str) -> NandCircuit:
    """Parse the circuit format: ``input <name>``, ``gate <id> <a> <b>``,
    ``output <id>`` lines in any order consistent with define-before-use."""
    inputs: list[str] = []
    gates: list[Gate] = []
    outputs: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if parts[0] == "input" and len(parts) == 2:
            inputs.append(parts[1])
        elif parts[0] == "gate" and len(parts) == 4:
            gates.append(Gate(parts[1], parts[2], parts[3]))
        elif parts[0] == "output" and len(parts) == 2:
            outputs.append(parts[1])
        else:
            raise InputFormatError(f"line {lineno}: bad circuit line {stripped!r}")
    try:
        return NandCircuit(tuple(inputs), tuple(gates), tuple(outputs))
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None


def load_circuit(path: str) -> NandCircuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())
