"""Multiset/set unification, unary and successor-style numbers, positional
bases, arithmetic with repetition traces, and the falling-body table.

Unary arithmetic makes the repetition structure of the basic operations
explicit: addition is a run of digit transfers, multiplication a run of
additions, powers a run of multiplications, and the traces nest accordingly.
Magnitudes are capped (the expansion is the point, not scalability).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

from .errors import (BadDigit, DivisionByZero, Indeterminate, NonIntegerTerm,
                     NotASet, TooLarge, Underflow)
from .patterns import SPSymbol, symbol_cost_bits, tokenize

UNARY_CAP = 10 ** 6
DIGITS = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def multiset_to_set(elements: Sequence[SPSymbol]) -> list[SPSymbol]:
    """Unify matching elements pairwise; first occurrences keep their order."""
    seen: set[str] = set()
    out: list[SPSymbol] = []
    for el in elements:
        if el.text not in seen:
            seen.add(el.text)
            out.append(el)
    return out


def _require_set(elements: Sequence[SPSymbol], label: str) -> dict[str, SPSymbol]:
    by_text: dict[str, SPSymbol] = {}
    for el in elements:
        if el.text in by_text:
            raise NotASet(f"{label} repeats element {el.text!r}")
        by_text[el.text] = el
    return by_text


def set_union(a: Sequence[SPSymbol], b: Sequence[SPSymbol]) -> list[SPSymbol]:
    """Union by unifying shared elements; output in lexicographic order."""
    left = _require_set(a, "first set")
    right = _require_set(b, "second set")
    merged = {**left, **right}
    return [merged[t] for t in sorted(merged)]


def set_intersection(a: Sequence[SPSymbol],
                     b: Sequence[SPSymbol]) -> list[SPSymbol]:
    """The unified (matched) elements only; output in lexicographic order."""
    left = _require_set(a, "first set")
    right = _require_set(b, "second set")
    return [left[t] for t in sorted(set(left) & set(right))]


@dataclass(frozen=True, slots=True)
class UnaryNumber:
    """A natural number as that many '/' marks."""

    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("unary numbers are naturals")
        if self.count > UNARY_CAP:
            raise TooLarge(f"unary magnitude {self.count} exceeds cap {UNARY_CAP}")

    def render(self) -> str:
        return "/" * self.count


def parse_unary(text: str) -> UnaryNumber:
    if any(ch != "/" for ch in text):
        raise BadDigit("unary numbers contain only '/' marks")
    return UnaryNumber(len(text))


@dataclass(frozen=True, slots=True)
class TraceStep:
    kind: str
    detail: str
    substeps: tuple["TraceStep", ...] = ()


@dataclass(frozen=True)
class OperationTrace:
    operation: str
    steps: tuple[TraceStep, ...]

    @property
    def step_count(self) -> int:
        return len(self.steps)

    def count_kind(self, kind: str) -> int:
        return sum(1 for s in self.steps if s.kind == kind)

    def dump(self, max_lines: int | None = None) -> str:
        """One line per step, depth first: ``<depth> <kind> <detail>``."""
        lines: list[str] = []

        def walk(steps, depth):
            for step in steps:
                if max_lines is not None and len(lines) >= max_lines:
                    return
                lines.append(f"{depth} {step.kind} {step.detail}")
                walk(step.substeps, depth + 1)

        walk(self.steps, 0)
        return "\n".join(lines)


_TRANSFER = TraceStep("transfer", "move one unary digit")
_REMOVE = TraceStep("remove", "remove one unary digit")


def _transfers(n: int) -> tuple[TraceStep, ...]:
    # identical leaf steps share one instance; large runs stay cheap
    return (_TRANSFER,) * n


def unary_add(a: UnaryNumber, b: UnaryNumber) -> tuple[UnaryNumber, OperationTrace]:
    """a + b as b single-digit transfers onto a."""
    result = UnaryNumber(a.count + b.count)
    return result, OperationTrace("add", _transfers(b.count))


def unary_subtract(a: UnaryNumber,
                   b: UnaryNumber) -> tuple[UnaryNumber, OperationTrace]:
    """a - b as b digit removals; naturals only."""
    if b.count > a.count:
        raise Underflow(f"cannot subtract {b.count} from {a.count}")
    result = UnaryNumber(a.count - b.count)
    return result, OperationTrace("subtract", (_REMOVE,) * b.count)


def _add_iteration(addend: int, acc_before: int) -> TraceStep:
    return TraceStep("add-iteration",
                     f"add {addend} to {acc_before}",
                     _transfers(addend))


def unary_multiply(a: UnaryNumber,
                   b: UnaryNumber) -> tuple[UnaryNumber, OperationTrace]:
    """a x b as b additions of a, starting from zero: repetition on two levels."""
    if a.count * b.count > UNARY_CAP:
        raise TooLarge(f"product {a.count * b.count} exceeds cap {UNARY_CAP}")
    steps = []
    acc = 0
    for _ in range(b.count):
        steps.append(_add_iteration(a.count, acc))
        acc += a.count
    return UnaryNumber(acc), OperationTrace("multiply", tuple(steps))


def unary_divide(a: UnaryNumber, b: UnaryNumber
                 ) -> tuple[UnaryNumber, UnaryNumber, OperationTrace]:
    """a / b as repeated subtraction; quotient counts the iterations."""
    if b.count == 0:
        raise DivisionByZero("division by zero")
    steps = []
    remainder = a.count
    while remainder >= b.count:
        steps.append(TraceStep("subtract-iteration",
                               f"subtract {b.count} from {remainder}",
                               (_REMOVE,) * b.count))
        remainder -= b.count
    return (UnaryNumber(len(steps)), UnaryNumber(remainder),
            OperationTrace("divide", tuple(steps)))


def unary_power(a: UnaryNumber, k: int) -> tuple[UnaryNumber, OperationTrace]:
    """a^k as k multiplications starting from one: repetition on three levels
    (power -> multiply -> add -> transfer)."""
    if a.count == 0 and k == 0:
        raise Indeterminate("0^0 is undefined here")
    if k < 0:
        raise ValueError("exponent must be a natural number")
    if a.count > 0 and a.count ** k > UNARY_CAP:
        raise TooLarge(f"power {a.count}^{k} exceeds cap {UNARY_CAP}")
    steps = []
    acc = 1
    for _ in range(k):
        # acc x a as a additions of acc
        inner = tuple(_add_iteration(acc, acc * j) for j in range(a.count))
        steps.append(TraceStep("multiply-iteration",
                               f"multiply {acc} by {a.count}", inner))
        acc *= a.count
    return UnaryNumber(acc), OperationTrace("power", tuple(steps))


def unary_factorial(n: int) -> tuple[UnaryNumber, OperationTrace]:
    """n! by a descending multiply-then-subtract loop."""
    if n < 0:
        raise ValueError("factorial needs a natural number")
    if math.factorial(n) > UNARY_CAP:
        raise TooLarge(f"{n}! exceeds cap {UNARY_CAP}")
    steps = []
    acc = 1
    m = n
    while m >= 1:
        inner = tuple(_add_iteration(acc, acc * j) for j in range(m))
        steps.append(TraceStep("multiply-iteration",
                               f"multiply {acc} by {m}", inner))
        acc *= m
        steps.append(TraceStep("subtract-iteration",
                               f"count down {m} to {m - 1}", (_REMOVE,)))
        m -= 1
    return UnaryNumber(acc), OperationTrace("factorial", tuple(steps))


def _check_terms(terms: Mapping[int, int], lo: int, hi: int) -> None:
    if lo > hi:
        raise ValueError(f"empty index range {lo}..{hi}")
    for i in range(lo, hi + 1):
        if i not in terms:
            raise NonIntegerTerm(f"no term value for index {i}")
        value = terms[i]
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise NonIntegerTerm(f"term at {i} must be a non-negative integer, "
                                 f"got {value!r}")


def bounded_sum(terms: Mapping[int, int], lo: int,
                hi: int) -> tuple[UnaryNumber, OperationTrace]:
    """Fold addition over the index range; each iteration logs its term."""
    _check_terms(terms, lo, hi)
    steps = []
    acc = 0
    for i in range(lo, hi + 1):
        term = terms[i]
        if acc + term > UNARY_CAP:
            raise TooLarge(f"sum exceeds cap {UNARY_CAP}")
        steps.append(TraceStep("add-iteration",
                               f"i={i}: add term {term} to {acc}",
                               _transfers(term)))
        acc += term
    return UnaryNumber(acc), OperationTrace("bounded-sum", tuple(steps))


def bounded_product(terms: Mapping[int, int], lo: int,
                    hi: int) -> tuple[UnaryNumber, OperationTrace]:
    """Fold multiplication over the index range, starting from one."""
    _check_terms(terms, lo, hi)
    steps = []
    acc = 1
    for i in range(lo, hi + 1):
        term = terms[i]
        if acc * term > UNARY_CAP:
            raise TooLarge(f"product exceeds cap {UNARY_CAP}")
        inner = tuple(_add_iteration(acc, acc * j) for j in range(term))
        steps.append(TraceStep("multiply-iteration",
                               f"i={i}: multiply {acc} by term {term}", inner))
        acc *= term
    return UnaryNumber(acc), OperationTrace("bounded-product", tuple(steps))


@dataclass(frozen=True, slots=True)
class PeanoNumeral:
    """A natural as nested successor applications."""

    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")

    def render(self) -> str:
        return "S(" * self.depth + "0" + ")" * self.depth


def to_peano(n: int) -> PeanoNumeral:
    return PeanoNumeral(n)


def peano_succ(p: PeanoNumeral) -> PeanoNumeral:
    return PeanoNumeral(p.depth + 1)


def peano_shared_depth(p: PeanoNumeral, q: PeanoNumeral) -> int:
    """Successor layers unified level by level: the smaller depth."""
    return min(p.depth, q.depth)


def parse_peano(text: str) -> PeanoNumeral:
    depth = 0
    rest = text.strip()
    while rest.startswith("S("):
        depth += 1
        rest = rest[2:]
    if rest != "0" + ")" * depth:
        raise BadDigit(f"not a successor numeral: {text!r}")
    return PeanoNumeral(depth)


def unary_to_positional(u: UnaryNumber, base: int) -> str:
    """Recursive chunking of the unary string into base-sized groups, one
    digit per group level."""
    if base < 2 or base > len(DIGITS):
        raise ValueError(f"base must be in 2..{len(DIGITS)}")
    n = u.count
    if n == 0:
        return "0"
    digits = []
    while n:
        digits.append(DIGITS[n % base])
        n //= base
    return "".join(reversed(digits))


def positional_to_unary(s: str, base: int) -> UnaryNumber:
    if base < 2 or base > len(DIGITS):
        raise ValueError(f"base must be in 2..{len(DIGITS)}")
    if not s:
        raise BadDigit("empty digit string")
    value = 0
    for ch in s:
        d = DIGITS.find(ch.upper())
        if d < 0 or d >= base:
            raise BadDigit(f"digit {ch!r} invalid in base {base}")
        value = value * base + d
        if value > UNARY_CAP:
            raise TooLarge(f"value exceeds cap {UNARY_CAP}")
    return UnaryNumber(value)


@dataclass(frozen=True)
class BaseReport:
    count: int
    base: int
    digits: str
    unary_symbols: int
    positional_symbols: int

    @property
    def ratio(self) -> float:
        """Positional symbols per unary symbol (smaller is tighter)."""
        if self.unary_symbols == 0:
            return 1.0
        return self.positional_symbols / self.unary_symbols


def base_report(u: UnaryNumber, base: int) -> BaseReport:
    digits = unary_to_positional(u, base)
    return BaseReport(u.count, base, digits, u.count, len(digits))


def round_half_away_from_zero(x: float, places: int = 1) -> float:
    exp = Decimal(1).scaleb(-places)
    return float(Decimal(str(x)).quantize(exp, rounding=ROUND_HALF_UP))


@dataclass(frozen=True, slots=True)
class FallRow:
    t: int
    s: float


@dataclass(frozen=True)
class FallReport:
    """Distances fallen per second under constant gravity, plus the bit cost
    of the generating formula versus the written-out table."""

    g: float
    rows: tuple[FallRow, ...]
    formula_bits: float
    table_bits: float


def _formula_symbols(g: float) -> list[SPSymbol]:
    return tokenize(f"s = ( g * t ^ 2 ) / 2 ; g = {g}")


def _table_symbols(rows: Sequence[FallRow]) -> list[SPSymbol]:
    out: list[SPSymbol] = []
    for row in rows:
        out.extend(tokenize(f"{row.t} {row.s:.1f}"))
    return out


def newton_table(g: float, t_max: int) -> FallReport:
    """Distance fallen s = g t^2 / 2 for t = 0..t_max, rounded to one decimal
    (halves away from zero), with a formula-versus-table cost comparison."""
    if g <= 0:
        raise ValueError("g must be positive")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    rows = tuple(FallRow(t, round_half_away_from_zero(g * t * t / 2.0, 1))
                 for t in range(t_max + 1))
    formula = _formula_symbols(g)
    table = _table_symbols(rows)
    alphabet = {s.text for s in formula} | {s.text for s in table}
    per_symbol = symbol_cost_bits(max(len(alphabet), 1))
    return FallReport(g, rows, len(formula) * per_symbol, len(table) * per_symbol)
