import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icmup import (PatternStore, SPPattern, SPSymbol, code_cost,
                   code_cost_bits, parse_grammar, raw_cost, render,
                   symbol_cost_bits, tokenize)
from icmup.errors import DegenerateAlphabet, InputFormatError, UnknownPattern

symbol_texts = st.text(alphabet="abcdefgXYZ#/01", min_size=1, max_size=4)
symbol_lists = st.lists(symbol_texts.map(SPSymbol), min_size=0, max_size=30)


class TestSymbol:
    def test_equality_is_textual(self):
        assert SPSymbol("a") == SPSymbol("a")
        assert SPSymbol("a") != SPSymbol("b")

    @pytest.mark.parametrize("bad", ["", "a b", "a\t", "\n"])
    def test_rejects_empty_and_whitespace(self, bad):
        with pytest.raises(ValueError):
            SPSymbol(bad)


class TestTokenize:
    def test_whitespace_mode(self):
        assert [s.text for s in tokenize("a b c")] == ["a", "b", "c"]

    def test_chars_mode(self):
        syms = tokenize("INFORMATION", "chars")
        assert len(syms) == 11
        assert [s.text for s in syms[:3]] == ["I", "N", "F"]

    def test_sentence_has_fourteen_symbols(self):
        assert len(tokenize("t w o k i t t e n s p l a y")) == 14

    def test_empty_input(self):
        assert tokenize("") == []
        assert tokenize("   ", "chars") == []

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            tokenize("a", "words")

    @given(symbol_lists)
    def test_render_round_trip(self, symbols):
        assert tokenize(render(symbols)) == symbols


class TestCosts:
    def test_raw_cost_dna(self):
        p = SPPattern.from_text("p", "A C G T A")
        assert raw_cost(p, 4) == pytest.approx(10.0)

    def test_raw_cost_binary(self):
        p = SPPattern.from_text("p", "1 0 1 0 1 0 1 0")
        assert raw_cost(p, 2) == pytest.approx(8.0)

    def test_raw_cost_word(self):
        p = SPPattern.from_text("p", "INFORMATION", mode="chars")
        expected = 11 * math.log2(27)
        assert raw_cost(p, 27) == pytest.approx(expected)
        assert expected == pytest.approx(52.304, abs=0.0005)

    def test_degenerate_alphabet(self):
        assert symbol_cost_bits(1) == 1.0
        with pytest.raises(DegenerateAlphabet):
            symbol_cost_bits(0)

    @given(st.integers(2, 1000))
    def test_symbol_cost_positive(self, size):
        assert symbol_cost_bits(size) > 0

    @given(symbol_lists, symbol_lists, st.integers(1, 64))
    def test_raw_cost_additive(self, left, right, alphabet):
        whole = raw_cost(list(left) + list(right), alphabet)
        assert whole == pytest.approx(raw_cost(left, alphabet) + raw_cost(right, alphabet))

    def test_code_cost_sole_pattern(self):
        assert code_cost_bits(1, 1) == 0.0

    def test_code_cost_half(self):
        assert code_cost_bits(1, 2) == pytest.approx(1.0)

    def test_code_cost_three_quarters(self):
        assert code_cost_bits(3, 4) == pytest.approx(-math.log2(3 / 4))
        assert code_cost_bits(3, 4) == pytest.approx(0.415, abs=0.0005)

    @given(st.integers(2, 500))
    def test_code_cost_monotone_in_frequency(self, total):
        costs = [code_cost_bits(f, total) for f in range(1, total + 1)]
        assert all(a > b for a, b in zip(costs, costs[1:]))
        assert costs[-1] == 0.0


class TestStore:
    def make(self):
        return PatternStore([
            SPPattern.from_text("a", "x y", frequency=3),
            SPPattern.from_text("b", "y z", frequency=1),
        ])

    def test_alphabet_is_union(self):
        assert self.make().alphabet == {"x", "y", "z"}

    def test_total_frequency(self):
        assert self.make().total_frequency == 4

    def test_code_cost_lookup(self):
        store = self.make()
        assert code_cost("a", store) == pytest.approx(-math.log2(3 / 4))

    def test_unknown_pattern(self):
        with pytest.raises(UnknownPattern):
            code_cost("zzz", self.make())

    def test_duplicate_id_rejected(self):
        p = SPPattern.from_text("a", "x")
        with pytest.raises(ValueError):
            PatternStore([p, p])

    def test_retrieval_index(self):
        store = self.make()
        assert store.patterns_containing("y") == ("a", "b")
        assert store.patterns_containing("w") == ()


class TestGrammarFile:
    def test_basic(self):
        store = parse_grammar("PATTERN p1 2: a b c\n# comment\n\nPATTERN p2: d\n")
        assert store.get("p1").frequency == 2
        assert store.get("p2").frequency == 1
        assert store.alphabet == {"a", "b", "c", "d"}

    def test_duplicate_id(self):
        with pytest.raises(InputFormatError, match="line 2"):
            parse_grammar("PATTERN p 1: a\nPATTERN p 1: b\n")

    @pytest.mark.parametrize("line", [
        "PATERN p 1: a",
        "PATTERN p 1 a",
        "PATTERN p one: a",
        "PATTERN p 0: a",
        "PATTERN p 1:",
        "PATTERN p q r: a",
    ])
    def test_bad_lines(self, line):
        with pytest.raises(InputFormatError):
            parse_grammar(line)
