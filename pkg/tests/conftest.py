import pytest

from icmup import (FunctionTable, PatternKind, SPPattern, SPSymbol,
                   parse_grammar)

KITTENS_GRAMMAR = """\
# toy parsing grammar: words plus bracketing structure
PATTERN p1 1: Nr 5 k i t t e n #Nr
PATTERN p2 1: N Np Nr #Nr s #N
PATTERN p3 1: D Dp 4 t w o #D
PATTERN p4 1: NP D #D N #N #NP
PATTERN p5 1: Vr 1 p l a y #Vr
PATTERN p6 1: V Vp Vr #Vr #V
PATTERN p7 1: S Num ; NP #NP V #V #S
PATTERN p8 1: Num PL ; Np Vp
"""

KITTENS_SENTENCE = "t w o k i t t e n s p l a y"


def bits(*texts):
    return tuple(SPSymbol(t) for t in texts)


@pytest.fixture(scope="session")
def kittens_store():
    return parse_grammar(KITTENS_GRAMMAR)


@pytest.fixture()
def kittens_new():
    return SPPattern.from_text("new", KITTENS_SENTENCE, kind=PatternKind.NEW)


@pytest.fixture(scope="session")
def adder_table():
    return FunctionTable(
        "adder", ("a", "b"), ("sum", "carry"),
        (
            (bits("1", "1"), bits("0", "1")),
            (bits("1", "0"), bits("1", "0")),
            (bits("0", "1"), bits("1", "0")),
            (bits("0", "0"), bits("0", "0")),
        ))


@pytest.fixture(scope="session")
def xor_table():
    return FunctionTable(
        "xor", ("a", "b"), ("out",),
        (
            (bits("1", "1"), bits("0")),
            (bits("0", "1"), bits("1")),
            (bits("1", "0"), bits("1")),
            (bits("0", "0"), bits("0")),
        ))
