import pytest
from hypothesis import given
from hypothesis import strategies as st

from symdg.errors import ParseError
from symdg.perm import Permutation
from symdg.words import evaluate_word, parse_word

# free-group style check: evaluate in S_5 with two fixed generators
A = Permutation([1, 2, 3, 4, 0])
B = Permutation([1, 0, 2, 3, 4])
SYMBOLS = {"a": A, "b": B, "α": A * B, "β": B * A}
E = Permutation.identity(5)


def ev(text):
    return evaluate_word(text, SYMBOLS, E)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1", E),
        ("a", A),
        ("a^3b", A**3 * B),
        ("(ab)^{-1}", (A * B).inverse()),
        ("(ab)^-1", (A * B).inverse()),
        ("a^{2}(ba)^2", A**2 * (B * A) ** 2),
        ("\\alpha\\beta", (A * B) * (B * A)),
        ("αβ^{-1}", (A * B) * (B * A).inverse()),
        ("a 1 b", A * B),
    ],
)
def test_evaluation(text, expected):
    assert ev(text) == expected


@pytest.mark.parametrize("text", ["a^", "(ab", "ab)", "a^{2", "a$", "a^x"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_word(text)


def test_unknown_symbol():
    with pytest.raises(ParseError):
        ev("z")


words = st.lists(st.tuples(st.sampled_from("ab"), st.integers(-4, 4)), max_size=6)


@given(words, words)
def test_concatenation_is_multiplication(u, v):
    text = lambda w: "".join(f"{s}^{{{e}}}" for s, e in w) or "1"
    assert ev(text(u) + " " + text(v)) == ev(text(u)) * ev(text(v))
    assert ev(f"({text(u)})^{{-1}}") * ev(text(u)) == E
