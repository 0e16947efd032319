"""Parser and evaluator for group words such as ``a^6b(c^4d^2)^{-1}`` or ``s^2tu^3vαβ``.

Grammar: a word is a juxtaposition of factors; a factor is a symbol or a
parenthesised word, optionally followed by ``^n``, ``^{n}`` or ``^-n``.  The
literal ``1`` is the identity.  Symbols are single letters, ``α``/``β`` or the
TeX spellings ``\\alpha``/``\\beta``.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Mapping
from typing import Any

from .errors import ParseError

_TOKEN_RE = re.compile(r"\s*(\\alpha|\\beta|α|β|[A-Za-z]|\^|\{|\}|\(|\)|-?\d+)")
_ALIASES = {"\\alpha": "α", "\\beta": "β"}


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} in word {text!r}")
        tokens.append(_ALIASES.get(m.group(1), m.group(1)))
        pos = m.end()
    return tokens


def parse_word(text: str) -> list:
    """Parse into a list of ``(atom, exponent)`` pairs; atoms are symbols or nested lists."""
    tokens = _tokenize(text)
    pos = 0

    def exponent():
        nonlocal pos
        if pos < len(tokens) and tokens[pos] == "^":
            pos += 1
            if pos < len(tokens) and tokens[pos] == "{":
                pos += 1
                value = number()
                expect("}")
                return value
            return number()
        return 1

    def number():
        nonlocal pos
        if pos >= len(tokens) or not re.fullmatch(r"-?\d+", tokens[pos]):
            raise ParseError(f"expected an integer exponent in {text!r}")
        pos += 1
        return int(tokens[pos - 1])

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ParseError(f"expected {tok!r} in {text!r}")
        pos += 1

    def word(closing=None):
        nonlocal pos
        factors = []
        while pos < len(tokens) and tokens[pos] != closing:
            tok = tokens[pos]
            if tok == "(":
                pos += 1
                inner = word(")")
                expect(")")
                factors.append((inner, exponent()))
            elif tok == "1":
                pos += 1
                factors.append(([], exponent()))
            elif re.fullmatch(r"[A-Za-z]|α|β", tok):
                pos += 1
                factors.append((tok, exponent()))
            else:
                raise ParseError(f"unexpected token {tok!r} in {text!r}")
        return factors

    result = word()
    if pos != len(tokens):
        raise ParseError(f"unbalanced parentheses in {text!r}")
    return result


def evaluate_word(
    text_or_ast,
    symbols: Mapping[str, Any],
    identity: Any,
    mul: Callable[[Any, Any], Any] = lambda x, y: x * y,
    power: Callable[[Any, int], Any] = lambda x, n: x**n,
):
    """Evaluate a word left to right in any group given by its operations."""
    ast = parse_word(text_or_ast) if isinstance(text_or_ast, str) else text_or_ast
    result = identity
    for atom, exp in ast:
        if isinstance(atom, list):
            value = evaluate_word(atom, symbols, identity, mul, power)
        else:
            try:
                value = symbols[atom]
            except KeyError:
                raise ParseError(f"unknown symbol {atom!r}") from None
        result = mul(result, power(value, exp))
    return result
