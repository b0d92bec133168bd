"""Parser for integer polynomial text.

Grammar (whitespace ignored between tokens)::

    expression  := term (('+' | '-') term)*
    term        := coefficient? ('*'? factor)*
    factor      := variable ('^' positive-integer)?
    coefficient := integer          (optional sign on the first term only)
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ParseError, UnknownVariable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].isspace():
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {v: k for k, v in enumerate(variables)}
        self.nvars = len(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expression(self) -> Dict[Tuple[int, ...], int]:
        terms: Dict[Tuple[int, ...], int] = {}
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            exps, coeff = self.term()
            terms[exps] = terms.get(exps, 0) + sign * coeff
            kind = self.peek()[0]
            if kind == "end":
                break
            if kind not in ("+", "-"):
                tok = self.peek()
                raise ParseError(f"expected '+' or '-', got {tok[1]!r}", tok[2])
            sign = -1 if self.take()[0] == "-" else 1
        return {e: c for e, c in terms.items() if c != 0}

    def term(self) -> Tuple[Tuple[int, ...], int]:
        start = self.peek()
        coeff = 1
        seen = False
        if start[0] == "int":
            coeff = int(self.take()[1])
            seen = True
        exps = [0] * self.nvars
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                if self.peek()[0] != "name":
                    tok = self.peek()
                    raise ParseError("expected a variable after '*'", tok[2])
                continue
            if kind != "name":
                break
            _, name, pos = self.take()
            if name not in self.index:
                raise UnknownVariable(name, pos)
            power = 1
            if self.peek()[0] == "^":
                self.take()
                tok = self.take()
                if tok[0] != "int" or int(tok[1]) < 1:
                    raise ParseError("expected a positive integer exponent", tok[2])
                power = int(tok[1])
            exps[self.index[name]] += power
            seen = True
        if not seen:
            raise ParseError("empty term", start[2])
        return tuple(exps), coeff


def parse_terms(text: str, variables: Sequence[str]) -> Dict[Tuple[int, ...], int]:
    if len(set(variables)) != len(variables) or not variables:
        raise ValueError("variables must be a non-empty list of distinct names")
    return _Parser(text, variables).expression()


_XN = re.compile(r"x(\d+)$")


def default_variables(text: str) -> List[str]:
    """Guess the variable list from the names used in ``text``.

    Names drawn from x, y, z, w give the shortest prefix of ``[x, y, z, w]``
    that covers them; names of the form x0, x1, ... give ``x0..xN`` for the
    largest N seen.  At least three variables are returned.
    """
    names = {m.group(2) for m in _TOKEN.finditer(text) if m.group(2)}
    letters = ["x", "y", "z", "w"]
    if names <= set(letters):
        k = max([letters.index(v) + 1 for v in names] + [3])
        return letters[:k]
    indexed = [_XN.match(v) for v in names]
    if all(indexed):
        top = max([int(m.group(1)) for m in indexed] + [2])
        return [f"x{i}" for i in range(top + 1)]
    bad = sorted(v for v in names if v not in letters and not _XN.match(v))
    raise UnknownVariable(bad[0] if bad else sorted(names)[0])
