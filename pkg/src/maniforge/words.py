"""Group words over named generators.

A word is a tuple of letters; letter ``2*g`` is generator ``g`` and
``2*g + 1`` its inverse.  The textual grammar accepted by :func:`parse_word`::

    word   := factor*
    factor := atom ('^' int)?
    atom   := NAME | '1' | '(' word ')' | '[' word ',' word ']'

``[a, b]`` expands to ``a^-1 b^-1 a b``.
"""

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],^]))")


def inverse_letter(x):
    return x ^ 1


def invert(word):
    return tuple(x ^ 1 for x in reversed(word))


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def power(word, k):
    if k < 0:
        return invert(word) * (-k)
    return tuple(word) * k


def _tokenize(text):
    pos, toks = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}")
        pos = m.end()
        kind = m.lastgroup
        toks.append((kind, m.group(kind)))
    return toks


class _Parser:
    def __init__(self, text, names):
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {n: k for k, n in enumerate(names)}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None or (sym is not None and tok[1] != sym):
            raise ParseError(f"expected {sym!r}" if sym else "unexpected end of word")
        self.i += 1
        return tok

    def word(self, stop=()):
        out = []
        while True:
            kind, val = self.peek()
            if kind is None or (kind == "sym" and val in stop):
                return tuple(out)
            out.extend(self.factor())

    def factor(self):
        kind, val = self.take()
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown generator {val!r}")
            atom = (2 * self.index[val],)
        elif kind == "int" and val == "1":
            atom = ()  # the identity, as written by format_word
        elif kind == "sym" and val == "(":
            atom = self.word(stop=(")",))
            self.take(")")
        elif kind == "sym" and val == "[":
            a = self.word(stop=(",",))
            self.take(",")
            b = self.word(stop=("]",))
            self.take("]")
            atom = invert(a) + invert(b) + a + b
        else:
            raise ParseError(f"unexpected token {val!r}")
        if self.peek() == ("sym", "^"):
            self.take("^")
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            atom = power(atom, int(val))
        return atom


def parse_word(text, names):
    """Parse ``text`` into a letter tuple over generator ``names``."""
    p = _Parser(text, names)
    w = p.word()
    if p.i != len(p.toks):
        raise ParseError(f"trailing input {p.toks[p.i][1]!r}")
    return w


def format_word(word, names):
    if not word:
        return "1"
    out = []
    for x in word:
        out.append(names[x >> 1] + ("^-1" if x & 1 else ""))
    return " ".join(out)
