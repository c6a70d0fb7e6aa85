"""Presentations and HLT coset enumeration.

The enumeration is the textbook HLT strategy: cosets are processed in
creation order, every relator is traced from each live coset filling gaps
with new cosets, and the row is completed before moving on.  There is no
lookahead and nothing random, so the final (standardized) numbering is a
function of the presentation alone.
"""

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyPresentation, Incomplete, ParseError
from .words import format_word, free_reduce, parse_word

DEFAULT_MAX_COSETS = 10_000_000


def max_cosets_from_env():
    return int(os.environ.get("MANIFORGE_MAX_COSETS", DEFAULT_MAX_COSETS))


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple
    relators: tuple = ()

    def __post_init__(self):
        ng = len(self.generator_names)
        for r in self.relators:
            if any((x >> 1) >= ng for x in r):
                raise ValueError("relator uses a letter outside the generator alphabet")

    @property
    def ngens(self):
        return len(self.generator_names)

    def word(self, text):
        return parse_word(text, self.generator_names)

    def format(self, word):
        return format_word(word, self.generator_names)


def coxeter_presentation(schlafli, names=None):
    """Presentation of the string Coxeter group ``[p_1, ..., p_{n-1}]``."""
    n = len(schlafli) + 1
    names = tuple(names or (f"r{i}" for i in range(n)))
    rels = []
    for i in range(n):
        rels.append((2 * i, 2 * i))
    for i in range(n - 1):
        rels.append((2 * i, 2 * (i + 1)) * int(schlafli[i]))
    for i in range(n):
        for j in range(i + 2, n):
            rels.append((2 * i, 2 * j) * 2)
    return Presentation(names, tuple(rels))


def parse_presentation(text, path=None):
    """Parse the ``.grp`` format: a ``gens:`` line then one relator per line."""
    names = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if names is None:
            if not line.startswith("gens:"):
                raise ParseError("first line must start with 'gens:'", lineno, path)
            names = tuple(line[len("gens:"):].split())
            if not names:
                raise ParseError("no generators declared", lineno, path)
            continue
        try:
            rels.append(parse_word(line, names))
        except ParseError as exc:
            raise ParseError(exc.reason, lineno, path) from None
    if names is None:
        raise ParseError("missing 'gens:' line", None, path)
    return Presentation(names, tuple(rels))


def format_presentation(pres):
    lines = ["gens: " + " ".join(pres.generator_names)]
    lines += [pres.format(r) for r in pres.relators]
    return "\n".join(lines) + "\n"


@dataclass
class CosetTable:
    """Complete coset table; ``rows[c, 2*g]`` is ``c . g`` and ``rows[c, 2*g+1]`` is ``c . g^-1``."""

    rows: np.ndarray
    complete: bool = True
    cosets_defined: int = 0
    generator_names: tuple = field(default_factory=tuple)

    def __len__(self):
        return self.rows.shape[0]

    def action(self, g):
        """Right action of generator ``g`` as an image array."""
        return self.rows[:, 2 * g]


def todd_coxeter(pres, subgroup_words=(), max_cosets=None):
    """Enumerate the cosets of ``<subgroup_words>`` in the presented group."""
    if pres.ngens == 0:
        raise EmptyPresentation("presentation has no generators")
    if max_cosets is None:
        max_cosets = max_cosets_from_env()
    ncols = 2 * pres.ngens
    rels = [free_reduce(r) for r in pres.relators]
    rels = [r for r in rels if r]
    subs = [free_reduce(w) for w in subgroup_words]

    table = [-1] * ncols
    parent = [0]
    n = 1

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def define(c, x):
        nonlocal n
        if n >= max_cosets:
            raise Incomplete(f"coset bound {max_cosets} reached", bound=max_cosets)
        d = n
        n += 1
        table.extend([-1] * ncols)
        parent.append(d)
        table[c * ncols + x] = d
        table[d * ncols + (x ^ 1)] = c
        return d

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a != b:
            if a > b:
                a, b = b, a
            parent[b] = a
            queue.append(b)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            base = g * ncols
            for x in range(ncols):
                d = table[base + x]
                if d < 0:
                    continue
                table[d * ncols + (x ^ 1)] = -1
                mu, nu = rep(g), rep(d)
                mx = table[mu * ncols + x]
                if mx >= 0:
                    merge(nu, mx, queue)
                    continue
                nx = table[nu * ncols + (x ^ 1)]
                if nx >= 0:
                    merge(mu, nx, queue)
                    continue
                table[mu * ncols + x] = nu
                table[nu * ncols + (x ^ 1)] = mu

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j:
                nxt = table[f * ncols + w[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i:
                nxt = table[b * ncols + (w[j] ^ 1)]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f * ncols + w[i]] = b
                table[b * ncols + (w[i] ^ 1)] = f
                return
            define(f, w[i])

    for w in subs:
        if w:
            scan_and_fill(0, w)

    c = 0
    while c < n:
        if parent[c] == c:
            for w in rels:
                scan_and_fill(c, w)
                if parent[c] != c:
                    break
            if parent[c] == c:
                base = c * ncols
                for x in range(ncols):
                    if table[base + x] < 0:
                        define(c, x)
        c += 1

    rows = _standardize(table, parent, ncols, rep)
    return CosetTable(rows, True, n, pres.generator_names)


def _standardize(table, parent, ncols, rep):
    # breadth-first renumbering from coset 0 in column order
    new_id = {0: 0}
    order = [0]
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for x in range(ncols):
            d = rep(table[c * ncols + x])
            if d not in new_id:
                new_id[d] = len(order)
                order.append(d)
    rows = np.empty((len(order), ncols), dtype=np.int64)
    for k, c in enumerate(order):
        for x in range(ncols):
            rows[k, x] = new_id[rep(table[c * ncols + x])]
    return rows
