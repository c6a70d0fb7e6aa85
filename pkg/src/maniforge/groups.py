"""Finite permutation groups that act freely, with elements identified with
the points of one orbit.

Element ``k`` is the group element carrying the base point to ``orbit[k]``.
Products are written in application order: ``compose(g, h)`` is "``g`` then
``h``", matching automorphisms acting on the right.  Only the generators are
stored as full permutations; everything else is transport along a
breadth-first spanning tree of the orbit.
"""

from dataclasses import dataclass, field

import numpy as np

from . import perms as P
from .errors import ForeignElement, LengthMismatch, NotFree
from .words import format_word


@dataclass(eq=False)
class FreeActionGroup:
    names: tuple
    gens: list
    base: int
    orbit: np.ndarray
    index: np.ndarray
    parent: np.ndarray
    parent_letter: np.ndarray
    rtab: np.ndarray = None
    _left_cache: dict = field(default_factory=dict, repr=False)
    _levels: list = field(default=None, repr=False)

    def __post_init__(self):
        if self.rtab is None:
            cols = []
            for p in self.gens:
                cols.append(self.index[p[self.orbit]])
                cols.append(self.index[P.inverse_perm(p)[self.orbit]])
            if cols:
                self.rtab = np.stack(cols, axis=1)
            else:
                self.rtab = np.zeros((self.order, 0), dtype=P.INDEX)

    # -- basics --------------------------------------------------------------
    @property
    def order(self):
        return int(self.orbit.shape[0])

    def __len__(self):
        return self.order

    @property
    def ngens(self):
        return len(self.gens)

    identity = 0

    def _check(self, g):
        g = int(g)
        if not 0 <= g < self.order:
            raise ForeignElement(f"element {g} outside group of order {self.order}", element=g)
        return g

    def generator(self, name_or_index):
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else int(name_or_index)
        return int(self.rtab[0, 2 * i])

    def element_at(self, point):
        """Element carrying the base point to ``point``."""
        k = int(self.index[point]) if 0 <= point < self.index.shape[0] else -1
        if k < 0:
            raise ForeignElement(f"point {point} is not in the base orbit", point=int(point))
        return k

    def word_of(self, g):
        """Generator letters (``2a``) whose product, in application order, is ``g``."""
        g = self._check(g)
        out = []
        while g != 0:
            out.append(int(self.parent_letter[g]))
            g = int(self.parent[g])
        return tuple(reversed(out))

    def format(self, g):
        return format_word(self.word_of(g), self.names)

    def word_element(self, letters):
        k = 0
        for x in letters:
            k = int(self.rtab[k, x])
        return k

    # -- arithmetic ------------------------------------------------------------
    def compose(self, g, h):
        g = self._check(g)
        for x in self.word_of(h):
            g = int(self.rtab[g, x])
        return g

    def product(self, *elems):
        out = 0
        for e in elems:
            out = self.compose(out, e)
        return out

    def inverse(self, g):
        k = 0
        for x in reversed(self.word_of(g)):
            k = int(self.rtab[k, x ^ 1])
        return k

    def power(self, g, e):
        if e < 0:
            g, e = self.inverse(g), -e
        out = 0
        for _ in range(e):
            out = self.compose(out, g)
        return out

    def order_of(self, g):
        g = self._check(g)
        k, n = g, 1
        while k != 0:
            k = self.compose(k, g)
            n += 1
        return n

    def as_permutation(self, g):
        """Image array of ``g`` on the whole underlying point set."""
        return P.word_action(self.gens, [x >> 1 for x in self.word_of(g)],
                             n=self.index.shape[0]) if self.gens else np.arange(self.index.shape[0])

    def apply(self, g, point):
        return int(self.as_permutation(g)[point])

    def right_mult_table(self, g):
        """``k -> k * g`` for all elements."""
        arr = np.arange(self.order, dtype=P.INDEX)
        for x in self.word_of(g):
            arr = self.rtab[arr, x]
        return arr

    def left_table(self, g):
        """``k -> g * k`` for all elements (cached)."""
        g = self._check(g)
        if g not in self._left_cache:
            if self._levels is None:
                self._levels = P.bfs_levels(self._forward_tables(), 0)
            img, _ = P.extend_map(self._forward_tables(), self._forward_tables(),
                                  self._levels, 0, g, check=False)
            self._left_cache[g] = img
        return self._left_cache[g]

    def _forward_tables(self):
        return [self.rtab[:, 2 * a] for a in range(self.ngens)]

    def commutes(self, g, h):
        return self.compose(g, h) == self.compose(h, g)

    def elements(self):
        return range(self.order)


def _bfs_orbit(gens, base, n):
    index = np.full(n, -1, dtype=P.INDEX)
    index[base] = 0
    orbit = [base]
    parent = [0]
    letter = [-1]
    frontier = np.array([base], dtype=P.INDEX)
    while frontier.size:
        nxt = []
        for a, p in enumerate(gens):
            img = p[frontier]
            fresh = index[img] < 0
            if not fresh.any():
                continue
            img, par = img[fresh], frontier[fresh]
            img, first = np.unique(img, return_index=True)
            # keep BFS order stable: order new points by parent position
            par = par[first]
            order = np.lexsort((img, index[par]))
            img, par = img[order], par[order]
            start = len(orbit)
            index[img] = np.arange(start, start + img.shape[0])
            orbit.extend(img.tolist())
            parent.extend(index[par].tolist())
            letter.extend([2 * a] * img.shape[0])
            nxt.append(img)
        frontier = np.concatenate(nxt) if nxt else np.zeros(0, dtype=P.INDEX)
    return (np.array(orbit, dtype=P.INDEX), index,
            np.array(parent, dtype=P.INDEX), np.array(letter, dtype=P.INDEX))


def close_group(generators, base=0, names=None, check_free=True, degree=None):
    """Close the orbit of ``base`` and return the group as a free action.

    With ``check_free`` the action is verified to be regular on the base
    orbit and faithful there (every other orbit is an equivariant image);
    failure raises ``NotFree`` with an element fixing the base point.
    """
    gens = [P.as_perm_array(g) for g in generators]
    if degree is None:
        degree = gens[0].shape[0] if gens else base + 1
    names = tuple(names) if names is not None else tuple(f"g{i}" for i in range(len(gens)))
    if len(names) != len(gens):
        raise LengthMismatch("one name per generator", names=len(names), generators=len(gens))
    orbit, index, parent, letter = _bfs_orbit(gens, base, degree)
    G = FreeActionGroup(names, gens, int(base), orbit, index, parent, letter)
    if check_free and gens:
        _verify_free(G, degree)
    return G


def _fixing_word(G, tree_word, point, letter, img_word):
    # element w_p * g * w_{p'}^{-1}, which fixes the base
    from .words import invert
    return tree_word + (letter,) + invert(img_word)


def _verify_free(G, degree):
    gens = G.gens
    levels = P.bfs_levels(gens, G.base)
    G._levels_points = levels

    def witness(bad):
        p, c = bad
        wp = G.word_of(G.index[p])
        wq = G.word_of(G.index[gens[c][p]])
        word = _fixing_word(G, wp, p, 2 * c, wq)
        raise NotFree(f"element {format_word(word, G.names)} fixes point {G.base} but acts nontrivially",
                      point=G.base, element=format_word(word, G.names))

    # regular on the base orbit: every base -> q extends to a centralizing map
    found = []
    known = np.zeros(degree, dtype=bool)
    known[G.base] = True
    for q in G.orbit.tolist():
        if known[q]:
            continue
        img, bad = P.extend_map(gens, gens, levels, G.base, q)
        if bad is not None:
            witness(bad)
        found.append(img)
        sub = [np.where(m >= 0, m, np.arange(degree)) for m in found]
        _, lab = P.components(sub, degree)
        known = lab == lab[G.base]
    # faithful: each other orbit receives an equivariant copy of the base orbit
    seen = np.zeros(degree, dtype=bool)
    seen[G.orbit] = True
    while not seen.all():
        p = int(np.nonzero(~seen)[0][0])
        img, bad = P.extend_map(gens, gens, levels, G.base, p)
        if bad is not None:
            witness(bad)
        other = close_group(gens, p, G.names, check_free=False, degree=degree)
        seen[other.orbit] = True


def homomorphism_well_defined(G, source, H, target):
    """Whether ``source[i] -> target[i]`` extends to a homomorphism ``<source> -> H``.

    ``source`` are elements of ``G`` and ``target`` elements of ``H``.  The
    Cayley graph of ``<source>`` (right multiplication) is mapped onto the
    one of ``<target>`` from identity to identity; the map is consistent
    exactly when it is well defined.
    """
    source, target = list(source), list(target)
    if len(source) != len(target):
        raise LengthMismatch("source and target lengths differ",
                             source=len(source), target=len(target))
    if not source:
        return True
    src = [G.right_mult_table(g) for g in source]
    dst = [H.right_mult_table(t) for t in target]
    levels = P.bfs_levels(src, 0)
    _, bad = P.extend_map(src, dst, levels, 0, 0)
    return bad is None


def homomorphism_map(G, source, H, target):
    """The induced map ``<source> -> H`` as an array over ``G`` (``-1`` outside)."""
    src = [G.right_mult_table(g) for g in source]
    dst = [H.right_mult_table(t) for t in target]
    img, bad = P.extend_map(src, dst, P.bfs_levels(src, 0), 0, 0)
    return None if bad is not None else img


def is_central_involution(g, G):
    g = G._check(g)
    if g == 0 or G.compose(g, g) != 0:
        return False
    return all(G.commutes(g, G.generator(i)) for i in range(G.ngens))


def group_from_coset_table(table, names=None):
    """Regular representation of a presented group from its complete coset table."""
    names = tuple(names or table.generator_names)
    gens = [table.action(g) for g in range(len(names))]
    return close_group(gens, 0, names, check_free=False)
