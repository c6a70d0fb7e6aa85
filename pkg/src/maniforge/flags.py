"""Premaniplexes and maniplexes as edge-colored flag graphs.

Flags are ``0..F-1``; ``perms[i][f]`` is the ``i``-adjacent flag of ``f``.  A
fixed point of ``perms[i]`` is a semi-edge of color ``i``.  Monodromy words
act on the left, so ``r_2 r_0`` means "apply ``r_0`` then ``r_2``".
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import perms as P
from .errors import (ColorOutOfRange, CommutationFail, Disconnected, NotInvolution,
                     NotPermutation, ParallelEdge, ParseError, RankMismatch, RankNotThree,
                     SemiEdge)


class Dart(NamedTuple):
    vertex: int
    color: int

    def inverse(self, X):
        return Dart(int(X.perms[self.color][self.vertex]), self.color)


@dataclass(frozen=True, eq=False)
class Premaniplex:
    rank: int
    perms: np.ndarray
    maniplex_defect: object = None

    @property
    def flag_count(self):
        return int(self.perms.shape[1])

    def __len__(self):
        return self.flag_count

    @property
    def is_maniplex(self):
        return False

    def r(self, i):
        return self.perms[i]

    def monodromy(self, word):
        """Image array of a monodromy word given as a color sequence ``(i_1, ..., i_k)``
        meaning ``r_{i_1} ... r_{i_k}`` (rightmost applied first)."""
        arr = np.arange(self.flag_count, dtype=P.INDEX)
        for c in reversed(tuple(word)):
            arr = self.perms[c][arr]
        return arr

    def same_as(self, other):
        return self.rank == other.rank and np.array_equal(self.perms, other.perms)

    def __repr__(self):
        kind = type(self).__name__
        return f"<{kind} rank={self.rank} flags={self.flag_count}>"


class Maniplex(Premaniplex):
    @property
    def is_maniplex(self):
        return True


def _freeze(arr):
    arr = np.ascontiguousarray(arr, dtype=P.INDEX)
    arr.setflags(write=False)
    return arr


def premaniplex_axioms(rank, perms):
    """Raise on the first failed premaniplex axiom."""
    if perms.ndim != 2 or perms.shape[0] != rank:
        raise NotPermutation(f"expected {rank} color permutations", rank=rank)
    F = perms.shape[1]
    if F == 0:
        raise NotPermutation("empty flag set")
    ident = np.arange(F)
    for i in range(rank):
        p = perms[i]
        if p.min() < 0 or p.max() >= F:
            raise NotPermutation(f"color {i} maps outside 0..{F - 1}", color=i)
        bad = np.nonzero(p[p] != ident)[0]
        if bad.size:
            raise NotInvolution(f"color {i} is not an involution", color=i, flag=int(bad[0]))
    for i in range(rank):
        for j in range(i + 2, rank):
            q = perms[i][perms[j]]
            bad = np.nonzero(q[q] != ident)[0]
            if bad.size:
                raise CommutationFail(f"(r{i} r{j})^2 moves flag {bad[0]}",
                                      i=i, j=j, flag=int(bad[0]))
    k, _ = P.components(list(perms), F)
    if k != 1:
        raise Disconnected(f"flag graph has {k} components", components=k)


def maniplex_defect(rank, perms):
    """First reason the premaniplex fails to be a maniplex, or None."""
    F = perms.shape[1]
    ident = np.arange(F)
    for i in range(rank):
        fixed = np.nonzero(perms[i] == ident)[0]
        if fixed.size:
            return SemiEdge(f"semi-edge of color {i} at flag {fixed[0]}", color=i, flag=int(fixed[0]))
    for i in range(rank):
        for j in range(i + 1, rank):
            par = np.nonzero(perms[i] == perms[j])[0]
            if par.size:
                return ParallelEdge(f"colors {i},{j} parallel at flag {par[0]}",
                                    i=i, j=j, flag=int(par[0]))
    return None


def validate(rank, perms, maniplex=None):
    """Validate a flag graph.

    ``maniplex=None`` classifies (returns a :class:`Maniplex` when possible),
    ``True`` raises ``SemiEdge``/``ParallelEdge`` when the maniplex axioms
    fail, ``False`` skips the maniplex test.
    """
    arr = np.asarray(perms, dtype=P.INDEX)
    if arr.ndim == 1 and rank == 0:
        arr = arr.reshape(0, -1)
    premaniplex_axioms(rank, arr)
    arr = _freeze(arr)
    if maniplex is False:
        return Premaniplex(rank, arr)
    defect = maniplex_defect(rank, arr)
    if defect is None:
        return Maniplex(rank, arr)
    if maniplex:
        raise defect
    return Premaniplex(rank, arr, defect)


def from_cycles(rank, flag_count, pairs_per_color):
    """Build perms from per-color lists of 2-cycles (omitted flags become semi-edges)."""
    perms = np.tile(np.arange(flag_count, dtype=P.INDEX), (rank, 1))
    for i, pairs in enumerate(pairs_per_color):
        for a, b in pairs:
            perms[i, a] = b
            perms[i, b] = a
    return perms


# --- faces -----------------------------------------------------------------

@dataclass(frozen=True)
class FacePartition:
    color_set: tuple
    component_id: np.ndarray
    face_sizes: np.ndarray

    @property
    def count(self):
        return int(self.face_sizes.shape[0])

    def sizes_histogram(self):
        return dict(sorted(Counter(self.face_sizes.tolist()).items()))


def faces_by_colors(X, color_set):
    color_set = tuple(sorted(set(int(c) for c in color_set)))
    for c in color_set:
        if not 0 <= c < X.rank:
            raise ColorOutOfRange(f"color {c} outside 0..{X.rank - 1}", color=c)
    k, labels = P.components([X.perms[c] for c in color_set], X.flag_count)
    labels.setflags(write=False)
    return FacePartition(color_set, labels, np.bincount(labels, minlength=k))


def faces(X, i):
    """The ``i``-faces: components after deleting color ``i``."""
    if not 0 <= i < X.rank:
        raise ColorOutOfRange(f"rank {i} outside 0..{X.rank - 1}", color=i)
    return faces_by_colors(X, [c for c in range(X.rank) if c != i])


def incidences(X, i, j):
    """Pairs ``(i-face, j-face)`` that share at least one flag."""
    a = faces(X, i).component_id
    b = faces(X, j).component_id
    pairs = np.unique(np.stack([a, b], axis=1), axis=0)
    return [tuple(map(int, p)) for p in pairs]


def vertex_degrees(X):
    """Number of distinct edges (1-faces) at each vertex."""
    if X.rank < 2:
        return np.ones(faces(X, 0).count, dtype=P.INDEX)
    v = faces(X, 0).component_id
    e = faces(X, 1).component_id
    pairs = np.unique(np.stack([v, e], axis=1), axis=0)
    return np.bincount(pairs[:, 0])


# --- derived premaniplexes -------------------------------------------------

def dual(X):
    return _rebuild(X, X.perms[::-1])


def petrial(X):
    """Replace ``r_0`` by ``r_2 r_0`` (rank 3 only)."""
    if X.rank != 3:
        raise RankNotThree("Petrial is defined in rank 3", rank=X.rank)
    perms = np.array(X.perms)
    perms[0] = X.perms[2][X.perms[0]]
    return validate(3, perms)


def opposite(X):
    """``dual(petrial(dual(X)))``, i.e. ``r_2`` replaced by ``r_0 r_2``."""
    if X.rank != 3:
        raise RankNotThree("opposite is defined in rank 3", rank=X.rank)
    return dual(petrial(dual(X)))


def _rebuild(X, perms):
    return validate(X.rank, np.array(perms))


def is_degenerate(X):
    """``(True, (i, flag))`` if some ``(r_i r_{i+1})^2`` fixes a flag."""
    ident = np.arange(X.flag_count)
    for i in range(X.rank - 1):
        q = X.perms[i][X.perms[i + 1]]
        q2 = q[q]
        fixed = np.nonzero(q2 == ident)[0]
        if fixed.size:
            return True, (i, int(fixed[0]))
    return False, None


# --- Petrie polygons -------------------------------------------------------

@dataclass(frozen=True)
class PetrieReport:
    orbit_of: np.ndarray
    lengths: np.ndarray
    simple: np.ndarray

    @property
    def all_simple(self):
        return bool(self.simple.all())

    def lengths_histogram(self):
        return dict(sorted(Counter(self.lengths.tolist()).items()))


def petrie_monodromy(X):
    """``r_{n-1} ... r_1 r_0`` as an image array."""
    return X.monodromy(tuple(range(X.rank - 1, -1, -1)))


def petrie_polygons(X):
    omega = petrie_monodromy(X)
    k, orbit = P.cycles_of(omega)
    lengths = np.bincount(orbit, minlength=k)
    verts = faces(X, 0).component_id
    pairs = np.unique(np.stack([orbit, verts], axis=1), axis=0)
    distinct = np.bincount(pairs[:, 0], minlength=k)
    return PetrieReport(orbit, lengths, distinct == lengths)


# --- orientability ---------------------------------------------------------

def is_orientable(X):
    """Flag graph bipartite with every colored edge crossing the bipartition."""
    F = X.flag_count
    doubled = []
    for p in X.perms:
        doubled.append(np.concatenate([p + F, p]))
    k, lab = P.components(doubled, 2 * F)
    return bool(lab[0] != lab[F])


def euler_characteristic(X):
    if X.rank != 3:
        raise RankNotThree("Euler characteristic is computed for rank 3", rank=X.rank)
    return faces(X, 0).count - faces(X, 1).count + faces(X, 2).count


def orientability_genus(X):
    if X.rank != 3:
        raise RankNotThree("genus is computed for rank 3", rank=X.rank)
    euler = euler_characteristic(X)
    if is_orientable(X):
        return {"orientable": True, "genus": (2 - euler) // 2, "euler": euler}
    return {"orientable": False, "crosscap": 2 - euler, "euler": euler}


# --- isomorphism -----------------------------------------------------------

def local_invariants(X):
    """Per-flag vector of the orbit sizes under ``<r_i, r_{i+1}>``."""
    cols = []
    for i in range(X.rank - 1):
        _, lab = P.components([X.perms[i], X.perms[i + 1]], X.flag_count)
        cols.append(np.bincount(lab)[lab])
    if not cols:
        return np.zeros((X.flag_count, 0), dtype=P.INDEX)
    return np.stack(cols, axis=1)


def invariant_codes(X, table=None):
    """Integer code per flag for its local invariant vector."""
    inv = local_invariants(X)
    if inv.shape[1] == 0:
        return np.zeros(X.flag_count, dtype=P.INDEX), {(): 0}
    rows = [tuple(r) for r in inv.tolist()]
    if table is None:
        table = {}
        for key in sorted(set(rows)):
            table[key] = len(table)
    codes = np.array([table.get(r, -1) for r in rows], dtype=P.INDEX)
    return codes, table


@dataclass
class _Extender:
    """BFS tree of a source flag graph, reusable across candidate images."""

    X: Premaniplex
    root: int = 0
    levels: list = field(init=False)

    def __post_init__(self):
        self.levels = P.bfs_levels(list(self.X.perms), self.root)

    def try_image(self, Y, image):
        img, bad = P.extend_map(list(self.X.perms), list(Y.perms), self.levels, self.root, image)
        if bad is not None:
            return None
        if np.bincount(img, minlength=Y.flag_count).max() != 1:
            return None
        return img


def isomorphic(M1, M2, target_orbits=None, candidates=None):
    """A color-preserving bijection ``M1 -> M2`` (image array) or ``None``.

    ``target_orbits`` may label the flags of ``M2`` by orbits of any known
    group of automorphisms; only one candidate per orbit is then tried.
    """
    if M1.rank != M2.rank:
        raise RankMismatch(f"ranks {M1.rank} and {M2.rank} differ", left=M1.rank, right=M2.rank)
    if M1.flag_count != M2.flag_count:
        return None
    codes2, table = invariant_codes(M2)
    codes1, _ = invariant_codes(M1, table)
    if (codes1 < 0).any():
        return None
    if not np.array_equal(np.sort(codes1), np.sort(codes2)):
        return None
    counts = np.bincount(codes2)
    # root in the rarest invariant class keeps the candidate list short
    rare = int(np.argmin(np.where(counts > 0, counts, counts.max() + 1)))
    root = int(np.nonzero(codes1 == rare)[0][0])
    cand = np.nonzero(codes2 == rare)[0]
    if candidates is not None:
        cand = np.intersect1d(cand, np.asarray(candidates, dtype=P.INDEX))
    if target_orbits is None and M2.flag_count > 2000 and cand.size > 64:
        from .analysis import automorphisms, orbit_labels
        target_orbits = orbit_labels(automorphisms(M2), M2.flag_count)
    if target_orbits is not None:
        _, first = np.unique(np.asarray(target_orbits)[cand], return_index=True)
        cand = cand[np.sort(first)]
    ext = _Extender(M1, root)
    for c in cand:
        img = ext.try_image(M2, int(c))
        if img is not None:
            return img
    return None


def is_isomorphism(M1, M2, img):
    img = np.asarray(img)
    if not P.is_permutation(img) or img.shape[0] != M2.flag_count:
        return False
    return all(np.array_equal(img[M1.perms[i]], M2.perms[i][img]) for i in range(M1.rank))


def _relabel_certificate(X, start):
    F, n = X.flag_count, X.rank
    perms = X.perms.tolist()
    new = {start: 0}
    order = [start]
    q = deque([start])
    while q:
        f = q.popleft()
        for c in range(n):
            g = perms[c][f]
            if g not in new:
                new[g] = len(order)
                order.append(g)
                q.append(g)
    return tuple(new[perms[c][f]] for f in order for c in range(n))


def canonical_form(X):
    """Certificate equal for two flag graphs iff they are isomorphic.

    Lexicographically least breadth-first relabeling; start flags are taken
    from the smallest local-invariant class, which is itself isomorphism
    invariant.
    """
    codes, _ = invariant_codes(X)
    starts = np.nonzero(codes == codes.min())[0]
    best = min(_relabel_certificate(X, int(s)) for s in starts)
    return (X.rank, X.flag_count, best)


# --- text format -----------------------------------------------------------

def serialize(X):
    lines = [f"maniplex {X.rank} {X.flag_count}"]
    for i in range(X.rank):
        lines.append(f"color {i}: " + " ".join(map(str, X.perms[i].tolist())))
    return "\n".join(lines) + "\n"


def parse(text, path=None, maniplex=None, start_line=1):
    lines = [(k, l) for k, l in enumerate(text.splitlines(), start_line)
             if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty maniplex file", None, path)
    k, head = lines[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "maniplex":
        raise ParseError("header must be 'maniplex <rank> <flag_count>'", k, path)
    try:
        rank, F = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("rank and flag count must be integers", k, path) from None
    if len(lines) != rank + 1:
        raise ParseError(f"expected {rank} color lines, found {len(lines) - 1}", k, path)
    perms = np.empty((rank, F), dtype=P.INDEX)
    for i, (k, line) in enumerate(lines[1:]):
        label, _, body = line.partition(":")
        if label.split() != ["color", str(i)]:
            raise ParseError(f"expected 'color {i}:'", k, path)
        try:
            vals = [int(t) for t in body.split()]
        except ValueError:
            raise ParseError("flag images must be integers", k, path) from None
        if len(vals) != F:
            raise ParseError(f"color {i} lists {len(vals)} images, expected {F}", k, path)
        perms[i] = vals
    return validate(rank, perms, maniplex=maniplex)


def read(path, maniplex=None):
    with open(path) as fh:
        return parse(fh.read(), path=str(path), maniplex=maniplex)


def write(X, path):
    with open(path, "w") as fh:
        fh.write(serialize(X))
