"""Voltage premaniplexes, derived covers, lifts of automorphisms and
voltage operators.

Convention: a dart ``(x, i)`` runs from flag ``x`` to ``r_i x``.  In the
derived graph the color-``i`` neighbour of ``(x, g)`` is
``(r_i x, xi(x, i) * g)`` where ``*`` is the group product in application
order (``a * b`` = ``a`` then ``b``).  The voltage of a path
``d_1, ..., d_k`` is therefore ``xi(d_k) * ... * xi(d_1)``, and the voltage
group acts on the derived graph by right multiplication in the second
coordinate.  Derived flag ``(x, g)`` gets id ``x * |G| + g``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import flags as FL
from . import perms as P
from .errors import (NotAutomorphism, NotFreeAction, ParseError, RankMismatch,
                     UnknownOperator, BadParams)
from .groups import close_group, homomorphism_well_defined
from .words import format_word, parse_word


class DisconnectedProduct(UserWarning):
    pass


# --- voltage premaniplexes -------------------------------------------------

@dataclass(eq=False)
class VoltagePremaniplex:
    base: FL.Premaniplex
    group: object
    xi: np.ndarray  # (rank, F) element ids

    def __post_init__(self):
        self.xi = np.asarray(self.xi, dtype=P.INDEX)
        if self.xi.shape != self.base.perms.shape:
            raise RankMismatch("voltage array must be rank x flags",
                               shape=tuple(self.xi.shape))

    @property
    def rank(self):
        return self.base.rank

    def voltage(self, x, i):
        return int(self.xi[i, x])

    def path_voltage(self, x, colors):
        """End flag and voltage of the path from ``x`` along ``colors`` (first color first)."""
        G, g = self.group, 0
        for c in colors:
            g = G.compose(int(self.xi[c, x]), g)
            x = int(self.base.perms[c][x])
        return x, g


def trivial_voltages(X, group=None):
    if group is None:
        group = close_group([], 0, degree=1)
    return VoltagePremaniplex(X, group, np.zeros(X.perms.shape, dtype=P.INDEX))


def voltages_from_darts(X, group, assignment):
    """Build ``xi`` from ``{(x, i): element}``; inverse darts get inverse voltages."""
    xi = np.zeros(X.perms.shape, dtype=P.INDEX)
    for (x, i), g in assignment.items():
        y = int(X.perms[i][x])
        xi[i, x] = g
        xi[i, y] = group.inverse(g) if y != x else g
    return VoltagePremaniplex(X, group, xi)


def check_voltages(V):
    """List of ``(condition, witness)`` pairs for every failed voltage-premaniplex axiom."""
    X, G, xi = V.base, V.group, V.xi
    problems = []
    F = X.flag_count
    for i in range(X.rank):
        for x in range(F):
            y = int(X.perms[i][x])
            if G.inverse(int(xi[i, x])) != int(xi[i, y]):
                problems.append(("inverse", (x, i)))
            if y == x and G.compose(int(xi[i, x]), int(xi[i, x])) != 0:
                problems.append(("semi_edge_order", (x, i)))
    for i in range(X.rank):
        for j in range(i + 1, X.rank):
            for x in np.nonzero(X.perms[i] == X.perms[j])[0].tolist():
                if xi[i, x] == xi[j, x]:
                    problems.append(("parallel", (x, i, j)))
    for i in range(X.rank):
        for j in range(i + 2, X.rank):
            for x in range(F):
                y, g = V.path_voltage(x, (i, j, i, j))
                if g != 0:
                    problems.append(("alternating_path", (x, i, j)))
    # spanning tree of trivial darts
    triv = [np.where(xi[i] == 0, X.perms[i], np.arange(F)) for i in range(X.rank)]
    k, _ = P.components(triv, F)
    if k != 1:
        problems.append(("trivial_spanning_tree", k))
    sub = close_group([G.right_mult_table(int(g)) for g in np.unique(xi)], 0,
                      check_free=False)
    if sub.order != G.order:
        problems.append(("generation", sub.order))
    return problems


# --- derived graphs --------------------------------------------------------

@dataclass(eq=False)
class CoverMap:
    total: FL.Premaniplex
    base: FL.Premaniplex
    group: object
    projection: np.ndarray
    fiber: np.ndarray

    def flag_id(self, x, g):
        return int(x) * self.group.order + int(g)

    def deck(self, h):
        """Image array of the deck transformation ``(x, g) -> (x, g * h)``."""
        n = self.group.order
        rm = self.group.right_mult_table(h)
        return (self.projection * n + rm[self.fiber]).astype(P.INDEX)

    def deck_generators(self):
        return [self.deck(self.group.generator(a)) for a in range(self.group.ngens)]


def derived_graph(V, maniplex=None):
    X, G = V.base, V.group
    N, F = G.order, X.flag_count
    perms = np.empty((X.rank, F * N), dtype=P.INDEX)
    for i in range(X.rank):
        for x in range(F):
            y = int(X.perms[i][x])
            perms[i, x * N:(x + 1) * N] = y * N + G.left_table(int(V.xi[i, x]))
    total = FL.validate(X.rank, perms, maniplex=maniplex)
    ids = np.arange(F * N, dtype=P.INDEX)
    return CoverMap(total, X, G, ids // N, ids % N)


def quotient(M, H):
    """Quotient of ``M`` by a group ``H`` of automorphisms acting freely.

    ``H`` is a :class:`FreeActionGroup` on the flags of ``M``.  Returns
    ``(V, labels)`` with ``V`` a voltage premaniplex over the orbit graph
    whose derived graph is isomorphic to ``M`` and ``labels`` the orbit of
    every flag.
    """
    F = M.flag_count
    k, labels = P.components(H.gens, F) if H.gens else (F, np.arange(F, dtype=P.INDEX))
    sizes = np.bincount(labels, minlength=k)
    if (sizes != H.order).any():
        bad = int(np.nonzero(sizes != H.order)[0][0])
        raise NotFreeAction(f"orbit {bad} has {sizes[bad]} flags, group order is {H.order}",
                            orbit=bad)
    _, reps = np.unique(labels, return_index=True)
    reps = reps.astype(P.INDEX)
    # elem[f] = the h with rep(orbit(f)) * h = f
    elem = np.full(F, -1, dtype=P.INDEX)
    levels = P.bfs_levels(H.gens, H.base) if H.gens else []
    for o in range(k):
        img, _ = P.extend_map(H.gens, H.gens, levels, H.base, int(reps[o]), check=False) \
            if H.gens else (np.array([reps[o]]), None)
        pts = H.orbit
        elem[img[pts]] = np.arange(H.order, dtype=P.INDEX)
    perms = labels[M.perms[:, reps]]
    X = FL.validate(M.rank, perms)
    xi = elem[M.perms[:, reps]]
    return VoltagePremaniplex(X, H, xi), labels


def _tree_voltages(V, image=None):
    """Voltages of the BFS-tree paths from flag 0, optionally along the image path under ``image``."""
    X, G = V.base, V.group
    levels = P.bfs_levels(list(X.perms), 0)
    T = np.zeros(X.flag_count, dtype=P.INDEX)
    Pimg = np.zeros(X.flag_count, dtype=P.INDEX)
    for level in levels:
        for nodes, parents, c in level:
            for y, p in zip(nodes.tolist(), parents.tolist()):
                T[y] = G.compose(int(V.xi[c, p]), int(T[p]))
                if image is not None:
                    Pimg[y] = G.compose(int(V.xi[c, image[p]]), int(Pimg[p]))
    return T, Pimg


def is_automorphism(X, tau):
    tau = np.asarray(tau)
    return (tau.shape == (X.flag_count,) and P.is_permutation(tau)
            and all(np.array_equal(tau[X.perms[i]], X.perms[i][tau]) for i in range(X.rank)))


def fundamental_pairs(V, tau):
    """Voltages of the fundamental closed walks at flag 0 and of their images under ``tau``."""
    X, G = V.base, V.group
    T, Pimg = _tree_voltages(V, tau)
    src, dst = [], []
    seen = {}
    for i in range(X.rank):
        for y in range(X.flag_count):
            z = int(X.perms[i][y])
            g = G.product(G.inverse(int(T[z])), int(V.xi[i, y]), int(T[y]))
            t = G.product(G.inverse(int(Pimg[z])), int(V.xi[i, tau[y]]), int(Pimg[y]))
            if g in seen:
                if seen[g] != t:
                    return None
                continue
            seen[g] = t
            src.append(g)
            dst.append(t)
    return src, dst


def lift_check(V, tau):
    """Whether the base automorphism ``tau`` lifts to the derived graph."""
    tau = np.asarray(tau, dtype=P.INDEX)
    if not is_automorphism(V.base, tau):
        raise NotAutomorphism("map does not commute with the flag adjacencies")
    pairs = fundamental_pairs(V, tau)
    if pairs is None:
        return False
    return homomorphism_well_defined(V.group, pairs[0], V.group, pairs[1])


def lift(cover, tau, target_element=0):
    """An automorphism of ``cover.total`` over ``tau`` (image array) or ``None``."""
    M = cover.total
    root = cover.flag_id(0, 0)
    img = FL._Extender(M, root).try_image(M, cover.flag_id(int(tau[0]), target_element))
    return img


# --- voltage operators -----------------------------------------------------

def reduce_word(word):
    """Reduced form in the universal string Coxeter group.

    Non-consecutive ``r_i`` commute and every ``r_i`` is an involution, so a
    letter cancels against the nearest equal letter to its left when only
    commuting letters sit in between; the result is empty exactly when the
    word acts trivially on every maniplex.
    """
    out = []
    for c in word:
        k = len(out) - 1
        while k >= 0 and abs(out[k] - c) >= 2:
            k -= 1
        if k >= 0 and out[k] == c:
            del out[k]
        else:
            out.append(c)
    return tuple(out)


@dataclass(eq=False)
class VoltageOperator:
    """An ``(n, m)``-operator: a rank-``m`` premaniplex with darts labeled by
    words in ``r_0..r_{n-1}``.  A word ``(a, b, c)`` stands for ``r_a r_b r_c``
    and acts on flags on the left (``r_c`` first)."""

    base: FL.Premaniplex
    eta: tuple  # eta[i][y] = word
    n: int
    name: str = ""

    @property
    def m(self):
        return self.base.rank

    def word(self, y, i):
        return self.eta[i][y]

    def check(self):
        Y = self.base
        for i in range(Y.rank):
            for y in range(Y.flag_count):
                z = int(Y.perms[i][y])
                if reduce_word(self.eta[i][z] + self.eta[i][y]) != ():
                    return False, (y, i)
                if any(not 0 <= c < self.n for c in self.eta[i][y]):
                    return False, (y, i)
        return True, None


def make_operator(Y, n, assignment, name=""):
    """Operator from ``{(y, i): word}``; unlisted darts get the empty word."""
    eta = [[() for _ in range(Y.flag_count)] for _ in range(Y.rank)]
    for (y, i), w in assignment.items():
        w = tuple(w)
        z = int(Y.perms[i][y])
        eta[i][y] = w
        eta[i][z] = w[::-1] if z != y else w
    return VoltageOperator(Y, tuple(tuple(e) for e in eta), n, name)


def _component(perms, root, what):
    F = perms.shape[1]
    k, lab = P.components(list(perms), F)
    if k == 1:
        return perms, np.arange(F, dtype=P.INDEX)
    warnings.warn(f"{what} is disconnected ({k} components); keeping the one of flag {root}",
                  DisconnectedProduct, stacklevel=3)
    keep = np.nonzero(lab == lab[root])[0]
    new = np.full(F, -1, dtype=P.INDEX)
    new[keep] = np.arange(keep.shape[0])
    return new[perms[:, keep]], keep


def operator_apply(X, O, return_ids=False):
    """``X ⋊ Y``: flags ``(x, y)`` with id ``x*|Y| + y`` and
    ``r_i (x, y) = (eta(^i y) x, r_i y)``."""
    if X.rank != O.n:
        raise RankMismatch(f"operator expects rank {O.n}, got {X.rank}", expected=O.n, got=X.rank)
    Y = O.base
    nY, F = Y.flag_count, X.flag_count
    cache = {}
    perms = np.empty((Y.rank, F * nY), dtype=P.INDEX)
    xs = np.arange(F, dtype=P.INDEX)
    for i in range(Y.rank):
        for y in range(nY):
            w = O.eta[i][y]
            if w not in cache:
                cache[w] = X.monodromy(w)
            perms[i, xs * nY + y] = cache[w] * nY + int(Y.perms[i][y])
    perms, ids = _component(perms, 0, "operator product")
    out = FL.validate(Y.rank, perms)
    return (out, ids) if return_ids else out


def operator_theta(V, O):
    """Voltage assignment on ``X ⋊ Y`` whose derived graph is
    ``derived(V) ⋊ Y``: the voltage of ``^i(x, y)`` is the ``xi``-voltage of
    the path that follows ``eta(^i y)`` from ``x``."""
    XY, ids = operator_apply(V.base, O, return_ids=True)
    nY = O.base.flag_count
    xi = np.empty(XY.perms.shape, dtype=P.INDEX)
    for i in range(XY.rank):
        for k, fid in enumerate(ids.tolist()):
            x, y = divmod(fid, nY)
            _, g = V.path_voltage(x, tuple(reversed(O.eta[i][y])))
            xi[i, k] = g
    return VoltagePremaniplex(XY, V.group, xi)


def operator_compose(O1, O2):
    """Operator equivalent to applying ``O1`` then ``O2``."""
    if O1.m != O2.n:
        raise RankMismatch(f"ranks do not chain: {O1.m} vs {O2.n}", left=O1.m, right=O2.n)
    Y1 = O1.base
    Y12, ids = operator_apply(Y1, O2, return_ids=True)
    n2 = O2.base.flag_count
    eta = [[None] * Y12.flag_count for _ in range(Y12.rank)]
    for i in range(Y12.rank):
        for k, fid in enumerate(ids.tolist()):
            y1, y2 = divmod(fid, n2)
            word = ()
            for c in reversed(O2.eta[i][y2]):
                word = O1.eta[c][y1] + word
                y1 = int(Y1.perms[c][y1])
            eta[i][k] = reduce_word(word)
    return VoltageOperator(Y12, tuple(tuple(e) for e in eta), O1.n,
                           f"{O2.name}∘{O1.name}" if O1.name or O2.name else "")


# --- built-in operators ----------------------------------------------------

def _one_flag(rank):
    return FL.validate(rank, np.zeros((rank, 1), dtype=P.INDEX))


def identity_operator(n):
    return make_operator(_one_flag(n), n, {(0, i): (i,) for i in range(n)}, "identity")


def _polygon_operator(p, semi, words, extra=None, name=""):
    from .constructions import polygon
    base = polygon(p)
    perms = np.array(base.perms)
    r2 = np.arange(2 * p, dtype=P.INDEX) if semi else perms[0].copy()
    Y = FL.validate(3, np.vstack([perms, r2[None]]))
    assign = {}
    for m in range(p):
        assign[(2 * m, 2)] = words[m]
        assign[(2 * m + 1, 2)] = words[m]
    if extra:
        assign.update(extra)
    return Y, assign


def builtin_operator(name, *params):
    """Named operators: ``dual(n)``, ``petrial``, ``opposite``, ``identity(n)``,
    ``family1(n)``, ``family1_prime(n)``, ``family2(k)``, ``family2_prime(k)``."""
    def need(count):
        if len(params) != count or any(int(p) != p for p in params):
            raise BadParams(f"{name} takes {count} integer parameter(s)", operator=name)

    if name == "dual":
        need(1)
        n = int(params[0])
        if n < 1:
            raise BadParams("rank must be positive", operator=name)
        return make_operator(_one_flag(n), n, {(0, i): (n - 1 - i,) for i in range(n)}, f"dual({n})")
    if name == "identity":
        need(1)
        return identity_operator(int(params[0]))
    if name == "petrial":
        need(0)
        return make_operator(_one_flag(3), 3, {(0, 0): (2, 0), (0, 1): (1,), (0, 2): (2,)}, "petrial")
    if name == "opposite":
        need(0)
        return make_operator(_one_flag(3), 3, {(0, 0): (0,), (0, 1): (1,), (0, 2): (0, 2)}, "opposite")
    if name in ("family1", "family1_prime"):
        need(1)
        n = int(params[0])
        if n < 2:
            raise BadParams("family 1 needs n >= 2", operator=name)
        Y, assign = _polygon_operator(n, name.endswith("prime"), [(m,) for m in range(n)])
        return make_operator(Y, n, assign, f"{name}({n})")
    if name in ("family2", "family2_prime"):
        need(1)
        k = int(params[0])
        if k < 1:
            raise BadParams("family 2 needs k >= 1", operator=name)
        p = 2 * k
        # color-1 edge closing the cycle (R_{p-1} -- L_0) carries r_0
        Y, assign = _polygon_operator(p, name.endswith("prime"), [(m + 1,) for m in range(p)],
                                      extra={(2 * p - 1, 1): (0,)})
        return make_operator(Y, 2 * k + 1, assign, f"{name}({k})")
    raise UnknownOperator(f"unknown operator {name!r}", name=name)


def parse_operator_spec(text):
    """``'dual:3'``, ``'family1:3'``, ``'petrial'`` -> operator."""
    name, _, rest = text.partition(":")
    params = [int(p) for p in rest.split(",") if p] if rest else []
    try:
        return builtin_operator(name.strip(), *params)
    except ValueError:
        raise BadParams(f"bad operator parameters in {text!r}") from None


# --- .vpx text format ------------------------------------------------------

def serialize_vpx(V):
    G = V.group
    lines = [FL.serialize(V.base).rstrip("\n"), f"group: {G.index.shape[0]}"]
    for name, g in zip(G.names, G.gens):
        lines.append(f"{name}: " + " ".join(map(str, g.tolist())))
    lines.append("voltages:")
    X = V.base
    for i in range(X.rank):
        for x in range(X.flag_count):
            y = int(X.perms[i][x])
            if y < x or V.xi[i, x] == 0:
                continue
            lines.append(f"{x} {i} {G.format(int(V.xi[i, x]))}")
    return "\n".join(lines) + "\n"


def parse_vpx(text, path=None):
    lines = text.splitlines()
    try:
        gi = next(k for k, l in enumerate(lines) if l.strip().startswith("group:"))
        vi = next(k for k, l in enumerate(lines) if l.strip() == "voltages:")
    except StopIteration:
        raise ParseError("voltage file needs 'group:' and 'voltages:' blocks", None, path) from None
    X = FL.parse("\n".join(lines[:gi]), path=path)
    try:
        degree = int(lines[gi].split(":", 1)[1])
    except ValueError:
        raise ParseError("group degree must be an integer", gi + 1, path) from None
    names, gens = [], []
    for k in range(gi + 1, vi):
        line = lines[k].split("#", 1)[0].strip()
        if not line:
            continue
        name, _, body = line.partition(":")
        try:
            arr = np.array([int(t) for t in body.split()], dtype=P.INDEX)
        except ValueError:
            raise ParseError("generator images must be integers", k + 1, path) from None
        if arr.shape[0] != degree or not P.is_permutation(arr):
            raise ParseError(f"generator {name.strip()} is not a permutation of degree {degree}",
                             k + 1, path)
        names.append(name.strip())
        gens.append(arr)
    G = close_group(gens, 0, names)
    xi = np.zeros(X.perms.shape, dtype=P.INDEX)
    for k in range(vi + 1, len(lines)):
        line = lines[k].split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) < 3:
            raise ParseError("voltage lines read 'vertex color word'", k + 1, path)
        try:
            x, i = int(parts[0]), int(parts[1])
            word = parse_word(parts[2], G.names)
        except ParseError as exc:
            raise ParseError(exc.reason, k + 1, path) from None
        except ValueError:
            raise ParseError("vertex and color must be integers", k + 1, path) from None
        if not (0 <= x < X.flag_count and 0 <= i < X.rank):
            raise ParseError("dart outside the base graph", k + 1, path)
        if any(l & 1 for l in word):
            g = 0
            for l in word:
                gen = G.generator(l >> 1)
                g = G.compose(g, G.inverse(gen) if l & 1 else gen)
        else:
            g = G.word_element(word)
        y = int(X.perms[i][x])
        xi[i, x] = g
        xi[i, y] = G.inverse(g) if y != x else g
    return VoltagePremaniplex(X, G, xi)


def read_vpx(path):
    with open(path) as fh:
        return parse_vpx(fh.read(), path=str(path))


def write_vpx(V, path):
    with open(path, "w") as fh:
        fh.write(serialize_vpx(V))


__all__ = [n for n in dir() if not n.startswith("_")] + ["format_word"]
