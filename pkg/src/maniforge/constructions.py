"""Catalog premaniplexes, regular and chiral polytopes from presentations, and
the semiregular constructions built on them.

Polygon flag numbering: the ``m``-th edge ``e_m`` of a ``p``-gon holds the
left flag ``L_m = 2m`` and the right flag ``R_m = 2m + 1``; ``r_0`` swaps
them and ``r_1`` joins ``R_m`` to ``L_{m+1}``.
"""

import itertools
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import analysis as A
from . import flags as FL
from . import perms as P
from .errors import (BadParams, FacetsNotIsomorphic, NotChiral, RankMismatch, RankNotOdd,
                     SigmaNotCentral, XZeroDisconnected)
from .groups import close_group, group_from_coset_table, is_central_involution
from .todd_coxeter import coxeter_presentation, parse_presentation, todd_coxeter
from .voltage import VoltagePremaniplex, derived_graph, voltages_from_darts


class PreconditionWarning(UserWarning):
    pass


# --- catalog ---------------------------------------------------------------

def _polygon_perms(p):
    F = 2 * p
    f = np.arange(F, dtype=P.INDEX)
    r0 = f ^ 1
    r1 = np.where(f % 2 == 1, (f + 1) % F, (f - 1) % F)
    return r0, r1


def polygon(p):
    if p < 1:
        raise BadParams("a polygon needs at least one side", p=p)
    return FL.validate(2, np.stack(_polygon_perms(p)))


def one_n(n):
    return FL.validate(n, np.zeros((n, 1), dtype=P.INDEX))


def two_n_I(n, I=()):
    """Two flags joined by an edge of every color outside ``I``; semi-edges for colors in ``I``."""
    I = set(int(i) for i in I)
    if any(not 0 <= i < n for i in I):
        raise BadParams("colors in I must lie in 0..n-1", n=n)
    perms = np.array([[0, 1] if i in I else [1, 0] for i in range(n)], dtype=P.INDEX)
    return FL.validate(n, perms)


def family1_pm(n):
    """``n``-gon with color-2 edges parallel to the color-0 edges."""
    if n < 2:
        raise BadParams("family 1 needs n >= 2", n=n)
    r0, r1 = _polygon_perms(n)
    return FL.validate(3, np.stack([r0, r1, r0]))


def family2_pm(n):
    """``n``-gon (``4 | n``) whose color-2 edges join ``L_m`` to ``R_{m+n/2}``."""
    if n < 4 or n % 4:
        raise BadParams("family 2 needs n divisible by 4", n=n)
    r0, r1 = _polygon_perms(n)
    h = n // 2
    f = np.arange(2 * n, dtype=P.INDEX)
    m = f // 2
    r2 = np.where(f % 2 == 0, 2 * ((m + h) % n) + 1, 2 * ((m + h) % n))
    return FL.validate(3, np.stack([r0, r1, r2]))


def sporadic_Xs():
    """Digon with color-2 edges joining opposite flags."""
    r0, r1 = _polygon_perms(2)
    r2 = np.array([2, 3, 0, 1], dtype=P.INDEX)
    return FL.validate(3, np.stack([r0, r1, r2]))


def hosohedron(k):
    if k < 2:
        raise BadParams("hosohedron needs k >= 2", k=k)
    return regular_polytope([2, k]).maniplex


def hemi_hosohedron(k):
    """``{2, 2k}/2`` on ``4k`` flags."""
    if k < 1:
        raise BadParams("hemi-hosohedron needs k >= 1", k=k)
    F = 4 * k
    f = np.arange(F, dtype=P.INDEX)
    r0 = (f + 2 * k) % F
    r1 = f ^ 1
    r2 = np.where(f % 2 == 1, (f + 1) % F, (f - 1) % F)
    return FL.validate(3, np.stack([r0, r1, r2]))


CATALOG = {
    "polygon": polygon,
    "one_n": one_n,
    "two_n_I": two_n_I,
    "family1_pm": family1_pm,
    "family2_pm": family2_pm,
    "sporadic_Xs": sporadic_Xs,
    "hosohedron": hosohedron,
    "hemi_hosohedron": hemi_hosohedron,
}


def catalog(name, *params):
    if name not in CATALOG:
        raise BadParams(f"unknown catalog entry {name!r}", name=name)
    try:
        return CATALOG[name](*params)
    except TypeError as exc:
        raise BadParams(f"bad parameters for {name}: {exc}", name=name) from None


# --- regular polytopes -----------------------------------------------------

@dataclass(eq=False)
class RegularPolytope:
    """Regular maniplex whose flag ``k`` is the image of the base flag under
    group element ``k``; ``rho[i]`` maps the base flag to its ``i``-adjacent flag."""

    maniplex: FL.Maniplex
    group: object
    rho: list

    @property
    def rank(self):
        return self.maniplex.rank

    def automorphism(self, g):
        return self.group.right_mult_table(g)


def _left_mult_flags(G, elems, n):
    return FL.validate(n, np.stack([G.left_table(g) for g in elems]))


def regular_polytope(schlafli=None, presentation=None, max_cosets=None):
    """Regular polytope from a Schläfli symbol or a presentation on ``rho_0..``.

    Flags are group elements; ``r_i`` is left multiplication by ``rho_i``.
    """
    if presentation is None:
        presentation = coxeter_presentation(list(schlafli))
    table = todd_coxeter(presentation, max_cosets=max_cosets)
    G = group_from_coset_table(table)
    rho = [G.generator(i) for i in range(G.ngens)]
    return RegularPolytope(_left_mult_flags(G, rho, G.ngens), G, rho)


def regular_from_maniplex(M):
    """Relabel a regular maniplex so flags are elements of its automorphism group."""
    root = 0
    ext = FL._Extender(M, root)
    gens = []
    for i in range(M.rank):
        img = ext.try_image(M, int(M.perms[i][root]))
        if img is None:
            raise BadParams("maniplex is not regular", color=i)
        gens.append(img)
    G = close_group(gens, root, [f"rho{i}" for i in range(M.rank)], check_free=False,
                    degree=M.flag_count)
    if G.order != M.flag_count:
        raise BadParams("maniplex is not regular", orbits=M.flag_count // G.order)
    rho = [G.generator(i) for i in range(M.rank)]
    return RegularPolytope(_left_mult_flags(G, rho, M.rank), G, rho)


# --- chiral polytopes ------------------------------------------------------

@dataclass(eq=False)
class ChiralPolytope:
    """Chiral polytope as the derived graph of ``2^n_∅`` under ``nu(^i a) = tau_i``.

    ``taus[i]`` is ``tau_i`` (``tau_0`` the identity); with base flag
    ``Phi = (b, 1)`` one has ``Phi tau_i = r_i r_0 Phi``.
    """

    maniplex: FL.Maniplex
    group: object
    taus: list
    voltage: VoltagePremaniplex
    cover: object

    @property
    def rank(self):
        return self.maniplex.rank

    @property
    def base_flag(self):
        return self.cover.flag_id(1, 0)


def taus_from_sigmas(G, sigmas):
    """``tau_i = sigma_i^{-1} ... sigma_1^{-1}`` (``sigma_i^{-1}`` applied first)."""
    taus = [0]
    acc = 0
    for s in sigmas:
        acc = G.compose(G.inverse(s), acc)
        taus.append(acc)
    return taus


def chiral_from_taus(G, taus, check=True):
    n = len(taus)
    Z = two_n_I(n, ())
    xi = np.zeros((n, 2), dtype=P.INDEX)
    for i, t in enumerate(taus):
        xi[i, 0] = t
        xi[i, 1] = G.inverse(t)
    V = VoltagePremaniplex(Z, G, xi)
    cover = derived_graph(V)
    M = cover.total
    if not M.is_maniplex:
        raise NotChiral(f"derived graph is not a maniplex: {M.maniplex_defect.oneline()}")
    if check:
        base = cover.flag_id(1, 0)
        if FL._Extender(M, base).try_image(M, int(M.perms[0][base])) is not None:
            raise NotChiral("the derived maniplex is regular")
    return ChiralPolytope(M, G, list(taus), V, cover)


def chiral_polytope(presentation=None, sigma_names=None, max_cosets=None, check=True):
    """Chiral polytope from a presentation whose generators are ``sigma_1..sigma_{n-1}``."""
    table = todd_coxeter(presentation, max_cosets=max_cosets)
    G = group_from_coset_table(table)
    names = sigma_names or G.names
    sigmas = [G.generator(G.names.index(s)) for s in names]
    return chiral_from_taus(G, taus_from_sigmas(G, sigmas), check)


def chiral_from_maniplex(M, base=0):
    """Chiral data from a chiral maniplex: ``tau_i`` maps ``base`` to ``r_i r_0 base``."""
    ext = FL._Extender(M, base)
    gens = []
    for i in range(1, M.rank):
        img = ext.try_image(M, int(M.perms[i][M.perms[0][base]]))
        if img is None:
            raise NotChiral("missing rotation automorphism", color=i)
        gens.append(img)
    if ext.try_image(M, int(M.perms[0][base])) is not None:
        raise NotChiral("maniplex is regular")
    G = close_group(gens, base, [f"tau{i}" for i in range(1, M.rank)], check_free=False,
                    degree=M.flag_count)
    if 2 * G.order != M.flag_count:
        raise NotChiral("rotation group does not have two flag orbits",
                        orbits=M.flag_count // G.order)
    taus = [0] + [G.generator(i) for i in range(M.rank - 1)]
    return chiral_from_taus(G, taus, check=False)


def bundled_presentation(name):
    """Presentation shipped in ``maniforge/data`` (``name`` without ``.grp``)."""
    fname = f"{name}.grp"
    text = resources.files("maniforge.data").joinpath(fname).read_text()
    return parse_presentation(text, path=fname)


def example_4_20_presentation():
    return bundled_presentation("example_4_20")


def example_4_20(max_cosets=None):
    return chiral_polytope(example_4_20_presentation(), max_cosets=max_cosets)


def chiral_torus_4_4_1_2():
    """The chiral map ``{4,4}_(1,2)`` (40 flags)."""
    return chiral_polytope(bundled_presentation("chiral_4_4_1_2"))


# --- construction preconditions -------------------------------------------

@dataclass
class ConstructionPreconditions:
    non_degenerate: bool = None
    non_self_dual: bool = None
    simple_petrie: bool = None
    rank_parity: bool = None
    k_bound: bool = None
    witnesses: dict = field(default_factory=dict)

    def failed(self):
        return [k for k in ("non_degenerate", "non_self_dual", "simple_petrie",
                            "rank_parity", "k_bound") if getattr(self, k) is False]

    def as_dict(self):
        return {k: getattr(self, k) for k in ("non_degenerate", "non_self_dual",
                                              "simple_petrie", "rank_parity", "k_bound")}


@dataclass(eq=False)
class ConstructionResult:
    maniplex: FL.Maniplex
    voltage: VoltagePremaniplex
    cover: object
    preconditions: ConstructionPreconditions
    notes: dict = field(default_factory=dict)


def _warn_failed(pre, what):
    for name in pre.failed():
        warnings.warn(f"{what}: precondition {name} fails ({pre.witnesses.get(name)})",
                      PreconditionWarning, stacklevel=3)


def _petrie_degeneracy(M, pre):
    deg, wit = FL.is_degenerate(M)
    pre.non_degenerate = not deg
    if deg:
        pre.witnesses["non_degenerate"] = wit
    pr = FL.petrie_polygons(M)
    pre.simple_petrie = pr.all_simple
    pre.witnesses["petrie_lengths"] = pr.lengths_histogram()
    if not pr.all_simple:
        orbit = int(np.nonzero(~np.asarray(pr.simple))[0][0])
        pre.witnesses["simple_petrie"] = f"petrie polygon {orbit} is not simple"
    return pr


def family1_voltages(P_, n=None):
    """Family-1 voltage graph: color-2 darts at ``e_m`` carry ``rho_m``."""
    n = P_.rank if n is None else n
    X = family1_pm(n)
    assign = {(2 * m, 2): P_.rho[m] for m in range(n)}
    return voltages_from_darts(X, P_.group, assign)


def build_family1(P_):
    """Family-1 polyhedron from a regular ``n``-polytope (``RegularPolytope``)."""
    M = P_.maniplex
    pre = ConstructionPreconditions(rank_parity=True, k_bound=True)
    pr = _petrie_degeneracy(M, pre)
    pre.non_self_dual = FL.isomorphic(M, FL.dual(M), candidates=[0]) is None
    _warn_failed(pre, "family 1")
    V = family1_voltages(P_)
    cover = derived_graph(V)
    ell = sorted(set(pr.lengths.tolist()))
    return ConstructionResult(cover.total, V, cover, pre,
                              {"petrie_lengths": ell, "expected_vertex_degree": [M.rank * l for l in ell]})


def family2_voltages(C):
    """Family-2 voltage graph over a chiral ``(2k+1)``-polytope.

    Color-2 darts leaving ``e_m`` carry ``tau_{m+1}`` for ``m < 2k`` and
    ``tau_{m-2k+1}^{-1}`` for ``m >= 2k``.
    """
    n = C.rank
    k = (n - 1) // 2
    X = family2_pm(4 * k)
    G = C.group
    xi = np.zeros((3, 8 * k), dtype=P.INDEX)
    for m in range(4 * k):
        g = C.taus[m + 1] if m < 2 * k else G.inverse(C.taus[m - 2 * k + 1])
        xi[2, 2 * m] = g
        xi[2, 2 * m + 1] = g
    return VoltagePremaniplex(X, G, xi)


def build_family2(C):
    """Family-2 polyhedron with ``4k``-gonal faces from a chiral ``(2k+1)``-polytope."""
    n = C.rank
    if n % 2 == 0:
        raise RankNotOdd(f"family 2 needs odd rank, got {n}", rank=n)
    k = (n - 1) // 2
    pre = ConstructionPreconditions(rank_parity=True, k_bound=k >= 2)
    if k < 2:
        pre.witnesses["k_bound"] = k
    pr = _petrie_degeneracy(C.maniplex, pre)
    _warn_failed(pre, "family 2")
    V = family2_voltages(C)
    cover = derived_graph(V)
    ell = sorted(set(pr.lengths.tolist()))
    expected = [2 * k * l if l % 2 == 0 else 4 * k * l for l in ell]
    return ConstructionResult(cover.total, V, cover, pre,
                              {"petrie_lengths": ell, "expected_vertex_degree": expected})


def alternating_voltages(C):
    """Two ``n``-gons joined by crossed color-2 edges; ``tau_m`` leaves the outer ``e_m``."""
    n = C.rank
    G = C.group
    r0, r1 = _polygon_perms(n)
    F = 2 * n
    r2 = np.empty(2 * F, dtype=P.INDEX)
    f = np.arange(F)
    r2[:F] = F + (f ^ 1)
    r2[F:] = f ^ 1
    perms = np.stack([np.concatenate([r0, r0 + F]), np.concatenate([r1, r1 + F]), r2])
    X = FL.validate(3, perms)
    xi = np.zeros((3, 2 * F), dtype=P.INDEX)
    for m in range(n):
        t = C.taus[m]
        for f0 in (2 * m, 2 * m + 1):
            xi[2, f0] = t
            xi[2, F + (f0 ^ 1)] = G.inverse(t)
    return VoltagePremaniplex(X, G, xi)


def build_alternating(C, duality=None):
    """Alternating semiregular polyhedron from a chiral polytope; the report
    carries the duality type of ``C`` and the facet-orbit structure."""
    V = alternating_voltages(C)
    cover = derived_graph(V)
    M = cover.total
    aut = A.automorphisms_of_cover(cover, V)
    stg = A.symmetry_type_graph(M, aut)
    tr = A.transitivity_report(M, aut, stg)
    if duality is None:
        duality = A.self_duality(C.maniplex, A.automorphisms(
            C.maniplex, known=C.cover.deck_generators(), root=C.base_flag))
    notes = {
        "facet_orbits": tr["face_orbits"][-1],
        "vertex_orbits": tr["face_orbits"][0],
        "edges_alternate": A.facets_alternate(M, stg),
        "facet_stabilizer_orders": tr["facet_stabilizer_orders"],
        "trivial_facet_stabilizer": tr["trivial_facet_stabilizer"],
        "duality": duality,
        "flag_orbits": stg.orbit_count,
        "automorphism_group_order": aut.order,
    }
    pre = ConstructionPreconditions(non_self_dual=duality == A.NOT_SELF_DUAL)
    return ConstructionResult(M, V, cover, pre, notes)


# --- higher rank -----------------------------------------------------------

def _restrict(M, colors, keep):
    new = np.full(M.flag_count, -1, dtype=P.INDEX)
    new[keep] = np.arange(keep.shape[0])
    return FL.validate(len(colors), new[M.perms[list(colors)][:, keep]]), new


def higher_rank_premaniplex(M, sigma):
    """Add color ``n`` to the regular ``n``-maniplex ``M`` by ``r_n = tau_F sigma tau_F^{-1}``
    inside each facet ``F``; ``sigma`` is an automorphism of the base facet
    (image array on its flags, base facet = the one containing flag 0)."""
    n = M.rank
    facets = FL.faces(M, n - 1).component_id
    keep0 = np.nonzero(facets == facets[0])[0]
    K, _ = _restrict(M, range(n - 1), keep0)
    rn = np.empty(M.flag_count, dtype=P.INDEX)
    Mf_perms = list(M.perms[: n - 1])
    levels = P.bfs_levels(list(K.perms), 0)
    for fid in range(int(facets.max()) + 1):
        keep = np.nonzero(facets == fid)[0]
        # isomorphism base facet -> this facet, extended from flag 0 of K
        tau = None
        for c in keep.tolist():
            img, bad = P.extend_map(list(K.perms), Mf_perms, levels, 0, c)
            if bad is None and np.unique(img).shape[0] == K.flag_count:
                tau = img
                break
        if tau is None:
            raise FacetsNotIsomorphic(f"facet {fid} is not isomorphic to facet 0", facet=fid)
        # Phi in F: tau^{-1} Phi, apply sigma, map back
        inv = np.full(M.flag_count, -1, dtype=P.INDEX)
        inv[tau] = np.arange(K.flag_count)
        rn[keep] = tau[sigma[inv[keep]]]
    return FL.validate(n + 1, np.vstack([M.perms, rn[None]]))


def build_higher_rank(M_reg, sigma, P_):
    """Rank-``n+1`` maniplex from a regular ``n``-maniplex, a central involution
    ``sigma`` of its facet group (element of ``facet_group(M_reg)``) and a regular
    ``N``-polytope with ``N`` = number of facets of ``M_reg``."""
    M = M_reg.maniplex if isinstance(M_reg, RegularPolytope) else M_reg
    n = M.rank
    Kp, _ = facet_group(M)
    if not is_central_involution(sigma, Kp.group):
        raise SigmaNotCentral("sigma must be a non-trivial central involution of the facet group")
    facets = FL.faces(M, n - 1)
    N = facets.count
    if P_.rank != N:
        raise RankMismatch(f"need a regular {N}-polytope, got rank {P_.rank}",
                           expected=N, got=P_.rank)
    sig = Kp.automorphism(sigma)
    # Kp's flags are relabeled facet flags; express sigma on the facet of flag 0
    keep0 = np.nonzero(facets.component_id == facets.component_id[0])[0]
    K, _ = _restrict(M, range(n - 1), keep0)
    iso = FL.isomorphic(Kp.maniplex, K, candidates=[0])
    sigma_K = np.empty(K.flag_count, dtype=P.INDEX)
    sigma_K[iso] = iso[sig]
    X = higher_rank_premaniplex(M, sigma_K)
    X0 = FL.faces(X, 0)
    if X0.count != 1:
        raise XZeroDisconnected("X without color 0 is disconnected", components=X0.count)
    if _self_dual(P_) and _reverses_facets(X, facets.component_id):
        raise BadParams("P is self-dual and X has a facet-reversing automorphism")
    xi = np.zeros(X.perms.shape, dtype=P.INDEX)
    fid = facets.component_id
    xi[n] = np.asarray(P_.rho)[fid]
    V = VoltagePremaniplex(X, P_.group, xi)
    cover = derived_graph(V)
    out = cover.total
    notes = {"base": X, "facets": N,
             "polytope": A.check_polytopality(out).is_polytope if out.is_maniplex else False,
             "maniplex": out.is_maniplex}
    return ConstructionResult(out, V, cover, ConstructionPreconditions(), notes)


def facet_group(M):
    """Base facet of a regular maniplex as a ``RegularPolytope``."""
    n = M.rank
    lab = FL.faces(M, n - 1).component_id
    keep = np.nonzero(lab == lab[0])[0]
    K, _ = _restrict(M, range(n - 1), keep)
    return regular_from_maniplex(K), keep


def _self_dual(P_):
    M = P_.maniplex
    return FL.isomorphic(M, FL.dual(M), candidates=[0]) is not None


def _reverses_facets(X, fid):
    N = int(fid.max()) + 1
    aut = A.automorphisms(X)
    for k in range(aut.order):
        g = aut.as_permutation(k)
        if all(fid[g[np.nonzero(fid == i)[0][0]]] == N - 1 - i for i in range(N)):
            return True
    return False


# --- exhaustive checks -----------------------------------------------------

def _involutions(points):
    """All involutions (fixed points allowed) on ``points`` as dicts."""
    if not points:
        yield {}
        return
    a, rest = points[0], points[1:]
    for sub in _involutions(rest):
        d = dict(sub)
        d[a] = a
        yield d
    for j, b in enumerate(rest):
        others = rest[:j] + rest[j + 1:]
        for sub in _involutions(others):
            d = dict(sub)
            d[a] = b
            d[b] = a
            yield d


def regular_premaniplex_search(max_flags=12):
    """All regular 3-premaniplexes with a polygon after removing color 2 and
    connected after removing color 0, up to ``max_flags`` flags, one per
    isomorphism class."""
    found = {}
    for p in range(2, max_flags // 2 + 1):
        r0, r1 = _polygon_perms(p)
        F = 2 * p
        r0l = r0.tolist()
        for inv in _involutions(list(range(F))):
            r2 = [inv[x] for x in range(F)]
            if any(r2[r0l[x]] != r0l[r2[x]] for x in range(F)):
                continue
            perms = np.stack([r0, r1, np.array(r2, dtype=P.INDEX)])
            if P.components([perms[1], perms[2]], F)[0] != 1:
                continue
            X = FL.validate(3, perms)
            if A.automorphisms(X).order != F:
                continue
            key = FL.canonical_form(X)
            found.setdefault(key, X)
    return list(found.values())


def identify_regular_premaniplex(X):
    """Name of the family-1 / family-2 / sporadic premaniplex isomorphic to ``X``."""
    p = X.flag_count // 2
    cands = [(f"family1_pm({p})", lambda: family1_pm(p))]
    if p % 4 == 0:
        cands.append((f"family2_pm({p})", lambda: family2_pm(p)))
    if p == 2:
        cands.append(("sporadic_Xs", sporadic_Xs))
    for name, build in cands:
        if FL.isomorphic(X, build()) is not None:
            return name
    return None


def _digon_frame(digons):
    F = 4 * digons
    base = np.arange(F, dtype=P.INDEX)
    r0 = base ^ 1
    # digon d holds flags 4d..4d+3 with r1 = (4d+1 4d+2)(4d+3 4d)
    r1 = np.select([base % 4 == 0, base % 4 == 1, base % 4 == 2], [base + 3, base + 1, base - 1],
                   base - 3)
    return r0, r1


def _perfect_matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for j in range(1, len(items)):
        for rest in _perfect_matchings(items[1:j] + items[j + 1:]):
            yield [(a, items[j])] + rest


def digonal_color2_candidates(digons):
    """Every color-2 involution making a 3-maniplex out of ``digons`` digons.

    ``r_2`` must commute with ``r_0``, so it matches ``r_0``-pairs with each
    other (a pair matched to itself would give a semi-edge or an edge parallel
    to ``r_0``); each matched couple of pairs can be joined in two ways.  Rows
    with an edge parallel to ``r_1`` or a disconnected flag graph are dropped.
    """
    r0, r1 = _digon_frame(digons)
    F = 4 * digons
    mts = np.array(list(_perfect_matchings(list(range(2 * digons)))), dtype=P.INDEX)
    bits = np.array(list(itertools.product((0, 1), repeat=digons)), dtype=P.INDEX)
    R = mts.shape[0] * bits.shape[0]
    a = np.repeat(mts[:, :, 0], bits.shape[0], axis=0)
    b = np.repeat(mts[:, :, 1], bits.shape[0], axis=0)
    t = np.tile(bits, (mts.shape[0], 1))
    r2 = np.empty((R, F), dtype=P.INDEX)
    rows = np.arange(R)[:, None]
    r2[rows, 2 * a] = 2 * b + t
    r2[rows, 2 * a + 1] = 2 * b + 1 - t
    r2[rows, 2 * b + t] = 2 * a
    r2[rows, 2 * b + 1 - t] = 2 * a + 1
    r2 = r2[~(r2 == r1[None]).any(axis=1)]
    # connectivity by label propagation
    lab = np.tile(np.arange(F, dtype=P.INDEX), (r2.shape[0], 1))
    while True:
        new = np.minimum(lab, lab[:, r0])
        new = np.minimum(new, new[:, r1])
        new = np.minimum(new, np.take_along_axis(new, r2, axis=1))
        if np.array_equal(new, lab):
            break
        lab = new
    return r2[(lab == 0).all(axis=1)]


def _batch_isomorphic_to(T, r0, r1, r2s, chunk=20000):
    """For each row of ``r2s``, whether ``(r0, r1, row)`` is isomorphic to ``T``."""
    F = T.flag_count
    levels = P.bfs_levels(list(T.perms), 0)
    out = np.zeros(r2s.shape[0], dtype=bool)
    for lo in range(0, r2s.shape[0], chunk):
        R2 = r2s[lo:lo + chunk]
        B = R2.shape[0]
        # every (row, start) pair: rows repeated F times, starts cycling
        R2b = np.repeat(R2, F, axis=0)
        img = np.full((B * F, F), -1, dtype=P.INDEX)
        img[:, 0] = np.tile(np.arange(F, dtype=P.INDEX), B)
        for level in levels:
            for nodes, parents, c in level:
                src = img[:, parents]
                if c == 2:
                    img[:, nodes] = np.take_along_axis(R2b, src, axis=1)
                else:
                    img[:, nodes] = (r0, r1)[c][src]
        ok = np.ones(B * F, dtype=bool)
        for c in range(3):
            lhs = img[:, T.perms[c]]
            rhs = np.take_along_axis(R2b, img, axis=1) if c == 2 else (r0, r1)[c][img]
            ok &= (lhs == rhs).all(axis=1)
        out[lo:lo + B] = ok.reshape(B, F).any(axis=1)
    return out


def digonal_census(digons):
    """Classify every 3-maniplex built from ``digons`` digonal 2-faces.

    Returns counts of candidates isomorphic to the hosohedron and to the
    hemi-hosohedron on the same number of flags, plus one representative of
    every other isomorphism class (expected empty).
    """
    r0, r1 = _digon_frame(digons)
    r2s = digonal_color2_candidates(digons)
    known = {}
    rest = np.ones(r2s.shape[0], dtype=bool)
    targets = [("hemi_hosohedron", hemi_hosohedron(digons))]
    if digons >= 2:
        targets.insert(0, ("hosohedron", hosohedron(digons)))
    for name, T in targets:
        hit = _batch_isomorphic_to(T, r0, r1, r2s) & rest
        known[name] = int(hit.sum())
        rest &= ~hit
    others = {}
    for row in r2s[rest]:
        X = FL.validate(3, np.stack([r0, r1, row]))
        others.setdefault(FL.canonical_form(X), X)
    return {"candidates": int(r2s.shape[0]), "classes": known, "others": list(others.values())}


def digonal_maniplexes(digons):
    """One representative per isomorphism class of digonal 3-maniplexes."""
    r0, r1 = _digon_frame(digons)
    found = {}
    for row in digonal_color2_candidates(digons):
        X = FL.validate(3, np.stack([r0, r1, row]))
        found.setdefault(FL.canonical_form(X), X)
    return list(found.values())


def prod_tau_check(C):
    """Verify ``Phi prod_{i<=j} tau_i^{eps_i}`` against the closed form for ``1 <= j <= 8k``.

    ``eps_i = -1`` iff ``i = 2k+1 (mod 4k)``; tau indices are read mod ``2k``
    (``2k`` for residue 0).  The right-hand side is ``r_t ... r_1 r_0 Phi``
    with ``t = j + floor((j-1)/2k)`` and subscripts mod ``2k+1``, prefixed
    by an extra ``r_0`` iff ``j = floor((j-1)/2k) (mod 2)``.
    """
    n = C.rank
    k = (n - 1) // 2
    G, M = C.group, C.maniplex
    phi = C.base_flag
    N = G.order
    results = []
    acc = 0
    for j in range(1, 8 * k + 1):
        idx = j % (2 * k) or 2 * k
        t = C.taus[idx]
        if j % (4 * k) == (2 * k + 1) % (4 * k):
            t = G.inverse(t)
        acc = G.compose(t, acc)  # tau_j applied first: Phi tau_j ... tau_1
        # Phi * acc where Phi = (b, 1): right action on the fiber coordinate
        lhs = (phi // N) * N + acc
        q = (j - 1) // (2 * k)
        top = j + q
        word = [c % (2 * k + 1) for c in range(top, -1, -1)]
        if j % 2 == q % 2:
            word.insert(0, 0)
        rhs = int(M.monodromy(tuple(word))[phi])
        results.append((j, lhs == rhs))
    return results


def petrie_sequence_distinct(M, start=0):
    """``Psi_{i+1} = r_{i mod n} Psi_i`` for ``n * ell`` steps has distinct entries."""
    n = M.rank
    ell = int(FL.petrie_polygons(M).lengths[FL.petrie_polygons(M).orbit_of[start]])
    seq = [start]
    for i in range(n * ell - 1):
        seq.append(int(M.perms[i % n][seq[-1]]))
    return len(set(seq)) == len(seq), seq
