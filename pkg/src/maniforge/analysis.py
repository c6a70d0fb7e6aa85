"""Automorphism groups, symmetry type graphs, polytopality and
classification reports for flag graphs."""

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import flags as FL
from . import perms as P
from .groups import close_group

REGULAR, CHIRAL = "regular", "chiral"
NOT_SELF_DUAL = "not_self_dual"
PROPERLY_SELF_DUAL = "properly_self_dual"
IMPROPERLY_SELF_DUAL = "improperly_self_dual"
SELF_DUAL_REGULAR = "self_dual_regular"


# --- automorphisms ---------------------------------------------------------

def automorphisms(M, known=(), root=0):
    """Automorphism group of ``M`` as a free action on its flags.

    Candidate images of ``root`` are restricted to flags with the same local
    invariant, and only one candidate per orbit of the automorphisms found
    so far is tried; a candidate that fails rules out its whole orbit.
    ``known`` may hold automorphisms already at hand (e.g. deck
    transformations of a cover) to seed the search.
    """
    F = M.flag_count
    codes, _ = FL.invariant_codes(M)
    cand = np.nonzero(codes == codes[root])[0]
    ext = FL._Extender(M, root)
    gens = [np.asarray(g, dtype=P.INDEX) for g in known]
    _, lab = P.components(gens, F)
    bad = np.zeros(F, dtype=bool)  # per orbit label
    for c in cand.tolist():
        if lab[c] == lab[root] or bad[lab[c]]:
            continue
        img = ext.try_image(M, c)
        if img is None:
            bad[lab[c]] = True
            continue
        gens.append(img)
        _, new = P.components(gens, F)
        # carry over "bad" marks: orbits only merge, and a merged orbit with a
        # bad class cannot contain the root's orbit
        nb = np.zeros(F, dtype=bool)
        nb[new[bad[lab]]] = True
        bad, lab = nb, new
    gens = _prune_generators(gens, F)
    return close_group(gens, root, names=[f"a{i}" for i in range(len(gens))],
                       check_free=False, degree=F)


def _prune_generators(gens, F):
    """Drop generators already in the span of the earlier ones (greedy)."""
    kept = []
    size = 1
    for g in gens:
        trial = kept + [g]
        order = close_group(trial, 0, check_free=False, degree=F).order
        if order > size:
            kept, size = trial, order
    return kept


def orbit_labels(G, F):
    return P.components(G.gens, F)[1] if G.gens else np.arange(F, dtype=P.INDEX)


def liftable_automorphisms(V, base_aut=None):
    """Elements of ``Aut(V.base)`` that lift, as image arrays."""
    from .voltage import lift_check
    X = V.base
    A = base_aut if base_aut is not None else automorphisms(X)
    out = []
    for k in range(A.order):
        tau = A.as_permutation(k)
        if lift_check(V, tau):
            out.append(tau)
    return out


def automorphisms_of_cover(cover, V, cross_check_limit=10_000):
    """Automorphisms of a derived graph.

    When the base is regular every automorphism projects, so the group is
    generated by the deck transformations and one lift of each liftable
    base automorphism.  Otherwise (or as a cross-check on small covers) a
    direct search seeded with the deck group is used.
    """
    from .voltage import lift
    M = cover.total
    deck = cover.deck_generators()
    A = automorphisms(V.base)
    if A.order == V.base.flag_count:
        gens = list(deck)
        for tau in liftable_automorphisms(V, A):
            if np.array_equal(tau, np.arange(tau.shape[0])):
                continue
            img = lift(cover, tau)
            if img is None:
                raise AssertionError("liftable automorphism has no lift")
            gens.append(img)
        G = close_group(_prune_generators(gens, M.flag_count), 0, check_free=False,
                        degree=M.flag_count)
        if M.flag_count <= cross_check_limit:
            direct = automorphisms(M, known=deck)
            if direct.order != G.order:
                raise AssertionError("lift-based and direct automorphism groups differ")
        return G
    return automorphisms(M, known=deck)


# --- symmetry type graph ---------------------------------------------------

@dataclass(frozen=True)
class SymmetryTypeGraph:
    premaniplex: FL.Premaniplex
    orbit_of: np.ndarray
    orbit_count: int


def symmetry_type_graph(M, aut=None):
    if aut is None:
        aut = automorphisms(M)
    k, lab = P.components(aut.gens, M.flag_count)
    _, reps = np.unique(lab, return_index=True)
    X = FL.validate(M.rank, lab[M.perms[:, reps]])
    return SymmetryTypeGraph(X, lab, int(k))


# --- polytopality ----------------------------------------------------------

@dataclass(frozen=True)
class PolytopalityReport:
    is_polytope: bool
    witness: tuple = None

    def __bool__(self):
        return self.is_polytope


def _labels(M, colors, cache):
    colors = tuple(colors)
    if colors not in cache:
        if colors:
            cache[colors] = FL.faces_by_colors(M, colors).component_id
        else:
            cache[colors] = np.arange(M.flag_count, dtype=P.INDEX)
    return cache[colors]


def check_polytopality(M):
    """Path intersection property, checked exactly for every ``(m, k)``.

    Flags are grouped by their ``[0, m]``- and ``[k, n-1]``-components; every
    group must sit inside a single ``[k, m]``-component (a single flag when
    ``k > m``).  Pairs with ``k = 0`` or ``m = n - 1`` hold trivially.
    """
    n, F = M.rank, M.flag_count
    cache = {}
    for m in range(n - 1):
        A = _labels(M, range(0, m + 1), cache)
        for k in range(1, n):
            B = _labels(M, range(k, n), cache)
            C = _labels(M, range(k, m + 1), cache)
            key = A * (int(B.max()) + 1) + B
            _, grp = np.unique(key, return_inverse=True)
            lo = np.full(grp.max() + 1, np.iinfo(P.INDEX).max, dtype=P.INDEX)
            hi = np.full(grp.max() + 1, -1, dtype=P.INDEX)
            np.minimum.at(lo, grp, C)
            np.maximum.at(hi, grp, C)
            badg = np.nonzero(lo != hi)[0]
            if badg.size:
                g = badg[0]
                members = np.nonzero(grp == g)[0]
                phi = int(members[0])
                psi = int(members[C[members] != C[phi]][0])
                return PolytopalityReport(False, (phi, psi, (m, k)))
    return PolytopalityReport(True, None)


# --- transitivity ----------------------------------------------------------

def face_orbit_counts(stg):
    X = stg.premaniplex
    return [FL.faces(X, i).count for i in range(X.rank)]


def facet_stabilizer_orders(M, aut, stg):
    """Stabilizer order of one facet in each facet orbit (ordered by orbit id)."""
    n = M.rank
    facets = FL.faces(M, n - 1).component_id
    X = stg.premaniplex
    forb = FL.faces(X, n - 1).component_id[stg.orbit_of]  # facet-orbit of each flag
    # one facet-orbit label per facet
    _, first = np.unique(facets, return_index=True)
    per_facet = forb[first]
    counts = np.bincount(per_facet)
    return [int(aut.order // c) for c in counts]


def is_regular(M):
    return automorphisms(M).order == M.flag_count


def _facet_maniplex(M, flag=0):
    n = M.rank
    lab = FL.faces(M, n - 1).component_id
    keep = np.nonzero(lab == lab[flag])[0]
    new = np.full(M.flag_count, -1, dtype=P.INDEX)
    new[keep] = np.arange(keep.shape[0])
    return FL.validate(n - 1, new[M.perms[: n - 1, keep]]), keep


def transitivity_report(M, aut=None, stg=None):
    if aut is None:
        aut = automorphisms(M)
    if stg is None:
        stg = symmetry_type_graph(M, aut)
    counts = face_orbit_counts(stg)
    n = M.rank
    stabs = facet_stabilizer_orders(M, aut, stg)
    facets_regular = True
    if n >= 2:
        X = stg.premaniplex
        forb = FL.faces(X, n - 1).component_id
        _, reps = np.unique(forb[stg.orbit_of], return_index=True)
        for r in reps.tolist():
            K, _ = _facet_maniplex(M, r)
            if K.rank >= 1 and not is_regular(K):
                facets_regular = False
    return {
        "face_orbits": counts,
        "vertex_transitive": counts[0] == 1,
        "facet_transitive": counts[-1] == 1,
        "facet_stabilizer_orders": stabs,
        "trivial_facet_stabilizer": all(s == 1 for s in stabs),
        "semiregular": counts[0] == 1 and facets_regular,
    }


def facets_alternate(M, stg):
    """True when every ridge lies between facets of different orbits."""
    n = M.rank
    forb = FL.faces(stg.premaniplex, n - 1).component_id[stg.orbit_of]
    return bool((forb != forb[M.perms[n - 1]]).all())


# --- classification --------------------------------------------------------

def classify(M, aut=None):
    if aut is None:
        aut = automorphisms(M)
    orbits = M.flag_count // aut.order
    if orbits == 1:
        return REGULAR
    if orbits == 2:
        lab = orbit_labels(aut, M.flag_count)
        if all((lab[M.perms[i]] != lab).all() for i in range(M.rank)):
            return CHIRAL
    return f"other({orbits})"


def self_duality(M, aut=None):
    """Duality type; for two-orbit maniplexes the orbit of the image of flag 0 decides."""
    if aut is None:
        aut = automorphisms(M)
    D = FL.dual(M)
    kind = classify(M, aut)
    if kind == REGULAR:
        return SELF_DUAL_REGULAR if FL.isomorphic(M, D, candidates=[0]) is not None else NOT_SELF_DUAL
    lab = orbit_labels(aut, M.flag_count)
    # Aut(D) = Aut(M) as flag permutations, so one candidate per orbit suffices
    _, reps = np.unique(lab, return_index=True)
    for r in sorted(reps.tolist()):
        img = FL.isomorphic(M, D, candidates=[r])
        if img is not None:
            return PROPERLY_SELF_DUAL if lab[r] == lab[0] else IMPROPERLY_SELF_DUAL
    return NOT_SELF_DUAL


# --- JSON report -----------------------------------------------------------

def _hist(values):
    return {str(k): int(v) for k, v in sorted(Counter(np.asarray(values).tolist()).items())}


def report(M, aut=None):
    """Analysis summary with stable field names."""
    if aut is None:
        aut = automorphisms(M)
    stg = symmetry_type_graph(M, aut)
    faces = []
    for i in range(M.rank):
        fp = FL.faces(M, i)
        faces.append({"rank": i, "count": fp.count, "sizes": _hist(fp.face_sizes)})
    out = {
        "rank": M.rank,
        "flags": M.flag_count,
        "faces": faces,
        "vertex_degrees": _hist(FL.vertex_degrees(M)),
        "orientable": FL.is_orientable(M),
    }
    if M.rank == 3:
        og = FL.orientability_genus(M)
        out["euler"] = og["euler"]
        if og["orientable"]:
            out["genus"] = og["genus"]
        else:
            out["crosscap"] = og["crosscap"]
    out["polytope"] = check_polytopality(M).is_polytope if M.is_maniplex else False
    out["classification"] = classify(M, aut)
    out["automorphism_group_order"] = aut.order
    out["flag_orbits"] = stg.orbit_count
    tr = transitivity_report(M, aut, stg)
    out["face_orbits"] = tr["face_orbits"]
    out["facet_stabilizer_orders"] = tr["facet_stabilizer_orders"]
    out["semiregular"] = tr["semiregular"]
    out["stg"] = FL.serialize(stg.premaniplex)
    pr = FL.petrie_polygons(M)
    out["petrie"] = {"lengths": _hist(pr.lengths), "all_simple": pr.all_simple}
    return out


def report_json(M, aut=None):
    return json.dumps(report(M, aut), indent=2, sort_keys=False)
