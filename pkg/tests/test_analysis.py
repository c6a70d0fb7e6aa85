import json
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maniforge import analysis as A
from maniforge import constructions as C
from maniforge import flags as FL
from maniforge import voltage as V
from maniforge.todd_coxeter import parse_presentation

STRING3 = "gens: r0 r1 r2\nr0^2\nr1^2\nr2^2\n(r0 r2)^2\n"
MAPS = {  # regular maps from a [p, q] group plus one extra relator
    "{4,4}_(1,0)": "(r0 r1)^4\n(r1 r2)^4\nr0 r1 r2 r1",
    "{4,4}_(2,0)": "(r0 r1)^4\n(r1 r2)^4\n(r0 r1 r2 r1)^2",
    "{4,4}_(3,0)": "(r0 r1)^4\n(r1 r2)^4\n(r0 r1 r2 r1)^3",
    "{4,4}_(1,1)": "(r0 r1)^4\n(r1 r2)^4\n(r0 r1 r2)^2",
    "{4,4}_(2,2)": "(r0 r1)^4\n(r1 r2)^4\n(r0 r1 r2)^4",
    "{4,3}_3": "(r0 r1)^4\n(r1 r2)^3\n(r0 r1 r2)^3",
    "{3,6}_(1,1)": "(r0 r1)^3\n(r1 r2)^6\n(r0 r1 r2 r1 r2)^2",
    "{6,3}_(1,1)": "(r0 r1)^6\n(r1 r2)^3\n(r2 r1 r0 r1 r0)^2",
    "{5,5}_3": "(r0 r1)^5\n(r1 r2)^5\n(r0 r1 r2)^3",
}


def regular_map(name):
    return C.regular_polytope(presentation=parse_presentation(STRING3 + MAPS[name]))


def _orbit(M, colors, phi):
    seen, stack = {phi}, [phi]
    while stack:
        f = stack.pop()
        for c in colors:
            g = int(M.perms[c][f])
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return seen


def polytopal_by_sets(M):
    """Path intersection property flag by flag, with explicit orbit sets."""
    n = M.rank
    for phi in range(M.flag_count):
        for m in range(n - 1):
            a = _orbit(M, range(0, m + 1), phi)
            for k in range(1, n):
                b = _orbit(M, range(k, n), phi)
                c = _orbit(M, range(k, m + 1), phi) if k <= m else {phi}
                if a & b != c:
                    return False
    return True


def _small_maniplexes():
    out = {name: regular_map(name).maniplex for name in MAPS}
    out["cube"] = C.regular_polytope([4, 3]).maniplex
    out["4-simplex"] = C.regular_polytope([3, 3, 3]).maniplex
    out["hosohedron(3)"] = C.hosohedron(3)
    out["hemi_hosohedron(3)"] = C.hemi_hosohedron(3)
    out["chiral_torus"] = C.chiral_torus_4_4_1_2().maniplex
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out["family1(tetrahedron)"] = C.build_family1(C.regular_polytope([3, 3])).maniplex
    out["petrial(cube)"] = FL.petrial(out["cube"])
    return {k: v for k, v in out.items() if v.is_maniplex and v.flag_count <= 200}


SMALL = _small_maniplexes()


@pytest.mark.parametrize("name", sorted(SMALL))
def test_polytopality_matches_set_oracle(name):
    M = SMALL[name]
    rep = A.check_polytopality(M)
    assert rep.is_polytope == polytopal_by_sets(M)
    if not rep.is_polytope:
        phi, psi, (m, k) = rep.witness
        n = M.rank
        assert psi in _orbit(M, range(0, m + 1), phi) and psi in _orbit(M, range(k, n), phi)


def test_known_non_polytopal_maps():
    # one-vertex and two-vertex toroidal maps fail the diamond condition
    assert not A.check_polytopality(SMALL["{4,4}_(1,0)"])
    assert not A.check_polytopality(SMALL["{4,4}_(1,1)"])
    assert A.check_polytopality(SMALL["{4,4}_(2,0)"])


@pytest.mark.parametrize("schlafli", [(3, 3), (4, 3), (5, 3), (3, 3, 3), (4, 3, 3)])
def test_regular_polytopes_have_transitive_automorphism_groups(schlafli):
    M = C.regular_polytope(schlafli).maniplex
    G = A.automorphisms(M)
    assert G.order == M.flag_count
    assert A.classify(M) == A.REGULAR
    assert A.symmetry_type_graph(M, G).orbit_count == 1


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(SMALL)), st.data())
def test_automorphisms_commute_with_every_color(name, data):
    M = SMALL[name]
    G = A.automorphisms(M)
    g = data.draw(st.integers(0, G.order - 1))
    assert FL.is_isomorphism(M, M, G.as_permutation(g))


def test_chiral_torus(torus):
    M = torus.maniplex
    G = A.automorphisms(M)
    assert G.order == 20 and A.classify(M, G) == A.CHIRAL
    stg = A.symmetry_type_graph(M, G)
    assert FL.isomorphic(stg.premaniplex, C.two_n_I(3, ())) is not None


def _duality_by_exhaustion(M):
    """Every flag that can be the image of flag 0 under an isomorphism onto the dual."""
    D = FL.dual(M)
    hits = [p for p in range(M.flag_count) if FL.isomorphic(M, D, candidates=[p]) is not None]
    if not hits:
        return A.NOT_SELF_DUAL
    lab = A.orbit_labels(A.automorphisms(M), M.flag_count)
    return A.PROPERLY_SELF_DUAL if lab[hits[0]] == lab[0] else A.IMPROPERLY_SELF_DUAL


def test_self_duality_types(torus, cube, tetrahedron):
    assert A.self_duality(cube.maniplex) == A.NOT_SELF_DUAL
    assert A.self_duality(tetrahedron.maniplex) == A.SELF_DUAL_REGULAR
    kind = A.self_duality(torus.maniplex)
    assert kind == _duality_by_exhaustion(torus.maniplex)
    assert kind == A.IMPROPERLY_SELF_DUAL  # frozen from the exhaustive oracle above


def test_cover_automorphisms_agree_with_direct_search(cube, tetrahedron, quiet):
    for R, order in ((cube, 48), (tetrahedron, 48)):
        res = C.build_family1(R)
        G = A.automorphisms_of_cover(res.cover, res.voltage)
        assert G.order == order
        assert A.automorphisms(res.maniplex).order == order


def test_family1_tetrahedron_transitivity(tetrahedron, quiet):
    res = C.build_family1(tetrahedron)
    tr = A.transitivity_report(res.maniplex)
    assert tr["facet_stabilizer_orders"] == [2]
    assert tr["vertex_transitive"]


REPORT_KEYS = ["rank", "flags", "faces", "vertex_degrees", "orientable", "euler", "genus",
               "polytope", "classification", "automorphism_group_order", "flag_orbits",
               "face_orbits", "facet_stabilizer_orders", "semiregular", "stg", "petrie"]


def test_report_schema_and_determinism(cube, quiet):
    M = C.build_family1(cube).maniplex
    rep = A.report(M)
    assert list(rep) == REPORT_KEYS
    text = A.report_json(M)
    assert json.loads(text) == json.loads(json.dumps(rep))
    assert text == A.report_json(M)
    assert [f["count"] for f in rep["faces"]] == [8, 72, 48]
    assert rep["genus"] == 9 and rep["flag_orbits"] == 6
    assert FL.parse(rep["stg"]).flag_count == 6


def test_report_on_non_orientable(cube):
    from maniforge.groups import close_group
    G = cube.group
    anti = next(g for g in range(1, G.order)
                if G.order_of(g) == 2 and all(G.commutes(g, r) for r in cube.rho))
    Vq, _ = V.quotient(cube.maniplex, close_group([cube.automorphism(anti)], 0, check_free=False))
    rep = A.report(Vq.base)
    assert rep["crosscap"] == 1 and "genus" not in rep
    assert rep["classification"] == A.REGULAR


def test_facets_alternate_on_example_alternating(example):
    res = C.build_alternating(example, duality=A.NOT_SELF_DUAL)
    assert res.notes["edges_alternate"] and res.notes["facet_orbits"] == 2
    assert res.notes["flag_orbits"] == res.voltage.base.flag_count
