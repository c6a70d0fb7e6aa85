import functools
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maniforge import constructions as C
from maniforge import flags as FL
from maniforge import voltage as V
from maniforge.errors import BadParams, NotFreeAction, ParseError, RankMismatch, UnknownOperator
from maniforge.groups import close_group
from maniforge.verify import brute_force_lift_exists


def _iso(a, b):
    return FL.isomorphic(a, b) is not None


def _cyclic_quotient(R, g):
    H = close_group([R.automorphism(g)], 0, check_free=False)
    return V.quotient(R.maniplex, H)


@pytest.fixture(scope="module")
def voltage_graphs(cube, tetrahedron, torus):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return {
            "family1_cube": C.family1_voltages(cube),
            "family1_tetrahedron": C.family1_voltages(tetrahedron),
            "chiral_torus": torus.voltage,
            "alternating_torus": C.alternating_voltages(torus),
            "family2_torus": C.family2_voltages(torus),
        }


@pytest.mark.parametrize("name", ["family1_cube", "family1_tetrahedron", "chiral_torus",
                                  "alternating_torus", "family2_torus"])
def test_catalog_voltage_graphs_satisfy_axioms(voltage_graphs, name):
    Vg = voltage_graphs[name]
    assert V.check_voltages(Vg) == []
    cover = V.derived_graph(Vg)
    M = cover.total
    assert M.is_maniplex
    assert M.flag_count == Vg.base.flag_count * Vg.group.order
    for i in range(M.rank):  # projection is a covering map
        assert np.array_equal(cover.projection[M.perms[i]], Vg.base.perms[i][cover.projection])
    for d in cover.deck_generators():
        assert FL.is_isomorphism(M, M, d)
        assert np.array_equal(cover.projection[d], cover.projection)


def test_check_voltages_reports_bad_assignment(cube):
    Vg = C.family1_voltages(cube)
    xi = np.array(Vg.xi)
    xi[2, 0] = cube.rho[1]  # break the inverse-dart rule
    problems = {p for p, _ in V.check_voltages(V.VoltagePremaniplex(Vg.base, Vg.group, xi))}
    assert "inverse" in problems


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 47))
def test_quotient_round_trip(cube, g):
    Vq, labels = _cyclic_quotient(cube, g)
    assert Vq.base.flag_count * Vq.group.order == 48
    assert _iso(V.derived_graph(Vq).total, cube.maniplex)
    assert np.array_equal(labels[cube.maniplex.perms[0]], Vq.base.perms[0][labels])


def test_quotient_rejects_non_free_action(cube):
    # (0 1)(2 3 4): orbits of sizes 2 and 3 cannot both match the group order
    p = np.arange(48)
    p[[0, 1, 2, 3, 4]] = [1, 0, 3, 4, 2]
    with pytest.raises(NotFreeAction):
        V.quotient(cube.maniplex, close_group([p], 0, check_free=False))


@functools.lru_cache(maxsize=None)
def _simplex4():
    return C.regular_polytope([3, 3, 3]).maniplex


@given(st.lists(st.integers(0, 3), max_size=10))
def test_reduce_word_is_sound(word):
    # the reduced word acts like the original on the 4-simplex flags
    M = _simplex4()
    w = tuple(word)
    r = V.reduce_word(w)
    assert len(r) <= len(w) and V.reduce_word(r) == r
    assert np.array_equal(M.monodromy(w), M.monodromy(r))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 47))
def test_lift_check_matches_brute_force_on_quotients(cube, g):
    from maniforge.analysis import automorphisms
    Vq, _ = _cyclic_quotient(cube, g)
    cover = V.derived_graph(Vq)
    A = automorphisms(Vq.base)
    for k in range(A.order):
        tau = A.as_permutation(k)
        fast = V.lift_check(Vq, tau)
        assert fast == brute_force_lift_exists(cover, tau)
        if fast:
            img = V.lift(cover, tau)
            assert img is not None and FL.is_isomorphism(cover.total, cover.total, img)


def test_vpx_round_trip(voltage_graphs, tmp_path):
    for name, Vg in voltage_graphs.items():
        path = tmp_path / f"{name}.vpx"
        V.write_vpx(Vg, path)
        W = V.read_vpx(path)
        assert W.base.same_as(Vg.base)
        assert W.group.order == Vg.group.order
        assert _iso(V.derived_graph(W).total, V.derived_graph(Vg).total)
        assert V.serialize_vpx(W) == V.serialize_vpx(Vg)


def test_vpx_parse_errors(voltage_graphs):
    text = V.serialize_vpx(voltage_graphs["family1_cube"])
    lines = text.splitlines()
    k = lines.index("voltages:")
    bad = "\n".join(lines[:k + 1] + ["0 2 nosuchgen"] + lines[k + 1:])
    with pytest.raises(ParseError) as exc:
        V.parse_vpx(bad)
    assert exc.value.details["line"] == k + 2
    with pytest.raises(ParseError):
        V.parse_vpx("maniplex 1 2\ncolor 0: 1 0\n")


# --- operators ---------------------------------------------------------------

OPS3 = ["dual:3", "petrial", "opposite", "identity:3", "family1:3", "family1_prime:3"]


@pytest.mark.parametrize("spec", OPS3 + ["family2:2", "family2_prime:2", "dual:5"])
def test_builtin_operators_are_consistent(spec):
    O = V.parse_operator_spec(spec)
    assert O.check() == (True, None)


def test_operator_errors(cube):
    with pytest.raises(UnknownOperator):
        V.builtin_operator("bogus")
    with pytest.raises(BadParams):
        V.parse_operator_spec("family1")
    with pytest.raises(RankMismatch):
        V.operator_apply(cube.maniplex, V.builtin_operator("dual", 5))


def test_identity_and_involutive_operators(cube, tetrahedron):
    for R in (cube, tetrahedron):
        M = R.maniplex
        assert _iso(V.operator_apply(M, V.builtin_operator("identity", 3)), M)
        assert _iso(V.operator_apply(M, V.builtin_operator("petrial")), FL.petrial(M))
        assert _iso(V.operator_apply(M, V.builtin_operator("opposite")), FL.opposite(M))
        assert _iso(V.operator_apply(M, V.builtin_operator("dual", 3)), FL.dual(M))


def test_dual_twice_composes_to_identity_words():
    dd = V.operator_compose(V.builtin_operator("dual", 3), V.builtin_operator("dual", 3))
    assert dd.base.flag_count == 1
    assert [dd.eta[i][0] for i in range(3)] == [(0,), (1,), (2,)]


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(OPS3), st.sampled_from(OPS3[:4]))
def test_composition_equals_sequential_application(cube, a, b):
    O1, O2 = V.parse_operator_spec(a), V.parse_operator_spec(b)
    M = cube.maniplex
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", V.DisconnectedProduct)
        seq = V.operator_apply(V.operator_apply(M, O1), O2)
        comp = V.operator_apply(M, V.operator_compose(O1, O2))
    assert _iso(seq, comp)


@pytest.mark.parametrize("spec", OPS3)
def test_theta_commutes_with_derivation(cube, spec):
    Vq, _ = _cyclic_quotient(cube, cube.rho[0])
    O = V.parse_operator_spec(spec)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", V.DisconnectedProduct)
        lhs = V.derived_graph(V.operator_theta(Vq, O)).total
        rhs = V.operator_apply(cube.maniplex, O)
    assert _iso(lhs, rhs)


def test_family1_operator_matches_voltage_construction(cube):
    res = C.build_family1(cube)
    assert _iso(V.operator_apply(cube.maniplex, V.builtin_operator("family1", 3)), res.maniplex)
    # prime variant followed by the opposite operator gives the same polyhedron
    O = V.operator_compose(V.builtin_operator("family1_prime", 3), V.builtin_operator("opposite"))
    assert _iso(V.operator_apply(cube.maniplex, O), res.maniplex)


def test_family2_operator_base_is_family2_premaniplex(example):
    th = V.operator_theta(example.voltage, V.builtin_operator("family2", 2))
    assert _iso(th.base, C.family2_pm(8))
