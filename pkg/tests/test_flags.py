import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maniforge import constructions as C
from maniforge import flags as FL
from maniforge.errors import (CommutationFail, Disconnected, NotInvolution, ParallelEdge,
                              ParseError, RankNotThree, SemiEdge)

PLATONIC = {  # Schläfli -> (V, E, F, Petrie length); Petrie length is the Coxeter number
    (3, 3): (4, 6, 4, 4),
    (4, 3): (8, 12, 6, 6),
    (3, 4): (6, 12, 8, 6),
    (5, 3): (20, 30, 12, 10),
    (3, 5): (12, 30, 20, 10),
}


@pytest.mark.parametrize("schlafli", list(PLATONIC))
def test_platonic_faces_genus_petrie(schlafli):
    M = C.regular_polytope(schlafli).maniplex
    V, E, F, h = PLATONIC[schlafli]
    assert [FL.faces(M, i).count for i in range(3)] == [V, E, F]
    assert FL.orientability_genus(M) == {"orientable": True, "genus": 0, "euler": 2}
    assert set(FL.vertex_degrees(M).tolist()) == {schlafli[1]}
    pr = FL.petrie_polygons(M)
    assert set(pr.lengths.tolist()) == {h} and pr.all_simple
    assert M.is_maniplex


def test_hemicube_is_projective():
    cube = C.regular_polytope([4, 3])
    G = cube.group
    anti = next(g for g in range(1, G.order)
                if G.order_of(g) == 2 and all(G.commutes(g, r) for r in cube.rho))
    from maniforge.groups import close_group
    from maniforge.voltage import quotient
    V, _ = quotient(cube.maniplex, close_group([cube.automorphism(anti)], 0, check_free=False))
    og = FL.orientability_genus(V.base)
    assert og == {"orientable": False, "crosscap": 1, "euler": 1}


def test_validation_errors():
    with pytest.raises(NotInvolution):
        FL.validate(1, [[1, 2, 0]])
    with pytest.raises(CommutationFail):
        # r0 = (01)(23), r2 = (12)(03)... chosen so that (r0 r2)^2 != 1
        FL.validate(3, [[1, 0, 3, 2, 5, 4], [0, 1, 2, 3, 4, 5], [0, 2, 1, 4, 3, 5]])
    with pytest.raises(Disconnected):
        FL.validate(1, [[1, 0, 3, 2]])
    with pytest.raises(SemiEdge):
        FL.validate(2, [[1, 0], [0, 1]], maniplex=True)
    with pytest.raises(ParallelEdge):
        FL.validate(2, [[1, 0], [1, 0]], maniplex=True)
    X = FL.validate(2, [[1, 0], [0, 1]])
    assert not X.is_maniplex and X.maniplex_defect.code == "SemiEdge"


def test_dual_petrial_opposite(cube, octahedron):
    M = cube.maniplex
    assert FL.isomorphic(FL.dual(M), octahedron.maniplex) is not None
    assert FL.isomorphic(FL.petrial(FL.petrial(M)), M) is not None
    assert FL.isomorphic(FL.opposite(FL.opposite(M)), M) is not None
    P = FL.petrial(M)  # Petrial of the cube: {6,3}_4, 4 hexagons
    assert FL.faces(P, 2).count == 4
    with pytest.raises(RankNotThree):
        FL.petrial(C.regular_polytope([3, 3, 3]).maniplex)


def _relabel(X, perm):
    inv = np.argsort(perm)
    return FL.validate(X.rank, perm[X.perms[:, inv]])


CATALOG_SMALL = [
    ("polygon", (5,)), ("family1_pm", (4,)), ("family2_pm", (8,)), ("sporadic_Xs", ()),
    ("hosohedron", (3,)), ("hemi_hosohedron", (3,)), ("one_n", (3,)), ("two_n_I", (3, (1,))),
]


@pytest.mark.parametrize("name,params", CATALOG_SMALL)
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1))
def test_relabelling_preserves_isomorphism_class(name, params, seed):
    X = C.catalog(name, *params)
    perm = np.random.default_rng(seed).permutation(X.flag_count)
    Y = _relabel(X, perm)
    img = FL.isomorphic(X, Y)
    assert img is not None and FL.is_isomorphism(X, Y, img)
    assert FL.canonical_form(X) == FL.canonical_form(Y)


def test_canonical_form_separates_catalog():
    entries = [C.catalog(n, *p) for n, p in CATALOG_SMALL]
    entries += [C.regular_polytope(s).maniplex for s in PLATONIC]
    for i, a in enumerate(entries):
        for b in entries[i + 1:]:
            if a.rank != b.rank:
                continue
            same = FL.isomorphic(a, b) is not None
            assert same == (FL.canonical_form(a) == FL.canonical_form(b))


def test_text_round_trip(cube):
    M = cube.maniplex
    assert FL.parse(FL.serialize(M)).same_as(M)


def test_file_round_trip(tmp_path, cube):
    path = tmp_path / "cube.mpx"
    FL.write(cube.maniplex, path)
    assert FL.read(path).same_as(cube.maniplex)


@pytest.mark.parametrize("text,line", [
    ("maniplex 2 4\ncolor 0: 1 0 3 2\ncolor 1: 3 2 x 0\n", 3),
    ("maniplex 2 4\ncolor 0: 1 0 3 2\n", 1),
    ("# header comment\nmaniplex 2 4\ncolor 0: 1 0 3\ncolor 1: 3 2 1 0\n", 3),
    ("maniplex two 4\n", 1),
    ("maniplex 2 4\ncolor 1: 1 0 3 2\ncolor 0: 3 2 1 0\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        FL.parse(text, path="m.mpx")
    assert exc.value.details["line"] == line
    assert exc.value.oneline().startswith("ParseError path=m.mpx line=")


def test_degenerate_detection():
    assert FL.is_degenerate(C.hosohedron(3))[0]
    assert not FL.is_degenerate(C.regular_polytope([4, 3]).maniplex)[0]


def test_incidences_of_cube(cube):
    inc = FL.incidences(cube.maniplex, 0, 2)
    assert len(inc) == 24  # 8 vertices x 3 squares
