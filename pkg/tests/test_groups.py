import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maniforge import constructions as C
from maniforge.errors import ForeignElement, LengthMismatch, NotFree
from maniforge.groups import (close_group, homomorphism_map, homomorphism_well_defined,
                              is_central_involution)


@pytest.fixture(scope="module")
def G(cube):
    return cube.group


elements = st.integers(0, 47)


@settings(max_examples=60)
@given(elements, elements, elements)
def test_associativity(G, a, b, c):
    assert G.compose(G.compose(a, b), c) == G.compose(a, G.compose(b, c))


@given(elements)
def test_inverse_and_identity(G, g):
    assert G.compose(g, G.inverse(g)) == 0 == G.compose(G.inverse(g), g)
    assert G.compose(0, g) == g == G.compose(g, 0)
    assert G.power(g, G.order_of(g)) == 0


@given(elements, elements)
def test_tables_match_compose(G, g, h):
    assert G.right_mult_table(h)[g] == G.compose(g, h)
    assert G.left_table(g)[h] == G.compose(g, h)


@given(elements, elements)
def test_permutation_representation_is_a_homomorphism(G, g, h):
    pg, ph = G.as_permutation(g), G.as_permutation(h)
    # compose(g, h) = g then h
    assert np.array_equal(G.as_permutation(G.compose(g, h)), ph[pg])


def test_cube_group_order_and_central_involutions(G):
    assert G.order == 48
    central = [g for g in range(G.order) if is_central_involution(g, G)]
    assert len(central) == 1  # the antipodal map
    assert G.order_of(central[0]) == 2


def test_element_lookup_errors(G):
    with pytest.raises(ForeignElement):
        G.compose(48, 0)
    with pytest.raises(ForeignElement):
        G.element_at(10 ** 6)


def test_not_free_witness():
    # S3 on three points: the stabiliser of 0 is non-trivial
    gens = [np.array([1, 0, 2]), np.array([0, 2, 1])]
    with pytest.raises(NotFree) as exc:
        close_group(gens, 0, names=["a", "b"])
    word = exc.value.details["element"]
    # the reported word fixes the base point but is not the identity
    from maniforge.words import parse_word
    letters = parse_word(word, ("a", "b"))
    p = np.arange(3)
    for x in letters:
        p = gens[x >> 1][p]  # involutions: inverse letters act alike
    assert p[0] == 0 and not np.array_equal(p, np.arange(3))


def test_regular_action_of_cyclic_group_is_free():
    n = 12
    G = close_group([np.roll(np.arange(n), 1)], 0)
    assert G.order == n


def test_unfaithful_on_other_orbit_is_rejected():
    # regular on {0,1}, but acts on {2,3,4} with a 3-cycle: not free
    g = np.array([1, 0, 3, 4, 2])
    with pytest.raises(NotFree):
        close_group([g], 0)


def test_homomorphism_criterion(G, cube):
    rho = cube.rho
    assert homomorphism_well_defined(G, rho, G, rho)
    assert not homomorphism_well_defined(G, rho, G, rho[::-1])  # [4,3] -> [3,4] is not a map
    img = homomorphism_map(G, rho, G, rho)
    assert np.array_equal(img, np.arange(G.order))
    with pytest.raises(LengthMismatch):
        homomorphism_well_defined(G, rho, G, rho[:2])


def test_octahedral_duality_is_an_isomorphism(cube, octahedron):
    # rho_i -> rho_{2-i} from [4,3] to [3,4]
    assert homomorphism_well_defined(cube.group, cube.rho, octahedron.group, octahedron.rho[::-1])


def test_word_of_reproduces_element(G):
    for g in range(G.order):
        assert G.word_element(G.word_of(g)) == g
