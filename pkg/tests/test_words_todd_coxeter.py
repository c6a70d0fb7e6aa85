import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maniforge.errors import Incomplete, ParseError
from maniforge.todd_coxeter import (Presentation, coxeter_presentation, format_presentation,
                                    max_cosets_from_env, parse_presentation, todd_coxeter)
from maniforge.words import format_word, free_reduce, invert, parse_word

NAMES = ("a", "b", "c")
words = st.lists(st.integers(0, 5), max_size=12).map(tuple)


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w, NAMES), NAMES) == w


@given(words)
def test_free_reduce_is_idempotent_and_cancels_inverse(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert free_reduce(w + invert(w)) == ()


def test_word_grammar():
    a, b = 0, 2
    assert parse_word("(a b)^2", NAMES) == (a, b, a, b)
    assert parse_word("a^-2", NAMES) == (1, 1)
    assert parse_word("[a, b]", NAMES) == (1, 3, a, b)
    with pytest.raises(ParseError):
        parse_word("a d", NAMES)


def _closure_order(gens):
    """Size of the permutation group generated by tuples, by plain set BFS."""
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("schlafli,order", [
    ([3], 6), ([7], 14), ([3, 3], 24), ([4, 3], 48), ([5, 3], 120), ([3, 3, 3], 120),
    ([4, 3, 3], 384), ([3, 4, 3], 1152), ([2, 3], 12), ([4, 4, 3], None),
])
def test_coxeter_group_orders(schlafli, order):
    # orders of the finite string Coxeter groups (A_n, B_n, H_3, F_4, dihedral)
    if order is None:
        with pytest.raises(Incomplete):
            todd_coxeter(coxeter_presentation(schlafli), max_cosets=5000)
        return
    assert len(todd_coxeter(coxeter_presentation(schlafli))) == order


@settings(max_examples=5, deadline=None)
@given(st.integers(2, 6))
def test_symmetric_group_matches_permutation_closure(n):
    transpositions = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        transpositions.append(tuple(p))
    assert len(todd_coxeter(coxeter_presentation([3] * (n - 2) if n > 2 else []))) == \
        _closure_order(transpositions)


@given(st.integers(1, 40))
def test_cyclic_presentation(n):
    assert len(todd_coxeter(Presentation(("a",), ((0,) * n,)))) == n


def test_subgroup_cosets():
    pres = coxeter_presentation([4, 3])
    # the stabiliser of a vertex of the cube is <r1, r2>, of order 6
    assert len(todd_coxeter(pres, subgroup_words=[(2,), (4,)])) == 8


def test_coset_table_is_a_permutation_action():
    t = todd_coxeter(coxeter_presentation([5, 3]))
    for g in range(3):
        act = t.action(g)
        assert np.array_equal(np.sort(act), np.arange(len(t)))
        assert np.array_equal(act[act], np.arange(len(t)))


def test_enumeration_is_deterministic():
    pres = coxeter_presentation([3, 5])
    assert np.array_equal(todd_coxeter(pres).rows, todd_coxeter(pres).rows)


def test_max_cosets_env(monkeypatch):
    monkeypatch.setenv("MANIFORGE_MAX_COSETS", "123")
    assert max_cosets_from_env() == 123


def test_presentation_round_trip():
    text = "gens: x y\n(x y)^3\nx^2\ny^-2\n"
    pres = parse_presentation(text)
    assert parse_presentation(format_presentation(pres)) == pres


def test_presentation_parse_error_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_presentation("# comment\ngens: a b\na^2\n(a b\n", path="g.grp")
    assert exc.value.details["line"] == 4
    assert "line=4" in exc.value.oneline()
    with pytest.raises(ParseError) as exc:
        parse_presentation("a^2\n")
    assert exc.value.details["line"] == 1


def test_bundled_example_presentation_shape():
    from maniforge.constructions import example_4_20_presentation
    pres = example_4_20_presentation()
    assert pres.generator_names == ("s1", "s2", "s3", "s4")
    assert len(pres.relators) == 14
