"""Acceptance criteria, driven by the bundled manifest.

Each criterion recomputes its observations from scratch, compares them with
the manifest's frozen expectations and checks the wall-clock budget.  One
PASS/FAIL line per criterion is printed (and repeated in the terminal
summary).
"""

import pytest

from maniforge import verify

from .conftest import ACCEPTANCE_LINES

MANIFEST = verify.load_manifest()

# published reference values, pinned here so that the manifest cannot drift
PAPER_VALUES = {
    "family1_cube.faces": 48, "family1_cube.edges": 72, "family1_cube.vertices": 8,
    "family1_cube.vertex_degrees": [18], "family1_cube.genus": 9,
    "family1_icosahedron.faces": 120, "family1_icosahedron.edges": 180,
    "family1_icosahedron.vertices": 12, "family1_icosahedron.vertex_degrees": [30],
    "family1_icosahedron.genus": 25,
    "family1_tetrahedron.faces": 24, "family1_tetrahedron.edges": 36,
    "family1_tetrahedron.vertices": 6, "family1_tetrahedron.vertex_degrees": [12],
    "family1_tetrahedron.genus": 4, "family1_tetrahedron.facet_stabilizer_orders": [2],
    "example_4_20.cosets": 20736, "example_4_20.flags": 41472, "example_4_20.petrie_lengths": [12],
    "family2.faces": 20736, "family2.edges": 82944, "family2.vertices": 3456,
    "family2.vertex_degrees": [48], "family2.genus": 29377,
}


@pytest.fixture(scope="module")
def ctx():
    return verify.Context()


def test_manifest_matches_published_values():
    expected = {c["name"]: c["expected"] for e in MANIFEST["criteria"] for c in e["checks"]}
    for name, value in PAPER_VALUES.items():
        assert expected[name] == value, name
    assert [e["id"] for e in MANIFEST["criteria"]] == list(range(1, 12))
    for e in MANIFEST["criteria"]:
        for c in e["checks"]:
            assert c["provenance"].split(":")[0] in MANIFEST["provenance_tags"]


@pytest.mark.parametrize("entry", MANIFEST["criteria"], ids=lambda e: f"criterion_{e['id']:02d}")
def test_criterion(entry, ctx):
    res = verify.run_criterion(entry, ctx)
    line = res.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    bad = [(c.name, c.expected, c.observed) for c in res.checks if not c.ok]
    assert not bad, bad
    assert res.within_budget, f"{res.seconds:.2f}s over {res.budget_seconds}s"
