"""Runner for the acceptance manifest (``data/manifest.json``).

The manifest lists, per criterion, named checks with an expected value, a
provenance tag and a wall-clock budget.  ``observe`` computes the same names
from scratch; ``run_manifest`` compares the two.
"""

import json
import time
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import analysis as A
from . import constructions as C
from . import flags as FL
from . import voltage as V
from .groups import close_group
from .todd_coxeter import todd_coxeter

PLATONIC = {
    "tetrahedron": (3, 3),
    "cube": (4, 3),
    "octahedron": (3, 4),
    "dodecahedron": (5, 3),
    "icosahedron": (3, 5),
}


def load_manifest(path=None):
    if path is None:
        text = resources.files("maniforge.data").joinpath("manifest.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def _iso(a, b):
    return FL.isomorphic(a, b) is not None


def _jsonable(v):
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


class Context:
    """Lazily built objects shared between criteria."""

    def __init__(self):
        self._cache = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def regular(self, name):
        return self._get(("regular", name), lambda: C.regular_polytope(PLATONIC[name]))

    def family1(self, name):
        def build():
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", C.PreconditionWarning)
                res = C.build_family1(self.regular(name))
            aut = A.automorphisms_of_cover(res.cover, res.voltage)
            return res, aut, A.symmetry_type_graph(res.maniplex, aut)
        return self._get(("family1", name), build)

    def example(self):
        return self._get("example", C.example_4_20)

    def example_aut(self):
        ch = self.example()
        return self._get("example_aut", lambda: A.automorphisms(
            ch.maniplex, known=ch.cover.deck_generators(), root=ch.base_flag))

    def family2(self):
        def build():
            res = C.build_family2(self.example())
            aut = A.automorphisms_of_cover(res.cover, res.voltage)
            return res, aut, A.symmetry_type_graph(res.maniplex, aut)
        return self._get("family2", build)

    def torus(self):
        return self._get("torus", C.chiral_torus_4_4_1_2)


def summary(M, aut, stg):
    """Rank-3 face counts, degrees, genus, orbits and polytopality."""
    fp = [FL.faces(M, i) for i in range(M.rank)]
    og = FL.orientability_genus(M)
    tr = A.transitivity_report(M, aut, stg)
    return {
        "flags": M.flag_count,
        "vertices": fp[0].count,
        "edges": fp[1].count,
        "faces": fp[2].count,
        "face_flag_sizes": sorted(set(fp[2].face_sizes.tolist())),
        "vertex_degrees": sorted(set(FL.vertex_degrees(M).tolist())),
        "orientable": og["orientable"],
        "genus": og.get("genus"),
        "polytope": A.check_polytopality(M).is_polytope,
        "flag_orbits": stg.orbit_count,
        "facet_stabilizer_orders": sorted(set(tr["facet_stabilizer_orders"])),
    }


def _prefixed(prefix, d):
    return {f"{prefix}.{k}": v for k, v in d.items()}


# --- observations per criterion -------------------------------------------

def _family1_obs(ctx, name, fields=None):
    res, aut, stg = ctx.family1(name)
    s = summary(res.maniplex, aut, stg)
    if fields:
        s = {k: s[k] for k in fields}
    return _prefixed(f"family1_{name}", s)


def _c1(ctx):
    obs = _family1_obs(ctx, "cube")
    stg = ctx.family1("cube")[2]
    obs["family1_cube.stg_is_family1_pm(3)"] = _iso(stg.premaniplex, C.family1_pm(3))
    return obs


def _c2(ctx):
    a = ctx.family1("cube")[0].maniplex
    b = ctx.family1("octahedron")[0].maniplex
    return {"family1_octahedron.isomorphic_to_family1_cube": _iso(a, b)}


def _c3(ctx):
    fields = ("vertices", "edges", "faces", "vertex_degrees", "orientable", "genus")
    obs = _family1_obs(ctx, "icosahedron", fields)
    obs.update(_family1_obs(ctx, "dodecahedron", fields))
    obs["family1_dodecahedron.isomorphic_to_family1_icosahedron"] = _iso(
        ctx.family1("icosahedron")[0].maniplex, ctx.family1("dodecahedron")[0].maniplex)
    return obs


def _c4(ctx):
    return _family1_obs(ctx, "tetrahedron", ("vertices", "edges", "faces", "vertex_degrees",
                                             "genus", "facet_stabilizer_orders", "flag_orbits"))


def _c5(ctx):
    obs = {"example_4_20.cosets": len(todd_coxeter(C.example_4_20_presentation()))}
    ch = ctx.example()
    aut = ctx.example_aut()
    pr = FL.petrie_polygons(ch.maniplex)
    obs["example_4_20.flags"] = ch.maniplex.flag_count
    obs["example_4_20.flag_orbits"] = ch.maniplex.flag_count // aut.order
    obs["example_4_20.petrie_lengths"] = sorted(set(pr.lengths.tolist()))
    obs["example_4_20.petrie_simple"] = pr.all_simple
    res, aut2, stg = ctx.family2()
    s = summary(res.maniplex, aut2, stg)
    for k in ("faces", "face_flag_sizes", "edges", "vertices", "vertex_degrees", "orientable",
              "genus", "polytope"):
        obs[f"family2.{k}"] = s[k]
    obs["family2.stg_is_family2_pm(8)"] = _iso(stg.premaniplex, C.family2_pm(8))
    return obs


def _c6(ctx):
    found = C.regular_premaniplex_search(12)
    names = [C.identify_regular_premaniplex(X) for X in found]
    return {
        "regular_premaniplexes.classes": sorted(n for n in names if n),
        "regular_premaniplexes.unidentified": sum(1 for n in names if n is None),
    }


def _c7(ctx):
    obs = {}
    for d in range(1, 7):
        census = C.digonal_census(d)
        obs[f"digonal.{d}.unclassified"] = len(census["others"])
        obs[f"digonal.{d}.all_regular"] = all(
            A.is_regular(C.catalog(name, d)) for name, k in census["classes"].items() if k)
    return obs


def _c8(ctx):
    op = V.builtin_operator
    obs = {}
    for name in ("cube", "tetrahedron"):
        M = ctx.regular(name).maniplex
        for o in ("dual", "petrial", "opposite"):
            O = op(o, 3) if o == "dual" else op(o)
            twice = V.operator_apply(V.operator_apply(M, O), O)
            obs[f"operators.{name}.{o}_squared_is_identity"] = _iso(twice, M)
        dpd = V.operator_compose(V.operator_compose(op("dual", 3), op("petrial")), op("dual", 3))
        obs[f"operators.{name}.dual_petrial_dual_is_opposite"] = _iso(
            V.operator_apply(M, dpd), FL.opposite(M))
    # commutation square: derived(theta(V, O)) == derived(V) applied to O
    cube = ctx.regular("cube")
    Vc, _ = V.quotient(cube.maniplex, close_group(
        [cube.automorphism(g) for g in cube.rho], 0, check_free=False))
    O = op("family1", 3)
    obs["operators.theta_square.family1_cube"] = _iso(
        V.derived_graph(V.operator_theta(Vc, O)).total, V.operator_apply(cube.maniplex, O))
    ch = ctx.example()
    O5 = op("family1", 5)
    obs["operators.theta_square.example_4_20_alternating"] = _iso(
        V.derived_graph(V.operator_theta(ch.voltage, O5)).total,
        V.operator_apply(ch.maniplex, O5))
    obs["operators.family1_operator_is_family1_voltage.cube"] = _iso(
        V.operator_apply(cube.maniplex, O), ctx.family1("cube")[0].maniplex)
    return obs


def brute_force_lift_exists(cover, tau):
    """Search every flag over ``tau(0)`` for an automorphism of the cover projecting to ``tau``."""
    M = cover.total
    ext = FL._Extender(M, cover.flag_id(0, 0))
    for g in range(cover.group.order):
        img = ext.try_image(M, cover.flag_id(int(tau[0]), g))
        if img is not None and np.array_equal(cover.projection[img], tau[cover.projection]):
            return True
    return False


def catalog_voltage_graphs(ctx, max_flags=2000):
    """Named voltage premaniplexes from the catalog with derived graphs of at most ``max_flags``."""
    out = {}
    for name in PLATONIC:
        out[f"family1_{name}"] = C.family1_voltages(ctx.regular(name))
    torus = ctx.torus()
    out["chiral_torus"] = torus.voltage
    out["alternating_torus"] = C.alternating_voltages(torus)
    out["family2_torus"] = C.family2_voltages(torus)
    cube = ctx.regular("cube")
    G = cube.group
    antipodal = next(g for g in range(1, G.order)
                     if G.order_of(g) == 2 and all(G.commutes(g, r) for r in cube.rho))
    out["hemicube"], _ = V.quotient(cube.maniplex, close_group(
        [cube.automorphism(antipodal)], 0, check_free=False))
    hos = C.regular_polytope([2, 3])
    Kp, _ = C.facet_group(hos.maniplex)
    half_turn = Kp.group.compose(Kp.rho[1], Kp.rho[0])
    out["higher_rank_hosohedron"] = C.build_higher_rank(hos, half_turn, cube).voltage
    return {k: v for k, v in out.items()
            if v.base.flag_count * v.group.order <= max_flags}


def _c9(ctx):
    obs = {}
    for name, Vg in catalog_voltage_graphs(ctx).items():
        cover = V.derived_graph(Vg)
        aut = A.automorphisms(Vg.base)
        agree, liftable = True, 0
        for k in range(aut.order):
            tau = aut.as_permutation(k)
            fast = V.lift_check(Vg, tau)
            agree &= fast == brute_force_lift_exists(cover, tau)
            liftable += fast
        obs[f"lift_oracle.{name}.agrees"] = bool(agree)
        obs[f"lift_oracle.{name}.liftable"] = int(liftable)
    return obs


def petrie_walks_distinct(M):
    """For every start flag, the ``n*ell`` flags of ``Psi -> r_{i mod n} Psi`` are distinct."""
    pr = FL.petrie_polygons(M)
    n = M.rank
    ell = pr.lengths[pr.orbit_of]
    for L in np.unique(ell).tolist():
        cur = np.nonzero(ell == L)[0]
        seq = [cur]
        for i in range(n * L - 1):
            cur = M.perms[i % n][cur]
            seq.append(cur)
        S = np.sort(np.stack(seq), axis=0)
        if (S[1:] == S[:-1]).any():
            return False
    return True


def _c10(ctx):
    ch = ctx.example()
    res = C.prod_tau_check(ch)
    obs = {
        "prod_tau.example_4_20.all_hold": all(ok for _, ok in res),
        "prod_tau.example_4_20.checked": len(res),
    }
    polys = {name: ctx.regular(name).maniplex for name in PLATONIC}
    polys["chiral_torus"] = ctx.torus().maniplex
    polys["example_4_20"] = ch.maniplex
    for name, M in polys.items():
        simple = FL.petrie_polygons(M).all_simple
        obs[f"petrie_simple.{name}"] = (not simple) or petrie_walks_distinct(M)
    return obs


def _c11(ctx):
    ch = ctx.example()
    duality = A.self_duality(ch.maniplex, ctx.example_aut())
    res = C.build_alternating(ch, duality=duality)
    notes = res.notes
    not_sd = duality == A.NOT_SELF_DUAL
    stg_is_base = notes["flag_orbits"] == res.voltage.base.flag_count
    return {
        "alternating.facet_orbits": notes["facet_orbits"],
        "alternating.edges_between_orbits": notes["edges_alternate"],
        "alternating.polytope": A.check_polytopality(res.maniplex).is_polytope,
        "alternating.duality_of_P": duality,
        "alternating.stabilizer_consistent_with_duality":
            (not not_sd) or (notes["trivial_facet_stabilizer"] and stg_is_base),
    }


OBSERVERS = {1: _c1, 2: _c2, 3: _c3, 4: _c4, 5: _c5, 6: _c6, 7: _c7, 8: _c8, 9: _c9,
             10: _c10, 11: _c11}


def observe(criterion, ctx=None):
    return {k: _jsonable(v) for k, v in OBSERVERS[criterion](ctx or Context()).items()}


# --- comparison -------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    expected: object
    observed: object
    provenance: str

    @property
    def ok(self):
        return self.observed == self.expected


@dataclass
class CriterionResult:
    id: int
    title: str
    budget_seconds: float
    seconds: float
    checks: list = field(default_factory=list)

    @property
    def within_budget(self):
        return self.budget_seconds is None or self.seconds <= self.budget_seconds

    @property
    def ok(self):
        return self.within_budget and all(c.ok for c in self.checks)

    def line(self):
        bad = [c.name for c in self.checks if not c.ok]
        status = "PASS" if self.ok else "FAIL"
        budget = f" / {self.budget_seconds:g}s" if self.budget_seconds is not None else ""
        tail = f"; mismatches: {', '.join(bad)}" if bad else ""
        if not self.within_budget:
            tail += "; over budget"
        return (f"criterion {self.id:>2}: {status}  {self.title}  "
                f"[{len(self.checks)} checks, {self.seconds:.2f}s{budget}]{tail}")


_MISSING = object()


def run_criterion(entry, ctx=None):
    t0 = time.perf_counter()
    obs = observe(entry["id"], ctx)
    dt = time.perf_counter() - t0
    checks = [CheckResult(c["name"], c["expected"], obs.get(c["name"], _MISSING), c["provenance"])
              for c in entry["checks"]]
    return CriterionResult(entry["id"], entry["title"], entry.get("budget_seconds"), dt, checks)


def run_manifest(manifest=None, only=None, ctx=None):
    manifest = manifest or load_manifest()
    ctx = ctx or Context()
    for entry in manifest["criteria"]:
        if only is None or entry["id"] in only:
            yield run_criterion(entry, ctx)
