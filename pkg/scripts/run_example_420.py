"""Chiral 5-polytope from the bundled presentation and its family-2 and
alternating polyhedra, with the headline numbers and timings."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from maniforge import analysis as A
from maniforge import constructions as C
from maniforge import flags as FL
from maniforge.todd_coxeter import todd_coxeter


@dataclass
class Config:
    alternating: bool = True
    polytopality: bool = True
    json: bool = False


def main(cfg):
    out, t0 = {}, time.perf_counter()

    def lap(key):
        out.setdefault("seconds", {})[key] = round(time.perf_counter() - t0, 2)

    out["cosets"] = len(todd_coxeter(C.example_4_20_presentation()))
    ch = C.example_4_20()
    aut = A.automorphisms(ch.maniplex, known=ch.cover.deck_generators(), root=ch.base_flag)
    pr = FL.petrie_polygons(ch.maniplex)
    out["chiral"] = {"flags": ch.maniplex.flag_count,
                     "flag_orbits": ch.maniplex.flag_count // aut.order,
                     "tau_orders": [ch.group.order_of(t) for t in ch.taus[1:]],
                     "petrie_lengths": pr.lengths_histogram(), "petrie_simple": pr.all_simple,
                     "duality": A.self_duality(ch.maniplex, aut)}
    lap("chiral")

    res = C.build_family2(ch)
    M = res.maniplex
    aut2 = A.automorphisms_of_cover(res.cover, res.voltage)
    stg = A.symmetry_type_graph(M, aut2)
    fam2 = {"flags": M.flag_count,
            "faces": FL.faces(M, 2).sizes_histogram(),
            "edges": FL.faces(M, 1).count,
            "vertices": FL.faces(M, 0).count,
            "vertex_degrees": sorted(set(FL.vertex_degrees(M).tolist())),
            **FL.orientability_genus(M),
            "automorphism_group_order": aut2.order,
            "stg_is_family2_pm(8)": FL.isomorphic(stg.premaniplex, C.family2_pm(8)) is not None}
    if cfg.polytopality:
        fam2["polytope"] = A.check_polytopality(M).is_polytope
    out["family2"] = fam2
    lap("family2")

    if cfg.alternating:
        alt = C.build_alternating(ch, duality=out["chiral"]["duality"])
        notes = dict(alt.notes, flags=alt.maniplex.flag_count)
        if cfg.polytopality:
            notes["polytope"] = A.check_polytopality(alt.maniplex).is_polytope
        out["alternating"] = notes
        lap("alternating")

    if cfg.json:
        print(json.dumps(out, indent=2, default=str))
    else:
        for section, body in out.items():
            print(f"{section}: {body}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for k, v in asdict(Config()).items():
        p.add_argument(f"--{'no-' if v else ''}{k.replace('_', '-')}", dest=k,
                       action="store_false" if v else "store_true")
    main(Config(**vars(p.parse_args())))
