"""Rank-4 maniplex from the hosohedron {2,3}, a central involution of its
facet group and a regular polyhedron indexed by the three facets."""

import argparse
from dataclasses import dataclass, field

from maniforge import analysis as A
from maniforge import constructions as C
from maniforge import flags as FL
from maniforge.groups import is_central_involution


@dataclass
class Config:
    base: list = field(default_factory=lambda: [2, 3])
    polytope: list = field(default_factory=lambda: [4, 3])


def main(cfg):
    M = C.regular_polytope(cfg.base)
    P_ = C.regular_polytope(cfg.polytope)
    Kp, _ = C.facet_group(M.maniplex)
    G = Kp.group
    for s in range(G.order):
        if not is_central_involution(s, G):
            continue
        try:
            res = C.build_higher_rank(M, s, P_)
        except Exception as exc:  # report every candidate sigma
            print(f"sigma={G.format(s)}: {exc.oneline() if hasattr(exc, 'oneline') else exc}")
            continue
        X = res.maniplex
        print(f"sigma={G.format(s)}: rank {X.rank}, {X.flag_count} flags, "
              f"faces {[FL.faces(X, i).count for i in range(X.rank)]}, "
              f"polytope={res.notes['polytope']}, "
              f"automorphisms={A.automorphisms(X).order}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--base", default="2,3")
    p.add_argument("--polytope", default="4,3")
    a = p.parse_args()
    main(Config([int(x) for x in a.base.split(",")], [int(x) for x in a.polytope.split(",")]))
