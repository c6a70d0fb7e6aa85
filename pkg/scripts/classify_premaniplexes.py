"""Exhaustive list of regular 3-premaniplexes with a polygonal color-{0,1}
part and connected color-{1,2} part, identified by family."""

import argparse
import time
from dataclasses import dataclass

from maniforge import constructions as C


@dataclass
class Config:
    max_flags: int = 12


def main(cfg):
    t0 = time.perf_counter()
    found = C.regular_premaniplex_search(cfg.max_flags)
    rows = sorted((X.flag_count, C.identify_regular_premaniplex(X) or "UNIDENTIFIED") for X in found)
    for flags, name in rows:
        print(f"{flags:>4} flags  {name}")
    print(f"{len(rows)} classes up to {cfg.max_flags} flags in {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-flags", type=int, default=Config.max_flags)
    main(Config(**vars(p.parse_args())))
