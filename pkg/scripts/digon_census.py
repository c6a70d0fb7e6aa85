"""Census of 3-maniplexes whose 2-faces are all digons, by number of digons."""

import argparse
import math
import time
from dataclasses import dataclass

from maniforge import analysis as A
from maniforge import constructions as C


@dataclass
class Config:
    max_digons: int = 6


def main(cfg):
    for d in range(1, cfg.max_digons + 1):
        t0 = time.perf_counter()
        census = C.digonal_census(d)
        regular = {name: A.is_regular(C.catalog(name, d)) for name, k in census["classes"].items() if k}
        print(f"d={d}: {census['candidates']} colorings, classes={census['classes']}, "
              f"other classes={len(census['others'])}, regular={regular}, "
              f"expected per class={4 ** (d - 1) * math.factorial(d - 1)}, "
              f"{time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-digons", type=int, default=Config.max_digons)
    main(Config(**vars(p.parse_args())))
