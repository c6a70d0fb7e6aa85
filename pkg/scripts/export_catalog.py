"""Write catalog maniplexes and voltage graphs as .mpx / .vpx files."""

import argparse
import warnings
from dataclasses import dataclass
from pathlib import Path

from maniforge import constructions as C
from maniforge import flags as FL
from maniforge import verify
from maniforge import voltage as V


@dataclass
class Config:
    outdir: str = "catalog_out"


def main(cfg):
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    ctx = verify.Context()
    for name in verify.PLATONIC:
        FL.write(ctx.regular(name).maniplex, out / f"{name}.mpx")
    FL.write(ctx.torus().maniplex, out / "chiral_torus_4_4_1_2.mpx")
    for name, params in [("family1_pm", (3,)), ("family2_pm", (8,)), ("sporadic_Xs", ()),
                         ("hosohedron", (3,)), ("hemi_hosohedron", (3,))]:
        FL.write(C.catalog(name, *params), out / f"{name}{''.join(f'_{p}' for p in params)}.mpx")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name, Vg in verify.catalog_voltage_graphs(ctx).items():
            V.write_vpx(Vg, out / f"{name}.vpx")
    print(f"wrote {len(list(out.iterdir()))} files to {out}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--outdir", default=Config.outdir)
    main(Config(**vars(p.parse_args())))
