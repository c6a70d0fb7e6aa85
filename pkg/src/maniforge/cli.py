"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (one ``Code key=value ...``
line on stderr), 2 on a usage error.
"""

import argparse
import json
import sys
import warnings

import numpy as np

from . import analysis as A
from . import constructions as C
from . import flags as FL
from . import verify
from . import voltage as V
from .errors import BadParams, ManiforgeError
from .todd_coxeter import max_cosets_from_env, parse_presentation
from .words import parse_word


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_presentation(path):
    with open(path) as fh:
        return parse_presentation(fh.read(), path=path)


def _schlafli(text):
    try:
        return [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad Schläfli symbol {text!r}") from None


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


# --- subcommands -----------------------------------------------------------

def cmd_build(args):
    if args.kind == "regular":
        if args.schlafli:
            R = C.regular_polytope(schlafli=args.schlafli, max_cosets=max_cosets_from_env())
        elif args.presentation:
            R = C.regular_polytope(presentation=_read_presentation(args.presentation),
                                   max_cosets=max_cosets_from_env())
        else:
            raise BadParams("build regular needs --schlafli or --presentation")
        M = R.maniplex
    else:
        if not args.presentation:
            raise BadParams("build chiral needs --presentation")
        sigmas = args.sigmas.split(",") if args.sigmas else None
        M = C.chiral_polytope(_read_presentation(args.presentation), sigma_names=sigmas,
                              max_cosets=max_cosets_from_env()).maniplex
    _emit(FL.serialize(M), args.output)
    return 0


def _regular_input(args):
    if args.group:
        return C.regular_polytope(presentation=_read_presentation(args.group),
                                  max_cosets=max_cosets_from_env())
    if args.schlafli:
        return C.regular_polytope(schlafli=args.schlafli, max_cosets=max_cosets_from_env())
    if args.input:
        return C.regular_from_maniplex(FL.read(args.input))
    raise BadParams("need --input, --group or --schlafli")


def _chiral_input(args):
    if args.group:
        return C.chiral_polytope(_read_presentation(args.group), max_cosets=max_cosets_from_env())
    if args.input:
        return C.chiral_from_maniplex(FL.read(args.input))
    raise BadParams("need --input or --group")


def cmd_construct(args):
    if args.which == "family1":
        res = C.build_family1(_regular_input(args))
    elif args.which == "family2":
        res = C.build_family2(_chiral_input(args))
    elif args.which == "alternating":
        res = C.build_alternating(_chiral_input(args))
    else:
        if not args.input or not args.sigma:
            raise BadParams("higher-rank needs --input M.mpx and --sigma WORD")
        M = C.regular_from_maniplex(FL.read(args.input))
        if args.polytope:
            P_ = C.regular_from_maniplex(FL.read(args.polytope))
        elif args.group:
            P_ = C.regular_polytope(presentation=_read_presentation(args.group),
                                    max_cosets=max_cosets_from_env())
        elif args.schlafli:
            P_ = C.regular_polytope(schlafli=args.schlafli, max_cosets=max_cosets_from_env())
        else:
            raise BadParams("higher-rank needs --polytope, --group or --schlafli for P")
        Kp, _ = C.facet_group(M.maniplex)
        G = Kp.group
        # rho generators are involutions, so inverse letters act like the letter
        sigma = G.word_element([x & ~1 for x in parse_word(args.sigma, G.names)])
        res = C.build_higher_rank(M, sigma, P_)
    if args.voltage_output:
        V.write_vpx(res.voltage, args.voltage_output)
    _emit(FL.serialize(res.maniplex), args.output)
    if args.output:
        notes = {k: v for k, v in res.notes.items() if isinstance(v, (int, float, str, bool, list))}
        sys.stdout.write(json.dumps({"flags": res.maniplex.flag_count,
                                     "preconditions": res.preconditions.as_dict(),
                                     "notes": notes}, default=int) + "\n")
    return 0


def cmd_analyze(args):
    M = FL.read(args.input)
    rep = A.report(M)
    if args.format == "json":
        _emit(_json(rep), args.output)
    else:
        lines = [f"{k}: {v}" for k, v in rep.items() if k != "stg"]
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_stg(args):
    M = FL.read(args.input)
    _emit(FL.serialize(A.symmetry_type_graph(M).premaniplex), args.output)
    return 0


def cmd_check_polytope(args):
    M = FL.read(args.input)
    rep = A.check_polytopality(M)
    if args.format == "json":
        w = rep.witness
        out = {"polytope": rep.is_polytope}
        if w is not None:
            out["witness"] = {"flags": [w[0], w[1]], "m": w[2][0], "k": w[2][1]}
        _emit(_json(out))
    elif rep.is_polytope:
        _emit("polytope\n")
    else:
        phi, psi, (m, k) = rep.witness
        _emit(f"not-polytope phi={phi} psi={psi} m={m} k={k}\n")
    return 0


def cmd_petrie(args):
    M = FL.read(args.input)
    pr = FL.petrie_polygons(M)
    out = {"polygons": int(pr.lengths.shape[0]),
           "lengths": {str(k): v for k, v in pr.lengths_histogram().items()},
           "all_simple": pr.all_simple}
    if args.format == "json":
        _emit(_json(out))
    else:
        _emit(f"polygons: {out['polygons']}\nlengths: {out['lengths']}\n"
              f"all_simple: {out['all_simple']}\n")
    return 0


def cmd_operate(args):
    M = FL.read(args.input)
    for spec in args.op:
        if spec.strip() in ("dual", "identity"):
            O = V.builtin_operator(spec.strip(), M.rank)  # rank taken from the input
        else:
            O = V.parse_operator_spec(spec)
        M = V.operator_apply(M, O)
    _emit(FL.serialize(M), args.output)
    return 0


def _image_array(text):
    try:
        return np.array([int(t) for t in text.replace(",", " ").split()], dtype=np.int64)
    except ValueError:
        raise BadParams("automorphism must be a list of flag images") from None


def cmd_lift_check(args):
    Vg = V.read_vpx(args.input)
    tau = _image_array(args.automorphism)
    if tau.shape[0] != Vg.base.flag_count:
        raise BadParams("automorphism length differs from the flag count",
                        expected=Vg.base.flag_count, got=int(tau.shape[0]))
    ok = V.lift_check(Vg, tau)
    _emit(_json({"lifts": ok}) if args.format == "json" else ("true\n" if ok else "false\n"))
    return 0


def cmd_isomorphic(args):
    A_, B_ = FL.read(args.first), FL.read(args.second)
    img = FL.isomorphic(A_, B_)
    if args.format == "json":
        _emit(_json({"isomorphic": img is not None,
                     "map": None if img is None else img.tolist()}))
    else:
        _emit("isomorphic\n" if img is not None else "not-isomorphic\n")
    return 0


def cmd_catalog(args):
    if args.action == "show":
        if not args.name:
            raise BadParams("catalog show needs an entry name")
        _emit(FL.serialize(C.catalog(args.name, *args.params)), args.output)
        return 0
    if args.action == "list":
        _emit("\n".join(sorted(C.CATALOG)) + "\n")
        return 0
    only = {int(x) for x in args.only.split(",")} if args.only else None
    manifest = verify.load_manifest(args.manifest)
    ok = True
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for res in verify.run_manifest(manifest, only):
            print(res.line(), flush=True)
            if args.verbose:
                for c in res.checks:
                    mark = "ok " if c.ok else "BAD"
                    print(f"    {mark} {c.name} = {c.observed!r} (expected {c.expected!r}; "
                          f"{c.provenance})")
            ok &= res.ok
    return 0 if ok else 1


# --- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="maniforge",
                                description="Maniplexes, voltage covers and constructions.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="regular or chiral polytope from a group")
    b.add_argument("kind", choices=["regular", "chiral"])
    b.add_argument("--schlafli", type=_schlafli)
    b.add_argument("--presentation")
    b.add_argument("--sigmas", help="comma-separated generator names used as sigma_1..")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("construct", help="family-1/family-2/alternating/higher-rank builders")
    c.add_argument("which", choices=["family1", "family2", "alternating", "higher-rank"])
    c.add_argument("--input")
    c.add_argument("--group", help="presentation (.grp) of the input polytope's group")
    c.add_argument("--schlafli", type=_schlafli)
    c.add_argument("--polytope", help="higher-rank: the regular N-polytope P (.mpx)")
    c.add_argument("--sigma", help="higher-rank: central involution as a word in rho0..")
    c.add_argument("--voltage-output", help="also write the voltage premaniplex (.vpx)")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    def single(name, func, helptext, fmt="json", output=True):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("input")
        if fmt:
            s.add_argument("--format", choices=["text", "json"], default=fmt)
        if output:
            s.add_argument("-o", "--output")
        s.set_defaults(func=func)
        return s

    single("analyze", cmd_analyze, "full JSON report")
    single("stg", cmd_stg, "symmetry type graph (.mpx)", fmt=None)
    single("check-polytope", cmd_check_polytope, "path intersection property", fmt="text",
           output=False)
    single("petrie", cmd_petrie, "Petrie polygons", fmt="text", output=False)

    o = single("operate", cmd_operate, "apply voltage operators in order", fmt=None)
    o.add_argument("--op", action="append", required=True,
                   help="dual|petrial|opposite|identity:n|family1:n|family2:k|..._prime")

    lc = single("lift-check", cmd_lift_check, "does a base automorphism lift?", fmt="text",
                output=False)
    lc.add_argument("--automorphism", required=True, help="flag images, space or comma separated")

    i = sub.add_parser("isomorphic", help="isomorphism test")
    i.add_argument("first")
    i.add_argument("second")
    i.add_argument("--format", choices=["text", "json"], default="text")
    i.set_defaults(func=cmd_isomorphic)

    k = sub.add_parser("catalog", help="catalog entries and the acceptance manifest")
    k.add_argument("action", choices=["verify", "show", "list"])
    k.add_argument("name", nargs="?")
    k.add_argument("params", nargs="*", type=int)
    k.add_argument("--only", help="comma-separated criterion ids")
    k.add_argument("--manifest", help="alternative manifest file")
    k.add_argument("-v", "--verbose", action="store_true")
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_catalog)
    return p


def _showwarning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {category.__name__}: {message}", file=sys.stderr)


def run(argv=None):
    warnings.showwarning = _showwarning
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ManiforgeError as exc:
        print(exc.oneline(), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"IOError path={exc.filename} reason={exc.strerror!r}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
