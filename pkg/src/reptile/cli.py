"""Command line: classify, search, verify, render, enumerate, substitute, regions.

Exit codes: 0 ok, 1 verification or refutation failed, 2 usage, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .exactfield import FieldError, parse_quadval
from .filters import CandidateVerdict, FilterOptions, enumerate_candidates, verdict
from .geometry import M_HAT, S2_HAT, S_HAT, region_family
from .search import AXIS_ALIGNED, BUDGET, FOUND, FULL_GROUP, SearchOptions, refute_small_n, scale_factor, search_rep
from .tiling import parse_tiling, render_svg, sample_membership, serialize_tiling, substitute, verify_tiling
from .trapezoid import trapezoid_from_params

OK, FAILED, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _trapezoid(args):
    params = {"theta": args.theta, "a": args.a}
    if args.psi:
        params["psi"] = args.psi
    if args.klass:
        params["class"] = args.klass
    return trapezoid_from_params(args.kind, params)


def _add_shape(p):
    p.add_argument("kind", choices=["right", "iso", "gen"])
    p.add_argument("--theta", required=True, help="angle such as 1/3*pi or acos(3/5)")
    p.add_argument("--a", required=True, help="upper base, e.g. 1/8 or 1/2*sqrt(2)")
    p.add_argument("--psi", help="second base angle (gen only)")
    p.add_argument("--class", dest="klass", choices=["acute", "obtuse"], help="gen only")


def _read(path):
    with open(path) as fh:
        return fh.read()


def _write(path, text, out):
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def _approx(x) -> str:
    return format(float(x), ".12g")


# -- verbs ------------------------------------------------------------------------

def cmd_classify(args, out):
    T = _trapezoid(args)
    v = verdict(T, FilterOptions(args.rho_max))
    out.write(f"trapezoid\t{T}\n")
    if args.decimal:
        out.write(f"approx\ta={_approx(T.a)} b={_approx(T.b)} h={_approx(T.h)}\n")
    out.write(v.report())
    return FAILED if v.refuted else OK


def _search_opts(args, orientation):
    width = args.threads
    env = os.environ.get("REPTILE_THREADS")
    if env:
        width = int(env)
    return SearchOptions(
        orientation_set=orientation,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
        use_cover_pruning=not args.no_cover,
        use_angle_pruning=not args.no_angle,
        use_area_pruning=not args.no_area,
        parallel_width=max(1, width),
    )


def cmd_search(args, out):
    T = _trapezoid(args)
    n = args.n
    if scale_factor(n, T.d) is None:
        out.write(f"rejected\tsqrt({n}) is not in Q(sqrt({T.d}))\n")
        return FAILED
    if T.klass == "right" and not args.no_rules:
        r = refute_small_n(T, n)
        if r.refuted:
            out.write(f"refuted\trule {r.rule}\t{r.reason}\n")
            return FAILED
    if args.orientations == "auto":
        plan = [AXIS_ALIGNED, FULL_GROUP]
    else:
        plan = [args.orientations]
    total = 0
    for orientation in plan:
        res = search_rep(T, n, _search_opts(args, orientation))
        total += res.nodes
        out.write(f"search\t{orientation}\t{res.summary()}\n")
        if res.note:
            out.write(f"note\t{res.note}\n")
        if args.log:
            _write(args.log, "".join(line + "\n" for line in res.proof_log), out)
        if res.status == FOUND:
            out.write(f"found\t{len(res.tiling.tiles)} tiles\tnodes={total}\n")
            text = serialize_tiling(res.tiling)
            if args.out:
                _write(args.out, text, out)
            return OK
        if res.status == BUDGET:
            out.write("inconclusive\tbudget exceeded\n")
            return INCONCLUSIVE
    out.write(f"exhausted-none\tno rep-{n} tiling\tnodes={total}\n")
    return FAILED


def cmd_verify(args, out):
    t = parse_tiling(_read(args.tiling))
    bad = verify_tiling(t)
    for v in bad:
        out.write(f"violation\t{v}\n")
    if args.samples:
        miss = sample_membership(t, args.samples, args.seed)
        out.write(f"sampling\t{args.samples} points\t{miss} mismatches\n")
        if miss and not bad:
            bad = ["sampling"]
    if args.decimal:
        out.write(f"approx\tregion area {_approx(t.base.area() * t.n)}\n")
    if bad:
        out.write("result\tviolations\n")
        return FAILED
    out.write(f"result\tOk\t{len(t.tiles)} tiles of {t.base}\n")
    return OK


def cmd_render(args, out):
    t = parse_tiling(_read(args.tiling))
    svg = render_svg(t)
    _write(args.out, svg, out)
    return OK


def cmd_enumerate(args, out):
    if args.kind == "gen":
        raise UsageError("enumerate supports right and iso")
    count = 0
    for th, a, v in enumerate_candidates(args.kind, args.qmax, args.denmax, Fraction(args.amax), args.mixed,
                                         FilterOptions(args.rho_max)):
        if not isinstance(v, CandidateVerdict) or v.refuted:
            continue
        count += 1
        line = f"theta={th.literal()} a={a}"
        if args.decimal:
            line += f"\t{_approx(th.frac)}*pi\t{_approx(a)}"
        out.write(line + "\n")
    out.write(f"survivors\t{count}\n")
    return OK


def cmd_substitute(args, out):
    t = parse_tiling(_read(args.tiling))
    _write(args.out, serialize_tiling(substitute(t)), out)
    return OK


def cmd_regions(args, out):
    T = _trapezoid(args)
    names = {"M_hat": M_HAT, "S_hat": S_HAT, "S2_hat": S2_HAT}
    poly = region_family(names[args.region], T, args.rho, parse_quadval(args.alpha, T.d))
    text = poly.to_text()
    if args.decimal:
        text += "".join(f"# {_approx(p.x)} {_approx(p.y)}\n" for p in poly.vertices)
    _write(args.out, text, out)
    return OK


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reptile", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="file of key=value lines mirroring long flags")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="run the necessary-condition filters")
    _add_shape(p)
    p.add_argument("--rho-max", type=int, default=6)
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="search for a rep-n tiling")
    _add_shape(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orientations", choices=["auto", FULL_GROUP, AXIS_ALIGNED], default="auto")
    p.add_argument("--node-budget", type=int, default=5_000_000)
    p.add_argument("--time-budget", type=float, default=3600.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-cover", action="store_true")
    p.add_argument("--no-angle", action="store_true")
    p.add_argument("--no-area", action="store_true")
    p.add_argument("--no-rules", action="store_true", help="skip the small-n refutation rules")
    p.add_argument("--out", help="tiling file to write when found")
    p.add_argument("--log", help="file for the pruning log")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a tiling file exactly")
    p.add_argument("tiling")
    p.add_argument("--samples", type=int, default=0, help="also run random point sampling")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="write an SVG picture of a tiling")
    p.add_argument("tiling")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("enumerate", help="scan a (theta, a) grid through the filters")
    p.add_argument("kind", choices=["right", "iso", "gen"])
    p.add_argument("--qmax", type=int, default=60)
    p.add_argument("--denmax", type=int, default=16)
    p.add_argument("--amax", default="2", help="rational cap on the upper base")
    p.add_argument("--mixed", action="store_true", help="add u+v*sqrt(d) upper bases")
    p.add_argument("--rho-max", type=int, default=6)
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("substitute", help="compose a rep-n tiling with itself")
    p.add_argument("tiling")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_substitute)

    p = sub.add_parser("regions", help="write a trapezoid or staircase region polygon")
    p.add_argument("region", choices=["M_hat", "S_hat", "S2_hat"])
    _add_shape(p)
    p.add_argument("--rho", type=int, default=1)
    p.add_argument("--alpha", required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_regions)
    return ap


def _config_tokens(path, sub: argparse.ArgumentParser, given: list[str]) -> list[str]:
    """Turn key=value lines into flags that explicit arguments still override."""
    flags = {}
    for act in sub._actions:
        for opt in act.option_strings:
            if opt.startswith("--"):
                flags[opt[2:]] = act
    tokens = []
    for raw in _read(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        key, val = key.strip().replace("_", "-"), val.strip()
        if not eq or key not in flags:
            raise UsageError(f"bad config line {raw!r}")
        if f"--{key}" in given:
            continue
        if isinstance(flags[key], argparse._StoreTrueAction):
            if val.lower() in ("1", "true", "yes", "on"):
                tokens.append(f"--{key}")
        else:
            tokens += [f"--{key}", val]
    return tokens


def _subparser(ap, verb):
    return _subs(ap).get(verb)


def _with_config(ap, argv: list[str]) -> list[str]:
    """Splice config-file flags in right after the verb."""
    verbs = list(_subs(ap))
    path = None
    for i, tok in enumerate(argv):
        if tok in verbs:
            break
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return argv
    vi = next((i for i, tok in enumerate(argv) if tok in verbs), None)
    if vi is None:
        return argv
    extra = _config_tokens(path, _subparser(ap, argv[vi]), argv)
    return argv[: vi + 1] + extra + argv[vi + 1:]


def _subs(ap):
    for act in ap._actions:
        if isinstance(act, argparse._SubParsersAction):
            return act.choices
    return {}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        argv = _with_config(ap, argv)
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    except (UsageError, OSError) as e:
        sys.stderr.write(f"reptile: {e}\n")
        return USAGE
    try:
        return args.func(args, out)
    except UsageError as e:
        sys.stderr.write(f"reptile: {e}\n")
        return USAGE
    except (FieldError, ValueError, KeyError, OSError) as e:
        sys.stderr.write(f"reptile: {e}\n")
        return USAGE

if __name__ == "__main__":
    sys.exit(main())
