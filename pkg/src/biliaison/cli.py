"""Command-line front end.

Exit codes: 0 computed, 1 precondition violated, 2 parse error, 3 not a curve.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .curves import NotACurve, PreconditionError, make_curve
from .idealfile import IdealFile, bundled, bundled_names, read_ideal_file
from .ideals import GradedIdeal
from .koszul import GenericityError, koszul_dims, make_type, minimal_curve, predicted_invariants
from .liaison import (
    admissible_heights,
    descend,
    descending_obstruction_report,
    elementary_biliaison,
    enumerate_surfaces,
    link,
    verify_minimality_subcanonical,
)
from .modules import GradedModule
from .polynomial import DEFAULT_PRIME, ParseError, is_prime, parse_polynomial
from .suite import paper_suite

EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE, EXIT_NOT_CURVE = 0, 1, 2, 3


@dataclass
class JobConfig:
    p: int = DEFAULT_PRIME
    seed: int = 0
    window: tuple | None = None
    strict_cm: bool = False
    output: str = "text"

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")
        if self.window is not None and self.window[0] > self.window[1]:
            raise PreconditionError("empty degree window")


def _window(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like LO:HI") from None
    return lo, hi


def _load(source: str, cfg: JobConfig) -> IdealFile:
    """A path, or the name of a bundled ideal file."""
    path = Path(source)
    if path.exists():
        return read_ideal_file(path, cfg.p)
    if source in bundled_names():
        return bundled(source, cfg.p)
    raise PreconditionError(f"no such ideal file: {source}")


def _curve(args, cfg: JobConfig):
    f = _load(args.ideal, cfg)
    return make_curve(f.generators, cfg.p, strict_cm=cfg.strict_cm, name=f.name, seed=cfg.seed), f


def _dims(fn, lo, hi) -> dict:
    return {str(n): fn(n) for n in range(lo, hi + 1)}


# ------------------------------------------------------------------ commands

def cmd_gb(args, cfg):
    f = _load(args.ideal, cfg)
    I = GradedIdeal(f.generators, cfg.p)
    return {"generators": [str(g) for g in f.generators],
            "groebner": [str(g) for g in I.groebner],
            "minimal_generators": [str(g) for g in I.minimal_generators]}


def cmd_resolve(args, cfg):
    f = _load(args.ideal, cfg)
    M = GradedModule.quotient_ring(GradedIdeal(f.generators, cfg.p))
    return {"betti": M.betti.to_json(), "ranks": M.betti.ranks(),
            "projective_dimension": M.betti.projective_dimension()}


def cmd_hilbert(args, cfg):
    f = _load(args.ideal, cfg)
    M = GradedModule.quotient_ring(GradedIdeal(f.generators, cfg.p))
    lo, hi = cfg.window or (0, 8)
    hp = M.hilbert_polynomial
    return {"hilbert_function": _dims(M.hilbert_function, lo, hi),
            "hilbert_polynomial": str(hp), "dimension": hp.degree + 1}


def cmd_curve_info(args, cfg):
    C, _ = _curve(args, cfg)
    out = C.report()
    if cfg.window:
        lo, hi = cfg.window
        out["h0_ideal"] = _dims(C.h0_ideal, lo, hi)
        out["h1_structure"] = _dims(C.h1_structure, lo, hi)
    return out


def cmd_link(args, cfg):
    C, _ = _curve(args, cfg)
    F, G = parse_polynomial(args.f, cfg.p), parse_polynomial(args.g, cfg.p)
    res = link(C, F, G)
    return {"degrees": list(res.degrees), "curve": res.curve.report(), "checks": res.checks}


def cmd_biliaison(args, cfg):
    C, f = _curve(args, cfg)
    Q = f.surface(parse_polynomial(args.surface, cfg.p))
    if args.mult is not None:
        step = elementary_biliaison(C, Q, parse_polynomial(args.mult, cfg.p))
    elif args.height is not None:
        step = descend(C, Q, args.height, seed=cfg.seed)
    else:
        raise PreconditionError("give --mult (ascending) or --height (descending)")
    return {"surface": Q.to_json(), "height": step.height, "curve": step.target.report(),
            "checks": step.checks}


def _surfaces(C, f: IdealFile, args, cfg, heights):
    if args.surface:
        return [f.surface(parse_polynomial(q, cfg.p)) for q in args.surface]
    out = []
    if heights:
        for s in range(C.s0, C.e + 4 + max(heights) + 1):
            out += enumerate_surfaces(C, s, f.hints(), seed=cfg.seed)
    return out


def cmd_obstruct(args, cfg):
    C, f = _curve(args, cfg)
    heights = args.h if args.h else admissible_heights(C)
    rep = descending_obstruction_report(C, _surfaces(C, f, args, cfg, heights), heights, seed=cfg.seed)
    return rep.to_json(with_witness=not args.no_witness)


def _type(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError("type must look like n1,n2,n3,n4", 0, text) from None


def cmd_koszul(args, cfg):
    degrees = _type(args.type)
    t = make_type(degrees, cfg.seed, cfg.p)
    C = minimal_curve(t, strict_cm=cfg.strict_cm)
    mu, s0, e = predicted_invariants(t.degrees)
    return {"type": list(t.degrees), "mu": mu, "predicted": {"s0": s0, "e": e},
            "koszul_dims": {str(n): v for n, v in koszul_dims(t.degrees).items()},
            "forms": [str(h) for h in t.forms], "f": str(t.f), "g": str(t.g), "draws": t.draws,
            "curve": C.report()}


def cmd_verify_min(args, cfg):
    if args.koszul:
        t = make_type(_type(args.koszul), cfg.seed, cfg.p)
        C, hints = minimal_curve(t, strict_cm=cfg.strict_cm), t.surface_factors()
    elif args.ideal:
        C, f = _curve(args, cfg)
        hints = f.hints()
    else:
        raise PreconditionError("give an ideal file or --koszul TYPE")
    r = verify_minimality_subcanonical(C, hints=hints, seed=cfg.seed)
    r["report"] = r["report"].to_json(with_witness=not args.no_witness)
    return r


def cmd_paper_suite(args, cfg):
    goldens = Path(args.golden_dir) if args.golden_dir else None
    return paper_suite(cfg.seed, cfg.p, goldens, args.only, args.update_golden)


# ------------------------------------------------------------------- output

def _text(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _inline(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "none"
    return str(v)


def render(report: dict, output: str) -> str:
    if output == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    return "\n".join(_text(report))


# ------------------------------------------------------------------- parser

COMMANDS = {
    "gb": cmd_gb, "resolve": cmd_resolve, "hilbert": cmd_hilbert, "curve-info": cmd_curve_info,
    "link": cmd_link, "biliaison": cmd_biliaison, "obstruct": cmd_obstruct, "koszul": cmd_koszul,
    "verify-min": cmd_verify_min, "paper-suite": cmd_paper_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="field characteristic")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--window", type=_window, help="degree window LO:HI")
    common.add_argument("--strict-cm", action="store_true", help="certify local Cohen-Macaulayness")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="biliaison", description="Liaison and biliaison of space curves over F_p")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, ideal=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if ideal:
            sp.add_argument("ideal", help="ideal file, or a bundled name such as skew_lines")
        return sp

    add("gb", "reduced Gröbner basis")
    add("resolve", "Betti table of R/I")
    add("hilbert", "Hilbert function and polynomial of R/I")
    add("curve-info", "invariants of the curve")
    sp = add("link", "link by a complete intersection")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = add("biliaison", "elementary biliaison on a surface")
    sp.add_argument("--surface", required=True)
    sp.add_argument("--mult", help="multiplier f (ascending, height deg f)")
    sp.add_argument("--height", type=int, help="negative height (descending)")
    sp = add("obstruct", "descending biliaison obstruction report")
    sp.add_argument("--h", type=int, action="append", help="height, may be repeated")
    sp.add_argument("--surface", action="append", help="surface, may be repeated")
    sp.add_argument("--no-witness", action="store_true")
    sp = add("koszul", "minimal curve of a Koszul module", ideal=False)
    sp.add_argument("--type", required=True, help="n1,n2,n3,n4")
    sp = add("verify-min", "minimality test for a subcanonical curve", ideal=False)
    sp.add_argument("ideal", nargs="?")
    sp.add_argument("--koszul", help="use the minimal curve of this Koszul type")
    sp.add_argument("--no-witness", action="store_true")
    sp = add("paper-suite", "run the reproduction experiments against golden files", ideal=False)
    sp.add_argument("--golden-dir")
    sp.add_argument("--only", action="append")
    sp.add_argument("--update-golden", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = JobConfig(args.prime, args.seed, args.window, args.strict_cm, "json" if args.json else "text")
        report = COMMANDS[args.command](args, cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotACurve as exc:
        print(f"not a curve: {exc}", file=sys.stderr)
        return EXIT_NOT_CURVE
    except (PreconditionError, GenericityError, ValueError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(render(report, cfg.output))
    if args.command == "paper-suite" and report["status"] != "PASS":
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
