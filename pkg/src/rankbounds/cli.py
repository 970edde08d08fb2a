"""Command-line front end.

Subcommands:
  analyze      full bound report for a polynomial (text or JSON)
  decompose    emit a named explicit decomposition as a points file
  check-apolar test whether a polynomial lies in the span of given powers
  groebner     reduced basis and vanishing-locus dimension of an ideal

Exit codes: 0 success, 1 input error, 2 resource guard exceeded,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional

from . import __version__, fixtures, formulas
from .apolar import (apolarity_check_points, decomposition_to_text,
                     parse_points_text)
from .bounds import RunConfig, report
from .errors import BudgetError, InvariantViolation
from .gb import affine_dim, buchberger, leading_exponent
from .polycore import (InputError, MultiPoly, check_signature, nvars,
                       parse_poly, poly_to_str)


def _parse_sig(text: str):
    cleaned = text.strip().lstrip("[").rstrip("]")
    try:
        return check_signature(int(x) for x in cleaned.split(","))
    except (ValueError, InputError) as exc:
        raise InputError(f"bad signature {text!r}: {exc}") from exc


def _read_arg_text(value: str) -> str:
    if value.startswith("@"):
        try:
            with open(value[1:], "r") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {value[1:]}: {exc}") from exc
    return value


def _load_poly(args) -> MultiPoly:
    if getattr(args, "fixture", None):
        if args.poly or args.sig:
            raise InputError("--fixture replaces --sig/--poly")
        return fixtures.fixture(args.fixture)
    if not args.sig or not args.poly:
        raise InputError("need --sig and --poly (or --fixture)")
    sig = _parse_sig(args.sig)
    return parse_poly(_read_arg_text(args.poly), sig)


def _pick_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("APOLAR_RANK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"APOLAR_RANK_SEED must be an integer, got {env!r}") from exc
    return random.SystemRandom().randrange(2 ** 63)


def _emit_json(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    out.write("\n")


def _format_report_text(rep: dict, out) -> None:
    info = rep["input"]
    out.write(f"signature {info['signature']}  multidegree {info['multidegree']}"
              f"  hash {info['hash'][:12]}\n")
    out.write("rank profile:\n")
    for row in rep["profile"]:
        out.write(f"  degree {row['degree']}: rank {row['rank']}\n")
    ap = rep["apolar"]
    out.write(f"apolar length {ap['length']}; generator degrees "
              + ", ".join(f"{g['degree']}x{g['count']}" for g in ap["generators"])
              + "\n")
    out.write("lower bounds:\n")
    for b in rep["bounds"]:
        if b["applicable"]:
            out.write(f"  {b['name']:<15} {b['value']:>6}  [{b['grading']}] "
                      f"{b['detail']}\n")
        else:
            out.write(f"  {b['name']:<15}    n/a  {b['detail']}\n")
    if rep["uppers"]:
        out.write("upper bounds:\n")
        for u in rep["uppers"]:
            tag = "verified" if u["verified"] else "formula only"
            out.write(f"  {u['name']:<18} {u['value']:>6}  ({tag})\n")
    out.write(f"status: {rep['best']['status']}\n")


def cmd_analyze(args) -> int:
    M = _load_poly(args)
    cfg = RunConfig(strategy=args.strategy, seed=_pick_seed(args),
                    max_cells=args.max_cells, gb_budget=args.gb_budget,
                    fmt=args.format, dump_matrices=args.dump_matrices)
    rep = report(M, cfg)
    if args.dump_matrices:
        rep["matrices"] = _dump_matrices(M, cfg)
    if args.format == "json":
        _emit_json(rep, sys.stdout)
    else:
        _format_report_text(rep, sys.stdout)
    return 0


def _dump_matrices(M: MultiPoly, cfg: RunConfig) -> List[dict]:
    from .cata import catalecticant
    from .polycore import md_box
    out = []
    d = M.multidegree()
    for a in md_box(d):
        try:
            mat, _, _ = catalecticant(M, a, cfg.max_cells)
        except BudgetError:
            continue
        out.append({"degree": list(a), "nrows": mat.nrows, "ncols": mat.ncols,
                    "entries": [[i, j, str(v)] for i, row in enumerate(mat.rows)
                                for j, v in sorted(row.items())]})
    return out


DECOMPOSE_FAMILIES = ("monomial", "bihomog", "grouped", "glynn", "ryser",
                      "derksen-det3")


def cmd_decompose(args) -> int:
    name = args.family
    if name == "monomial":
        target, dec = formulas.monomial_product(_require(args, "n"))
    elif name == "bihomog":
        target, dec = formulas.bihomog_product(_require(args, "a"),
                                               _require(args, "b"))
    elif name == "grouped":
        if not args.sig or not args.degs:
            raise InputError("grouped needs --sig and --degs")
        degs = tuple(int(x) for x in args.degs.strip().lstrip("[").rstrip("]").split(","))
        target, dec = formulas.grouped_product(_parse_sig(args.sig), degs)
    elif name == "glynn":
        target, dec = formulas.glynn_permanent(_require(args, "k"))
    elif name == "ryser":
        target, dec = formulas.ryser_permanent(_require(args, "k"))
    elif name == "derksen-det3":
        target, dec = formulas.derksen_det3()
    else:
        raise InputError(f"unknown family {name!r}; known: "
                         + ", ".join(DECOMPOSE_FAMILIES))
    if args.waring and len(dec.sig) > 1:
        target, dec = formulas.split_to_waring(target, dec)
    text = decomposition_to_text(dec)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"verified: {len(dec)} terms, signature {list(dec.sig)}, "
                     f"degree {list(dec.degree)}, target {poly_to_str(target)}\n")
    return 0


def _require(args, name: str) -> int:
    value = getattr(args, name, None)
    if value is None:
        raise InputError(f"family {args.family!r} needs --{name}")
    return value


def cmd_check_apolar(args) -> int:
    M = _load_poly(args)
    points = parse_points_text(_read_arg_text(args.points), M.sig)
    ok, coeffs = apolarity_check_points(M, points)
    if ok:
        sys.stdout.write("true\n")
        for c, pt in zip(coeffs, points):
            groups = " | ".join(",".join(str(x) for x in f) for f in pt.forms)
            sys.stdout.write(f"  {c} : {groups}\n")
    else:
        sys.stdout.write("false\n")
    return 0


def cmd_groebner(args) -> int:
    sig = _parse_sig(args.sig)
    lines = [ln.strip() for ln in _read_arg_text(args.gens).splitlines()]
    gens = [parse_poly(ln, sig) for ln in lines if ln and not ln.startswith("#")]
    if not gens:
        raise InputError("no generators given")
    n = nvars(sig)
    gb = buchberger([g.terms for g in gens], n, args.gb_budget)
    dim = affine_dim(gens, args.gb_budget)
    for g in sorted(gb, key=lambda t: leading_exponent(t)):
        sys.stdout.write(poly_to_str(MultiPoly(sig, g)) + "\n")
    sys.stdout.write(f"dimension: {dim}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rankbounds",
        description="exact rank lower bounds and verified decompositions over Q")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_poly_opts(p):
        p.add_argument("--sig", help="signature, e.g. '[3]' or '3,3'")
        p.add_argument("--poly", help="polynomial text or @file")
        p.add_argument("--fixture", help="named fixture instead of --sig/--poly")

    pa = sub.add_parser("analyze", help="full bound report")
    add_poly_opts(pa)
    pa.add_argument("--strategy", choices=("exact", "modp", "auto"),
                    default="auto")
    pa.add_argument("--seed", type=int, default=None,
                    help="randomness seed (default: APOLAR_RANK_SEED or entropy)")
    pa.add_argument("--max-cells", type=int, default=10000)
    pa.add_argument("--gb-budget", type=int, default=200000)
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.add_argument("--dump-matrices", action="store_true")
    pa.set_defaults(func=cmd_analyze)

    pd = sub.add_parser("decompose", help="emit a named decomposition")
    pd.add_argument("family", choices=DECOMPOSE_FAMILIES)
    pd.add_argument("--n", type=int)
    pd.add_argument("--k", type=int)
    pd.add_argument("--a", type=int)
    pd.add_argument("--b", type=int)
    pd.add_argument("--sig")
    pd.add_argument("--degs")
    pd.add_argument("--waring", action="store_true",
                    help="flatten a grouped decomposition into plain powers")
    pd.add_argument("--out")
    pd.set_defaults(func=cmd_decompose)

    pc = sub.add_parser("check-apolar", help="span membership among powers")
    add_poly_opts(pc)
    pc.add_argument("--points", required=True, help="points file or @file")
    pc.set_defaults(func=cmd_check_apolar)

    pg = sub.add_parser("groebner", help="reduced basis and dimension")
    pg.add_argument("--sig", required=True)
    pg.add_argument("--gens", required=True,
                    help="newline-separated generators or @file")
    pg.add_argument("--gb-budget", type=int, default=200000)
    pg.set_defaults(func=cmd_groebner)
    return top


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except BudgetError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return 2
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
