"""Command-line front end.

    quarticlines census   SURFACE [--field F p [k]] [--tower K]
    quarticlines graph    SURFACE ...
    quarticlines fibration SURFACE --line "x3=x4=0"
    quarticlines classify-line SURFACE --line ...
    quarticlines flecnodal SURFACE [--point a:b:c:d]
    quarticlines verify [--only 1,4] [--schur-file PATH]

SURFACE is a file, the name of a bundled example, or an inline polynomial.
Exit codes: 0 success, 1 usage error, 2 mathematical finding (budget
violation, failed audit or failed verify check).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

from .algebra.fields import FieldError, FieldSpec
from .census import (BudgetViolation, CensusError, char0_count, incidence_graph, stabilized_count)
from .data import example_path, examples
from .fibration import FibrationError, analyze_line, line_kind, ramification_profile
from .flecnodal import FlecnodalError, flecnodal_member, line_budget_audit
from .parse import ParseError, parse_field, parse_number, parse_polynomial, parse_surface
from .surface import ProjLine, QuarticSurface, SurfaceError, smoothness_check
from .verify import VerifyConfig, run_all

EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2
DEFAULT_PRIMES = (101, 103, 107)


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    surface: str
    field: FieldSpec | None = None
    tower: int = 3
    threads: int = 1
    format: str = "text"
    seed: int = 0
    params: dict = dc_field(default_factory=dict)
    method: str = "elimination"
    primes: tuple = DEFAULT_PRIMES


# ---------------------------------------------------------------------------
# inputs

def load_job_surface(cfg: JobConfig) -> QuarticSurface:
    src = cfg.surface
    path = Path(src)
    if not path.exists() and src.replace(".quartic", "") in examples():
        path = example_path(src)
    if path.exists():
        text, name = path.read_text(), path.stem
    else:
        if not any(c.isalpha() for c in src) or "/" in src and src.endswith(".quartic"):
            raise UsageError(f"no such file: {src}")
        text, name = src, "inline"
    return parse_surface(text, cfg.field, cfg.params, name=name)


def parse_line(text: str, S: QuarticSurface) -> ProjLine:
    """``"x3=x4=0"`` or ``"x1-x3, x2-x4"``: linear forms whose common zeros
    are the line."""
    F = S.field
    forms = []
    for chunk in text.split(","):
        sides = [parse_polynomial(s, F) for s in chunk.split("=")]
        if len(sides) == 1:
            sides.append(parse_polynomial("0", F))
        forms += [a - b for a, b in zip(sides, sides[1:])]
    rows = []
    for g in forms:
        if g.is_zero():
            continue
        if not g.is_homogeneous(1):
            raise UsageError(f"not a linear form: {g}")
        unit = [tuple(int(i == j) for i in range(4)) for j in range(4)]
        rows.append([g.terms.get(e, F.zero) for e in unit])
    try:
        return ProjLine.from_equations(F, rows)
    except SurfaceError as exc:
        raise UsageError(f"{text!r}: {exc}") from None


def parse_point(text: str, S: QuarticSurface) -> tuple:
    F = S.field
    parts = text.replace(",", ":").split(":")
    if len(parts) != 4:
        raise UsageError("a point needs four coordinates a:b:c:d")
    return tuple(F.convert(parse_number(p)) for p in parts)


def _require_finite(S: QuarticSurface, what: str):
    if not S.field.is_finite:
        raise UsageError(f"{what} works over a finite field; pass --field F p [k]")


# ---------------------------------------------------------------------------
# commands: each returns (payload, text, exit code)

def cmd_census(cfg: JobConfig, S: QuarticSurface, graph: bool = False):
    if not S.field.is_finite:
        res = char0_count(S, cfg.primes, K=cfg.tower, threads=cfg.threads)
        payload = {"surface": S.name, "field": "Q", "count": res.count, "agree": res.agree, "note": res.note,
                   "per_prime": {str(p): r.to_json(S.name) for p, r in sorted(res.per_prime.items())}}
        text = [f"{S.name} over Q: " + (f"{res.count} lines" if res.agree else f"undetermined ({res.note})")]
        text += [f"  p={p}: {r.count} lines, levels {r.count_per_level}" for p, r in sorted(res.per_prime.items())]
        return payload, "\n".join(text), EXIT_OK
    res = stabilized_count(S, K=cfg.tower, threads=cfg.threads, method=cfg.method)
    G = incidence_graph(res) if graph else None
    payload = res.to_json(S.name, G)
    text = [f"{S.name} over {res.spec}: {res.count} lines"
            f" ({'stabilized' if res.stabilized else 'not stabilized'}; levels {res.count_per_level}"
            f" over degrees {res.level_degrees})"]
    code = EXIT_OK
    if G is None:
        by_deg = Counter(res.def_degree)
        text.append("  field of definition degree: " + ", ".join(f"{d}: {n}" for d, n in sorted(by_deg.items())))
        for L, d in zip(res.lines, res.def_degree):
            text.append(f"  {L}  deg {d}")
    else:
        budget = line_budget_audit(res, G)
        payload["budget"] = budget.to_json()
        hist = Counter(G.degrees)
        text.append("  vertex degrees: " + ", ".join(f"{d}: {n}" for d, n in sorted(hist.items())))
        per = Counter(len(G.triples(i)) for i in range(len(res.lines)))
        text.append("  coplanar triples per vertex: " + ", ".join(f"{t}: {n}" for t, n in sorted(per.items())))
        shapes = Counter(g.shape for g in G.triples())
        text.append("  triple shapes: " + ", ".join(f"{s}: {n}" for s, n in sorted(shapes.items())))
        text.append("  budget: " + ("ok" if budget.passed else "; ".join(budget.violations)))
        if not budget.passed:
            code = EXIT_FINDING
    return payload, "\n".join(text), code


def cmd_graph(cfg: JobConfig, S: QuarticSurface):
    _require_finite(S, "graph")
    return cmd_census(cfg, S, graph=True)


def cmd_fibration(cfg: JobConfig, S: QuarticSurface, line: str):
    _require_finite(S, "fibration")
    L = parse_line(line, S)
    rep = analyze_line(S, L)
    payload = rep.to_json()
    text = [f"line {L.describe()}: kind {rep.kind.kind}"
            + (f", Segre resultant degree {rep.kind.degree}" if rep.kind.degree is not None else ""),
            f"  R = {rep.ramification.R}, N = {rep.N}, euler = {rep.euler_total}",
            "  fibres: " + ", ".join(f"{k}x{n}" for k, n in rep.type_counts().items())]
    for f in rep.fibers:
        if f.kind.label != "I1" or f.line_count:
            text.append(f"    t={f.t_label()}  {f.kind.label}  x{f.conjugates}  lines {f.line_count}"
                        f"  ramification {f.ramification}")
    text.append("  checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in rep.checks.items()))
    return payload, "\n".join(text), EXIT_OK if all(rep.checks.values()) else EXIT_FINDING


def cmd_classify_line(cfg: JobConfig, S: QuarticSurface, line: str):
    _require_finite(S, "classify-line")
    L = parse_line(line, S)
    kind = line_kind(S, L)
    R = ramification_profile(S, L)
    payload = {"line": [S.field.fmt(c) for c in L.pluecker], "kind": kind.kind, "r_degree": kind.degree,
               "R": R.R, "rh_sum": R.rh_sum}
    text = f"line {L.describe()}: {kind.kind}" + (f" (r of degree {kind.degree})" if kind.degree is not None else "")
    return payload, text + f", R = {R.R}", EXIT_OK


def cmd_flecnodal(cfg: JobConfig, S: QuarticSurface, point: str | None, samples: int):
    _require_finite(S, "flecnodal")
    F = S.field
    if point:
        P = parse_point(point, S)
        smp = flecnodal_member(S, P)
        return smp.to_json(F), f"{point}: {'flecnodal' if smp.member else 'not flecnodal'}", EXIT_OK
    res = stabilized_count(S, K=cfg.tower, threads=cfg.threads, method=cfg.method)
    budget = line_budget_audit(res, incidence_graph(res), S, flecnodal_samples=samples, seed=cfg.seed)
    text = f"{res.count} lines, max degree {budget.max_degree}; " + (
        "all sampled line points flecnodal, budgets hold" if budget.passed else "; ".join(budget.violations))
    return budget.to_json(), text, EXIT_OK if budget.passed else EXIT_FINDING


def cmd_verify(args):
    only = [int(x) for x in args.only.split(",")] if args.only else None
    cfg = VerifyConfig(seed=args.seed if args.seed is not None else VerifyConfig.seed, threads=args.threads,
                       schur_path=args.schur_file)
    lines = []
    results = run_all(cfg, only, echo=(None if args.format == "json" else lambda s: print(s, flush=True)))
    if args.format == "json":
        print(json.dumps([{k: v for k, v in asdict(r).items() if k != "data"} for r in results],
                         indent=2, sort_keys=True))
    else:
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} checks passed")
        print("\n".join(lines))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FINDING


# ---------------------------------------------------------------------------
# argument handling

def _split_field_words(args):
    """``--field F 3 2 fermat.quartic``: the greedy field list may swallow the
    surface argument; move trailing non-numeric words back."""
    words = list(args.field or [])
    if args.surface is None and len(words) > 1 and not words[-1].isdigit():
        args.surface = words.pop()
    args.field = words or None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quarticlines", description="Lines on smooth quartic surfaces.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, line=False):
        p.add_argument("surface", nargs="?", help="file, bundled example name, or inline polynomial")
        p.add_argument("--field", nargs="+", metavar="W", help="Q | F p [k]; overrides the file's field")
        p.add_argument("--tower", type=int, default=3, metavar="K", help="tower levels (default 3)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
        p.add_argument("--method", choices=("elimination", "bruteforce"), default="elimination")
        p.add_argument("--primes", default=",".join(map(str, DEFAULT_PRIMES)),
                       help="primes for counts over Q")
        if line:
            p.add_argument("--line", required=True, help='e.g. "x3=x4=0"')
        return p

    common(sub.add_parser("census", help="count lines along a field tower"))
    common(sub.add_parser("graph", help="incidence graph, coplanar triples and budgets"))
    common(sub.add_parser("fibration", help="singular fibres of the pencil through a line"), line=True)
    common(sub.add_parser("classify-line", help="first or second kind, ramification type"), line=True)
    p = common(sub.add_parser("flecnodal", help="flecnodal membership or line budget audit"))
    p.add_argument("--point", help="a:b:c:d")
    p.add_argument("--samples", type=int, default=3, help="points per line for the audit")
    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--only", help="comma-separated check numbers")
    v.add_argument("--schur-file", help="replace the bundled Schur quartic (negative control)")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def job_from_args(args) -> JobConfig:
    _split_field_words(args)
    if args.surface is None:
        raise UsageError("missing SURFACE argument")
    spec = parse_field(args.field) if args.field else None
    params = {}
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"--param expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = parse_number(v)
    try:
        primes = tuple(int(x) for x in args.primes.split(","))
    except ValueError:
        raise UsageError(f"bad --primes {args.primes!r}") from None
    return JobConfig(args.surface, spec, args.tower, args.threads, args.format, args.seed, params, args.method,
                     primes)


def _emit(cfg: JobConfig, payload, text):
    if cfg.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "verify":
            return cmd_verify(args)
        cfg = job_from_args(args)
        S = load_job_surface(cfg)
        if S.field.is_finite and smoothness_check(S).status == "singular":
            print(f"warning: {S.name} is singular over {S.field.spec}", file=sys.stderr)
        if args.command == "census":
            out = cmd_census(cfg, S)
        elif args.command == "graph":
            out = cmd_graph(cfg, S)
        elif args.command == "fibration":
            out = cmd_fibration(cfg, S, args.line)
        elif args.command == "classify-line":
            out = cmd_classify_line(cfg, S, args.line)
        else:
            out = cmd_flecnodal(cfg, S, args.point, args.samples)
    except BudgetViolation as exc:
        print(f"finding: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except (UsageError, ParseError, FieldError, SurfaceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CensusError, FibrationError, FlecnodalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload, text, code = out
    _emit(cfg, payload, text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
