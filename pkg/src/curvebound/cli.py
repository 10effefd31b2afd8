"""Command line interface.

Exit codes: 0 = every requested check passed (or the command completed),
1 = the hypothesis is obstructed, 2 = usage or input error.

Any option may also come from ``--config FILE`` (``key = value`` lines,
keys are long option names without dashes; repeatable options take
values separated by ``;``).  Command line flags win over the file.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import classify as cls
from .errors import InputError
from .floer import check_dinvariant_bounds
from .gapfn import gap_function
from .obstruct import (
    CHECK_ORDER,
    FAIL,
    CurveHypothesis,
    ReportOptions,
    full_report,
    spectrum_torus,
    ss_counts,
    theorem_main_bounds,
)
from .semigroup import (
    GeneralSingularity,
    NumericalSemigroup,
    SimplePairSingularity,
    alexander_polynomial,
    alexander_second_expansion,
)
from . import serialize as ser

EXIT_OK, EXIT_OBSTRUCTED, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "format": None,  # per-command default, see _fmt
    "spectrum_mode": "ssl",
    "filters": "theorem_main,bmy",
    "checks": ",".join(c for c in CHECK_ORDER if c not in ("genus_formula", "dinvariant")),
}


# -- argument parsing ------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"a pair is p,q; got {text!r}")
    return vals[0], vals[1]


def _generators(text: str) -> tuple[list[int], int | None]:
    gens, _, mbar = text.partition(":")
    try:
        return _int_list(gens), int(mbar) if mbar else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b,c[:MBAR]; got {text!r}") from None


def _degree_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected D or DMIN..DMAX, got {text!r}") from None


def _add_sings(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", action="append", type=_pair, metavar="P,Q",
                   help="singular point with one Puiseux pair (repeatable)")
    p.add_argument("--generators", action="append", type=_generators, metavar="A,B,..[:MBAR]",
                   help="singular point given by semigroup generators, optional M-bar (repeatable)")


def _add_common(p: argparse.ArgumentParser, formats: Sequence[str]) -> None:
    p.add_argument("--format", choices=formats)
    p.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument("--config", metavar="FILE", help="key = value defaults")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvebound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run the obstructions on one hypothesis")
    p.add_argument("--degree", "-d", type=int)
    p.add_argument("--genus", "-g", type=int)
    _add_sings(p)
    p.add_argument("--checks", help=f"comma separated subset of {','.join(CHECK_ORDER[1:])}")
    p.add_argument("--dinv", action="store_true", default=None, help="add the d-invariant cross-check")
    p.add_argument("--spectrum-mode", dest="spectrum_mode", choices=("ssl", "full"))
    p.add_argument("--early-exit", dest="early_exit", action="store_true", default=None)
    _add_common(p, ("json", "csv", "table"))

    p = sub.add_parser("search", help="enumerate candidates (p,q;d) and filter them")
    p.add_argument("--genus", "-g", type=int)
    p.add_argument("--degree", "-d", type=_degree_range, metavar="DMIN..DMAX")
    p.add_argument("--filters", help=f"comma separated subset of {','.join(cls.SEARCH_CHECKS)}")
    p.add_argument("--threads", type=int, help="worker processes (default $CURVEBOUND_THREADS or 1)")
    p.add_argument("--all", dest="include_rejected", action="store_true", default=None,
                   help="also list rejected candidates")
    p.add_argument("--no-early-exit", dest="no_early_exit", action="store_true", default=None)
    _add_common(p, ("csv", "json", "table"))

    p = sub.add_parser("classify", help="reproduce the genus-one one-Puiseux-pair classification")
    p.add_argument("--d-max", dest="d_max", type=int)
    p.add_argument("--threads", type=int)
    _add_common(p, ("table", "json"))

    p = sub.add_parser("semigroup", help="semigroup data of a singular point")
    _add_sings(p)
    p.add_argument("--count", action="append", type=int, metavar="M", help="print R(M) (repeatable)")
    _add_common(p, ("json", "table"))

    p = sub.add_parser("spectrum", help="spectra of x^p - y^q and the SS_l inequalities")
    _add_sings(p)
    p.add_argument("--degree", "-d", type=int, help="also evaluate SS_l for this degree")
    _add_common(p, ("json", "table"))

    p = sub.add_parser("dinv", help="bottom and top d-invariants for k in S_d")
    p.add_argument("--degree", "-d", type=int)
    p.add_argument("--genus", "-g", type=int)
    _add_sings(p)
    _add_common(p, ("json", "table"))

    p = sub.add_parser("fib", help="Fibonacci numbers, Fibonacci triples and Pell degrees")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="print phi_N")
    g.add_argument("--triple", type=int, metavar="J", help="print (phi_{4J-2},phi_{4J+2};phi_{4J})")
    g.add_argument("--pell", type=int, metavar="N", help="degrees d <= N with 5d^2+4 a square")
    _add_common(p, ("table", "json"))
    return parser


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def load_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InputError(f"{path}:{lineno}: expected key = value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config(args: argparse.Namespace, sub: argparse.ArgumentParser, config: dict[str, str]) -> None:
    actions = {a.dest: a for a in sub._actions}
    for key, value in config.items():
        action = actions.get(key)
        if action is None or key in ("config", "help"):
            raise InputError(f"unknown config key {key!r} for {args.command}")
        if getattr(args, key) is not None:
            continue  # flag given explicitly
        convert = action.type or str
        try:
            if isinstance(action, argparse._AppendAction):
                parsed = [convert(v.strip()) for v in value.split(";") if v.strip()]
            elif isinstance(action, argparse._StoreTrueAction):
                parsed = value.lower() in ("1", "true", "yes", "on")
            else:
                parsed = convert(value)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise InputError(f"config key {key!r}: {exc}") from None
        setattr(args, key, parsed)


def parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        _apply_config(args, _subparser(parser, args.command), load_config(args.config))
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    return args


# -- helpers ---------------------------------------------------------------------


def _singularities(args: argparse.Namespace) -> list:
    sings: list = [SimplePairSingularity(p, q) for p, q in (args.pair or [])]
    for gens, mbar in args.generators or []:
        sings.append(GeneralSingularity(NumericalSemigroup(tuple(gens)), mbar))
    if not sings:
        raise InputError("give at least one --pair or --generators")
    return sings


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise InputError("missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _fmt(args: argparse.Namespace, default: str) -> str:
    return args.format or default


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _describe_witness(name: str, w, d: int, g: int) -> str:
    if name == "theorem_main":
        j, b = w.indices
        u, _, _ = theorem_main_bounds(d, g, j, b)
        side = "left" if w.lhs < w.bound_lo else "right"
        return f"(j,b)=({j},{b}): {w.bound_lo} ≤ R({u})={w.lhs} ≤ {w.bound_hi} violated on the {side}"
    if name == "bmy":
        return f"sum of M-bar = {w.lhs} > 3d+4g-5 = {w.bound_hi}"
    if name == "multiplicity":
        return f"m={w.indices[0]}: d^2-3(1+m)d+m^2-m = {w.lhs} > 0"
    if name == "spectrum":
        return f"at {_q(w.indices[0])}: {w.lhs} > {w.bound_hi}"
    if name == "dinvariant":
        k = _q(w.indices[0])
        if w.bound_lo is not None:
            return f"k={k}: d_b = {_q(w.lhs)} < {w.bound_lo}"
        return f"k={k}: d_t = {_q(w.lhs)} > {w.bound_hi}"
    if name == "genus_formula":
        return f"(d-1)(d-2)/2 - sum(delta) = {_q(w.lhs)} != g = {w.bound_hi}"
    return repr(w)


def report_to_table(report) -> str:
    h = report.hypothesis
    lines = [f"hypothesis: {h}"]
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        lines.append(f"{c.name:<{width}}  {c.status}")
        for w in c.witnesses:
            lines.append("    " + _describe_witness(c.name, w, h.d, h.g))
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def _write(args: argparse.Namespace, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    _require(args, "degree", "genus")
    h = CurveHypothesis(args.degree, args.genus, tuple(_singularities(args)))
    checks = set(_split(args.checks))
    if args.dinv:
        checks.add("dinvariant")
    opts = ReportOptions(
        checks=frozenset(checks),
        spectrum_mode=args.spectrum_mode,
        early_exit=bool(args.early_exit),
    )
    report = full_report(h, opts)
    fmt = _fmt(args, "table")
    if fmt == "json":
        text = ser.report_to_json(report)
    elif fmt == "csv":
        text = ser.report_to_csv(report)
    else:
        text = report_to_table(report)
    _write(args, text)
    return EXIT_OBSTRUCTED if report.verdict == FAIL else EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    _require(args, "genus", "degree")
    d_min, d_max = args.degree
    table = cls.search(
        d_min, d_max, args.genus, _split(args.filters),
        threads=args.threads, early_exit=not args.no_early_exit,
    )
    rows = list(table.rows) if args.include_rejected else table.survivors
    fmt = _fmt(args, "csv")
    if fmt == "json":
        text = ser.dumps(ser.table_to_dict(table, bool(args.include_rejected)))
    elif fmt == "table":
        text = "".join(
            f"{str(r.triple):<22} {r.verdict:<5} " + " ".join(f"{n}={s}" for n, s in r.statuses if n in table.filters) + "\n"
            for r in rows
        )
    else:
        text = ser.survivors_to_csv(rows)
    _write(args, text)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    _require(args, "d_max")
    c = cls.classify_genus_one(args.d_max, threads=args.threads)
    if _fmt(args, "table") == "json":
        text = ser.dumps(ser.classification_to_dict(c))
    else:
        lines = [f"genus one, one Puiseux pair, d <= {c.d_max}", "survivors:"]
        for s in c.survivors:
            lines.append(f"  {str(s.triple):<22} {s.family:<16} realizable: {s.realizable}")
        lines.append(f"missing expected: {', '.join(map(str, c.missing)) or 'none'}")
        lines.append(f"unexplained survivors: {', '.join(map(str, c.unexplained)) or 'none'}")
        lines.append(f"rejected: {len(c.rejected)} candidates")
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return EXIT_OK


def cmd_semigroup(args: argparse.Namespace) -> int:
    out = []
    for s in _singularities(args):
        S = s.semigroup
        I = gap_function(S)
        entry = {
            "generators": list(S.generators),
            "conductor": S.conductor,
            "delta": S.delta,
            "mu": S.mu,
            "gaps": list(S.gaps),
            "alexander": alexander_polynomial(S),
            "alexander_second": alexander_second_expansion(S),
            "gap_function": list(I.table),
            "mbar": s.mbar,
            "counts": {str(m): S.count_below(m) for m in (args.count or [])},
        }
        out.append(entry)
    if _fmt(args, "table") == "json":
        text = ser.dumps(out if len(out) > 1 else out[0])
    else:
        lines = []
        for e in out:
            lines.append(f"semigroup <{','.join(map(str, e['generators']))}>")
            for key in ("conductor", "delta", "mu", "mbar"):
                lines.append(f"  {key}: {e[key]}")
            lines.append(f"  gaps: {' '.join(map(str, e['gaps']))}")
            lines.append(f"  alexander: {' '.join(map(str, e['alexander']))}")
            for m, r in e["counts"].items():
                lines.append(f"  R({m}) = {r}")
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    sings = _singularities(args)
    if not all(isinstance(s, SimplePairSingularity) for s in sings):
        raise InputError("spectra are available for --pair singular points only")
    spectra = []
    for s in sings:
        sp = spectrum_torus(s.p, s.q)
        spectra.append({
            "p": s.p,
            "q": s.q,
            "size": len(sp),
            "values": [[_q(x), m] for x, m in sorted(sp.multiplicities().items())],
        })
    result: dict = {"spectra": spectra}
    status = EXIT_OK
    if args.degree is not None:
        g = (args.degree - 1) * (args.degree - 2) // 2 - sum(s.delta for s in sings)
        lhs, rhs = ss_counts(CurveHypothesis(args.degree, max(g, 0), tuple(sings)))
        result["ss"] = {"degree": args.degree, "lhs": lhs, "rhs": rhs}
        if any(a > b for a, b in zip(lhs, rhs)):
            status = EXIT_OBSTRUCTED
    if _fmt(args, "table") == "json":
        text = ser.dumps(result)
    else:
        lines = []
        for e in spectra:
            below = [f"{v}" + (f"^{m}" if m > 1 else "") for v, m in e["values"] if Fraction(v) <= 1]
            lines.append(f"Sigma_{{{e['p']},{e['q']}}} ({e['size']} values), up to 1: {' '.join(below)}")
        if "ss" in result:
            lines.append(f"SS_l, l=1..{args.degree}: counts {result['ss']['lhs']}  bounds {result['ss']['rhs']}")
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return status


def cmd_dinv(args: argparse.Namespace) -> int:
    _require(args, "degree", "genus")
    res = check_dinvariant_bounds(args.degree, args.genus, _singularities(args))
    enc = ser.encode_number
    if _fmt(args, "table") == "json":
        text = ser.dumps({
            "values": [{"k": enc(k), "d_bottom": enc(db), "d_top": enc(dt)} for k, db, dt in res.values],
            "witnesses": [{"k": enc(w.k), "j": w.j, "kind": w.kind, "value": enc(w.value), "bound": w.bound}
                          for w in res.witnesses],
            "verdict": "pass" if res.passed else "fail",
        })
    else:
        g = args.genus
        lines = [f"{'k':>8} {'d_b':>14} {'d_t':>14}"]
        for k, db, dt in res.values:
            flag = ""
            if db < -g:
                flag += f"  d_b < {-g}"
            if dt > g:
                flag += f"  d_t > {g}"
            lines.append(f"{_q(k):>8} {_q(db):>14} {_q(dt):>14}{flag}")
        lines.append(f"verdict: {'pass' if res.passed else 'fail'}")
        text = "\n".join(lines) + "\n"
    _write(args, text)
    return EXIT_OK if res.passed else EXIT_OBSTRUCTED


def cmd_fib(args: argparse.Namespace) -> int:
    as_json = _fmt(args, "table") == "json"
    if args.triple is not None:
        t = cls.fibonacci_triple(args.triple)
        text = ser.dumps({"p": t.p, "q": t.q, "d": t.d}) if as_json else f"({t.p},{t.q};{t.d})\n"
    elif args.pell is not None:
        ds = cls.pell_degrees(args.pell)
        text = ser.dumps(ds) if as_json else " ".join(map(str, ds)) + "\n"
    elif args.n is not None:
        v = cls.fibonacci(args.n)
        text = ser.dumps(v) if as_json else f"{v}\n"
    else:
        raise InputError("give one of --n, --triple, --pell")
    _write(args, text)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "search": cmd_search,
    "classify": cmd_classify,
    "semigroup": cmd_semigroup,
    "spectrum": cmd_spectrum,
    "dinv": cmd_dinv,
    "fib": cmd_fib,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage to stderr
        return EXIT_USAGE if exc.code else EXIT_OK
    except (InputError, OSError) as exc:
        print(f"curvebound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (InputError, OSError) as exc:
        print(f"curvebound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
