"""Command-line front end: analyze, plot, verify, corpus.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 precondition refusal,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .parsing import ParseError, parse_polynomial
from .polynomial import BivariatePoly
from .report import PreconditionRefusal, full_report, to_jsonable
from .svgplot import build_figure, emit_svg
from .topology import petrowsky_check

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_REFUSAL = 3
EXIT_VERIFY = 4

CORPUS = [
    ("cubic_one_godron", "x^2 + y^2 + y*(x^2 + y^2)"),
    ("quartic_three_ovals", "y*(x+3)*(x-y)*(y+x-3)"),
    ("quartic_h_in_bminus", "x^4 + 6*x^2*y^2 - y^4 + 3*x^2*y - 3*x*y^2 + 10*y^2 - 10*x^2"),
    ("quartic_e_in_bminus", "x^4 + 6*x^2*y^2 - y^4 + 3*x^2*y - 3*x*y^2 + 10*y^2 + 10*x^2"),
    ("quintic_transversal", "y*(x^2 + y^2)*(x^2 + 2*y^2) + x^4 - 10*x^2 + 10*y^2"),
]


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PARABOLICA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"error: PARABOLICA_SEED must be an integer, got {env!r}",
                  file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
    return 0


def _read_polynomial(path: str) -> BivariatePoly:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: cannot read {path}: {e}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    try:
        return parse_polynomial(text)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _report_verdict(rep) -> int:
    """0 when identity and all applicable bounds pass, 3 on refusal, 4 on failure."""
    if rep.identity is not None and not rep.identity.passed:
        return EXIT_VERIFY
    for b in rep.bounds:
        if b.applicable and not b.passed:
            return EXIT_VERIFY
    if rep.topology is not None and rep.degree >= 3:
        h_deg = 2 * rep.degree - 4
        if h_deg % 2 == 0 and not petrowsky_check(rep.topology, h_deg).passed:
            return EXIT_VERIFY
    if rep.identity is None:
        # the identity could not even be attempted, or was refused outright
        return EXIT_REFUSAL
    return EXIT_OK


def cmd_analyze(args) -> int:
    f = _read_polynomial(args.input)
    rep = full_report(f, seed=_seed(args))
    doc = to_jsonable(rep)
    if rep.identity is not None:
        doc["b_minus_contains"] = "H" if rep.field_region == "H in B-" else "E"
    elif rep.field_region is not None:
        doc["b_minus_contains"] = "H" if rep.field_region == "H in B-" else "E"
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_plot(args) -> int:
    f = _read_polynomial(args.input)
    layers = tuple(s.strip() for s in args.layer.split(",") if s.strip())
    known = {"hessian", "asymptotic", "godrons", "sphere"}
    bad = set(layers) - known
    if bad:
        print(f"error: unknown layer(s): {', '.join(sorted(bad))}", file=sys.stderr)
        return EXIT_USAGE
    box = (-args.extent, args.extent, -args.extent, args.extent)
    specs = build_figure(f, layers, box, seed=_seed(args))
    emit_svg(specs, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _read_polynomial(args.input)
    rep = full_report(f, seed=_seed(args))
    code = _report_verdict(rep)
    status = {EXIT_OK: "pass", EXIT_REFUSAL: "refused", EXIT_VERIFY: "FAIL"}[code]
    print(f"{rep.input}: {status}")
    if rep.identity is not None:
        print(f"  identity: lhs={rep.identity.lhs} rhs={rep.identity.rhs} "
              f"eps={rep.identity.epsilon} -> {'pass' if rep.identity.passed else 'FAIL'}")
    for b in rep.bounds:
        tag = "pass" if b.passed else "FAIL"
        if not b.applicable:
            tag = "n/a (" + (b.note or "hypotheses not met") + ")"
        print(f"  bound {b.name}: value {b.value} <= {b.limit}: {tag}")
    for stage, reason in rep.errors.items():
        print(f"  refused [{stage}]: {reason}")
    return code


def cmd_corpus(args) -> int:
    seed = _seed(args)
    rows = []
    worst = EXIT_OK
    for name, text in CORPUS:
        f = parse_polynomial(text)
        rep = full_report(f, seed=seed)
        code = _report_verdict(rep)
        worst = max(worst, code)
        lhs = rep.identity.lhs if rep.identity else "-"
        rhs = rep.identity.rhs if rep.identity else "-"
        rows.append((name, str(lhs), str(rhs), len(rep.godrons),
                     "pass" if code == EXIT_OK else "FAIL"))
    w = max(len(r[0]) for r in rows)
    print(f"{'input':<{w}}  {'lhs':>5} {'rhs':>5} {'godrons':>7}  verdict")
    for name, lhs, rhs, ngod, verdict in rows:
        print(f"{name:<{w}}  {lhs:>5} {rhs:>5} {ngod:>7}  {verdict}")
    return worst


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="parabolica",
        description="Affine geometric structure of the graph of a bivariate polynomial",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="sampling seed (overrides PARABOLICA_SEED)")
    sub = parser.add_subparsers(dest="command")

    p_an = sub.add_parser("analyze", help="write the full structure report as JSON")
    p_an.add_argument("input", help="path to a polynomial text file")
    p_an.add_argument("--out", default=None, help="output path (default: stdout)")

    p_pl = sub.add_parser("plot", help="write an SVG figure")
    p_pl.add_argument("input", help="path to a polynomial text file")
    p_pl.add_argument("--layer", default="hessian,asymptotic,godrons,sphere",
                      help="comma-separated layers")
    p_pl.add_argument("--out", required=True, help="output SVG path")
    p_pl.add_argument("--extent", type=float, default=5.0,
                      help="half width of the plane view box")

    p_ve = sub.add_parser("verify", help="run all theorem checks; nonzero exit on failure")
    p_ve.add_argument("input", help="path to a polynomial text file")

    sub.add_parser("corpus", help="run the built-in regression corpus")

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        handler = {
            "analyze": cmd_analyze,
            "plot": cmd_plot,
            "verify": cmd_verify,
            "corpus": cmd_corpus,
        }[args.command]
        return handler(args)
    except SystemExit as e:
        return int(e.code or 0)
    except PreconditionRefusal as e:
        print(f"refused: {e.reason}", file=sys.stderr)
        return EXIT_REFUSAL


if __name__ == "__main__":
    sys.exit(main())
