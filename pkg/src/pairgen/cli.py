"""Command-line front end.

Exit codes: 0 success/verified, 1 usage error, 2 verification failure,
3 internal limit exceeded (e.g. the constructor ran out of rounds).
JSON is the machine format; text output is a derived view.  Every JSON
result embeds the tool version and the full effective configuration.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .bounds import lll_certificate
from .construct import (
    ConstructionFailure,
    construct,
    load_certificate,
    verify,
    write_certificate,
)
from .families import OddDegreeError, covers, sigma_upper_bound
from .oracles import (
    generation_counts_exact,
    generation_prob_mc,
    omega_exact,
    sigma_exact,
)

SEED_ENV = "PAIRGEN_SEED"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_LIMIT = 3


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV} must be an integer, got {raw!r}")


def _emit(args, payload, text_lines):
    """Route one result to stdout or --output in the chosen format."""
    doc = {"version": __version__, "config": _config_dict(args), "result": payload}
    if args.format == "json":
        rendered = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        rendered = "\n".join(text_lines) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)


def _config_dict(args):
    skip = {"func", "format", "output"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _table(rows, headers):
    widths = [
        max(len(str(h)), *(len(str(r[k])) for r in rows)) if rows else len(str(h))
        for k, h in enumerate(headers)
    ]
    out = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths))]
    for r in rows:
        out.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)))
    return out


# -- commands --------------------------------------------------------


def cmd_cover(args):
    report = covers(args.n, args.i, mode=args.mode)
    d = report.to_json_dict()
    lines = [
        f"n={args.n} i={args.i} mode={report.mode}",
        f"covered: {report.covered}",
    ]
    if not report.covered:
        lines.append(f"uncovered cycle types: {d['uncovered_cycle_types']}")
    _emit(args, d, lines)
    return EXIT_OK


def cmd_lll(args):
    if args.n is not None:
        report = lll_certificate(args.n, args.i)
        d = report.to_json_dict()
        lines = [
            f"n={args.n} i={args.i} d={report.d}",
            f"total_log2={report.total_log2:.6f}",
            f"worst_size={report.worst_size}",
            f"two_pow_ok={report.two_pow_ok} lll_ok={report.lll_ok}",
        ]
        _emit(args, d, lines)
        return EXIT_OK
    rows = []
    for n in range(args.n_min, args.n_max + 1, 2):
        r = lll_certificate(n, args.i)
        rows.append((n, f"{r.total_log2:.3f}", r.two_pow_ok, r.lll_ok))
    payload = [
        {"n": n, "total_log2": float(t), "two_pow_ok": a, "lll_ok": b}
        for n, t, a, b in rows
    ]
    _emit(args, payload, _table(rows, ["n", "total_log2", "2^-(n+3)", "lll"]))
    return EXIT_OK


def cmd_construct(args):
    out = construct(args.n, args.i, args.seed, max_rounds=args.max_rounds)
    if isinstance(out, ConstructionFailure):
        payload = {
            "failed": True,
            "rounds": out.rounds,
            "residual_bad_pairs": out.residual_bad_pairs,
        }
        _emit(args, payload, [
            f"FAILED after {out.rounds} rounds, "
            f"{out.residual_bad_pairs} bad pairs remain",
        ])
        return EXIT_LIMIT
    if args.output:
        write_certificate(out, args.output)
        sys.stdout.write(f"certificate written to {args.output}\n")
    else:
        json.dump(out, sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_verify(args):
    try:
        cert = load_certificate(args.path)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"cannot read certificate: {exc}\n")
        return EXIT_USAGE
    result = verify(cert)
    if result.ok:
        sys.stdout.write("verified\n")
        return EXIT_OK
    for v in result.violations:
        sys.stdout.write(f"violation: {v}\n")
    return EXIT_VERIFY


def cmd_exact(args):
    payload = {}
    lines = []
    if args.what in ("sigma", "all"):
        r = sigma_exact(args.n)
        payload["sigma"] = {"value": r.value, "witness_sizes": [len(w) for w in r.witness]}
        if args.witness:
            payload["sigma"]["witness"] = [list(w) for w in r.witness]
        lines.append(f"sigma(S_{args.n}) = {r.value}")
    if args.what in ("omega", "all"):
        r = omega_exact(args.n, args.mode)
        payload["omega"] = {"mode": r.mode, "value": r.value}
        if args.witness:
            payload["omega"]["witness"] = list(r.witness)
        lines.append(f"omega(S_{args.n}, {r.mode}) = {r.value}")
    if args.what in ("counts", "all"):
        s = generation_counts_exact(args.n)
        payload["counts"] = {k: str(getattr(s, k)) for k in ("p", "a", "b", "c")}
        lines.append(
            f"p={s.p} a={s.a} b={s.b} c={s.c}"
        )
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_probgen(args):
    est = generation_prob_mc(args.n, args.trials, args.seed)
    d = est.to_json_dict()
    lines = [
        f"n={args.n} trials={args.trials} seed={args.seed}",
        f"p  = {est.p_hat:.5f}  99% CI [{est.p_ci[0]:.5f}, {est.p_ci[1]:.5f}]",
        f"a  = {est.a_hat:.5f}  99% CI [{est.a_ci[0]:.5f}, {est.a_ci[1]:.5f}]",
        f"b  = {est.b_hat:.5f}  99% CI [{est.b_ci[0]:.5f}, {est.b_ci[1]:.5f}]",
        f"reference 1 - 1/n = {est.comparison:.5f}",
    ]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_sigma_upper(args):
    value = sigma_upper_bound(args.n)
    _emit(args, {"n": args.n, "sigma_upper": value}, [str(value)])
    return EXIT_OK


# -- parser ----------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(
        prog="pairgen",
        description="Coverings and pairwise generating sets of symmetric groups",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        sp.add_argument("--format", choices=("json", "text"), default="text")
        if output:
            sp.add_argument("--output", help="write the result to this file")

    sp = sub.add_parser("cover", help="covering check for a maximal family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i", type=int, choices=(1, 2), required=True)
    sp.add_argument("--mode", choices=("cycle-type", "exhaustive"), default="cycle-type")
    common(sp)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("lll", help="local-lemma bound certificate or sweep")
    sp.add_argument("--n", type=int, help="single degree (omit for a sweep)")
    sp.add_argument("--i", type=int, choices=(1, 2), required=True)
    sp.add_argument("--n-min", type=int, default=6)
    sp.add_argument("--n-max", type=int, default=200)
    common(sp)
    sp.set_defaults(func=cmd_lll)

    sp = sub.add_parser("construct", help="build a pairwise generating set")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i", type=int, choices=(1, 2), required=True)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--max-rounds", type=int, default=None)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--output", help="certificate file path")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="re-check a certificate file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("exact", help="exact small-degree oracles")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--what", choices=("sigma", "omega", "counts", "all"), default="all")
    sp.add_argument("--mode", choices=("FULL", "AT_LEAST_ALT"), default="FULL")
    sp.add_argument("--witness", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("probgen", help="Monte Carlo generation probabilities")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=_default_seed())
    common(sp)
    sp.set_defaults(func=cmd_probgen)

    sp = sub.add_parser("sigma-upper", help="constructive covering-number upper bound")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_sigma_upper)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OddDegreeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
