"""Command-line front end.

Subcommands: ``distance`` (exact distance between two trace files, with a
time-change certificate), ``certificate-check`` (recompute a certified bound
without trusting the distance computation), ``suite`` (named verification
suites), and ``example-k`` (the K-topology demonstration report).

All I/O is JSON; output is byte-identical for identical inputs and seed.
Exit codes: 0 success, 1 check/suite failure, 2 parse error, 3 value-space
mismatch, 4 invalid certificate.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cadlag import TraceParseError, ValueSpaceMismatch, step_from_json
from .distance import (
    CertificateError,
    check_certificate,
    result_from_json,
    skorohod_distance,
)
from .pseudometric import Discrete, Euclidean, family_from_config
from .suites import SUITES, run_example_k, run_suites

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SPACE = 3
EXIT_CERT = 4


def _emit(obj, out_path):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_trace(path):
    try:
        return step_from_json(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise TraceParseError(f"{path}: {exc}") from exc


def _resolve_metric(args, x, y):
    """Pick the value pseudometric: a family index when --family is given,
    otherwise euclidean for vectors / discrete for labels."""
    if args.family:
        try:
            config = json.loads(Path(args.family).read_text(encoding="utf-8"))
            family = family_from_config(config)
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            raise TraceParseError(f"bad family config: {exc}") from exc
        if args.metric:
            try:
                index = frozenset(int(k) for k in args.metric.split(","))
                return family.metric(index)
            except ValueError as exc:
                raise TraceParseError(f"bad index {args.metric!r}: {exc}") from exc
        return family.metric(family.full_index())
    if args.metric in (None, "euclidean", "discrete"):
        if args.metric == "discrete" or x.space() == ("label",):
            return Discrete()
        return Euclidean()
    raise TraceParseError(
        f"--metric {args.metric!r} needs --family (or use euclidean/discrete)"
    )


def cmd_distance(args) -> int:
    x = _load_trace(args.x)
    y = _load_trace(args.y)
    if x.space() != y.space():
        raise ValueSpaceMismatch(f"{x.space()} vs {y.space()}")
    metric = _resolve_metric(args, x, y)
    result = skorohod_distance(x, y, metric)
    _emit(result.to_json_obj(), args.out)
    return EXIT_OK


def cmd_certificate_check(args) -> int:
    x = _load_trace(args.x)
    y = _load_trace(args.y)
    if x.space() != y.space():
        raise ValueSpaceMismatch(f"{x.space()} vs {y.space()}")
    metric = _resolve_metric(args, x, y)
    try:
        text = Path(args.certificate).read_text(encoding="utf-8")
    except OSError as exc:
        raise TraceParseError(f"{args.certificate}: {exc}") from exc
    claimed, cert = result_from_json(text)
    ok, bound = check_certificate(x, y, metric, claimed, cert)
    _emit({"pass": ok, "claimed": claimed, "recomputed_bound": bound}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_suite(args) -> int:
    names = list(SUITES) if args.name == "all" else [args.name]
    summary = run_suites(names, seed=args.seed, trials=args.trials, eps=args.eps)
    _emit(summary, args.out)
    return EXIT_OK if summary["pass"] else EXIT_FAIL


def cmd_example_k(args) -> int:
    result = run_example_k()
    _emit(result, args.out)
    report = result["report"]
    status = "pass" if result["pass"] else "FAIL"
    sys.stderr.write(
        f"K-topology example [{status}]: staircase is cadlag for the refined "
        f"topology, values avoid K, left limits land on K, and the deleted "
        f"neighbourhood {report['witness']} of 0 excludes every left limit.\n"
    )
    return EXIT_OK if result["pass"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skorodist",
        description="Exact Skorohod distances for step functions, with "
        "certificates and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("distance", help="distance between two trace files")
    p_dist.add_argument("x")
    p_dist.add_argument("y")
    p_dist.add_argument("--family", help="pseudometric family config file")
    p_dist.add_argument(
        "--metric",
        help="family index like '1,2', or 'euclidean'/'discrete' without --family",
    )
    p_dist.add_argument("--out", help="write JSON here instead of stdout")
    p_dist.set_defaults(func=cmd_distance)

    p_cert = sub.add_parser(
        "certificate-check", help="recompute and audit a certified distance"
    )
    p_cert.add_argument("x")
    p_cert.add_argument("y")
    p_cert.add_argument("certificate", help="JSON with 'distance' and 'certificate'")
    p_cert.add_argument("--family")
    p_cert.add_argument("--metric")
    p_cert.add_argument("--out")
    p_cert.set_defaults(func=cmd_certificate_check)

    p_suite = sub.add_parser("suite", help="run verification suites")
    p_suite.add_argument("name", choices=[*SUITES, "all"])
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--trials", type=int, default=None)
    p_suite.add_argument("--eps", type=float, default=None)
    p_suite.add_argument("--out")
    p_suite.set_defaults(func=cmd_suite)

    p_ex = sub.add_parser("example-k", help="K-topology counterexample report")
    p_ex.add_argument("--out")
    p_ex.set_defaults(func=cmd_example_k)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TraceParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ValueSpaceMismatch as exc:
        sys.stderr.write(f"value-space mismatch: {exc}\n")
        return EXIT_SPACE
    except CertificateError as exc:
        sys.stderr.write(f"invalid certificate: {exc}\n")
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
