import os
import json
import logging
import argparse

from utils import configure_logging, load_settings
from model import emit_certificate, field_diagnostics, run_oracle_suite, verify_theorem
from model.exceptions import PrimdigraphError

logger = logging.getLogger()

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="primdigraph",
        description="Build and check the vertex-primitive 2-arc-transitive digraphs Cos(PSL_3(p^2), A6, g).",
    )
    parser.add_argument("--config", default=None, help="settings file (default: $PRIMDIGRAPH_CONFIG or config.yaml)")
    parser.add_argument("--log-file", default=None, help="also write the log to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run every check for one prime and emit a certificate")
    verify.add_argument("--prime", type=int, required=True)
    verify.add_argument("--out", default=None, help="certificate path (default: print to stdout)")
    verify.add_argument("--conjugate-roots", action="store_true", help="use the other root of each quadratic")
    verify.add_argument("--quiet", action="store_true")

    oracle = sub.add_parser("oracle", help="run the small-group checks")
    oracle.add_argument("--max-order", type=int, default=None)
    oracle.add_argument("--seed", type=int, default=None)
    oracle.add_argument("--report", default=None, help="write the JSON report here")
    oracle.add_argument("--quiet", action="store_true")

    fields = sub.add_parser("fields", help="print a, b, d and the branch identities for one prime")
    fields.add_argument("--prime", type=int, required=True)
    fields.add_argument("--conjugate-roots", action="store_true")
    return parser


def run_verify(args, settings):
    cert = verify_theorem(args.prime, conjugate_roots=args.conjugate_roots, closure_cap=settings.closure_cap)
    if args.out:
        emit_certificate(cert, args.out)
    else:
        print(cert.dumps(), end="")
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def run_oracle(args, settings):
    cfg = settings.oracle
    report = run_oracle_suite(
        max_group_order=args.max_order if args.max_order is not None else cfg.max_order,
        seed=args.seed if args.seed is not None else cfg.seed,
        directed_trials=cfg.directed_trials,
        factorization_trials=cfg.factorization_trials,
        factorization_max_order=cfg.factorization_max_order,
        arc_guard=settings.arc_guard,
        primitivity_guard=settings.primitivity_guard,
    )
    if args.report:
        os.makedirs(os.path.dirname(args.report) or ".", exist_ok=True)
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(report.dumps())
        logger.info(f"Oracle: report written to {args.report}")
    for section, tallies in (("exhaustive", report.exhaustive), ("randomized", report.randomized)):
        for name, tally in tallies.items():
            tag = "[fail] " if tally.counterexamples else ""
            logger.info(f"Oracle: {tag}{section} {name}: {tally.checked} checked, {len(tally.counterexamples)} counterexamples")
    return EXIT_OK if report.ok else EXIT_FAIL


def run_fields(args, settings):
    print(json.dumps(field_diagnostics(args.prime, conjugate_roots=args.conjugate_roots), indent=2))
    return EXIT_OK


COMMANDS = {"verify": run_verify, "oracle": run_oracle, "fields": run_fields}


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(quiet=getattr(args, "quiet", False), log_file=args.log_file)
    try:
        settings = load_settings(args.config)
        return COMMANDS[args.command](args, settings)
    except (PrimdigraphError, ValueError) as e:
        logger.error(f"Error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
