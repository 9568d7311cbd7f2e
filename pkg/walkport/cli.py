# -*- coding:utf-8 -*-

"""
Command line front end.

    walkport run      --n 2 --m 2 --variant position-dependent --alpha 0.6,0 --beta 0.8,0
    walkport verify   --n 2 --m 2 | --all
    walkport security --n 2 --m 2 --variant homogeneous [--measured 1,2] [--probe r1,s2]

Reports are JSON on stdout (or --out PATH), a one-line summary goes to stderr.
Exit codes: 0 pass, 1 verification failure, 2 usage error.

Date:   2026/10/17
"""

import os
import sys
import json
import time
import argparse

import jsonschema

from walkport import const
from walkport import version_string
from walkport.walk import circuit
from walkport.verify import IdentitySuite
from walkport.walkport import walkport
from walkport.config import config as settings
from walkport.protocol import SecretSpec, ProtocolConfig, run_protocol
from walkport.security import SecurityScenario, phase_blindness_check, sweep_all_subsets
from walkport.utils import tools
from walkport.utils import logger
from walkport.utils import validators
from walkport.utils import exceptions

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SCHEMA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "schemas", "run_report.schema.json")

ALL_RANGE_N = (1, 2, 3)
ALL_RANGE_M = (2, 3, 4)


class UsageError(exceptions.ValidationError):
    """ argparse rejected the command line. """


class ArgumentParser(argparse.ArgumentParser):
    """ argparse parser that raises instead of exiting, so `main` owns the exit code.
    """

    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = ArgumentParser(prog="walkport", description="Shared secret teleportation with quantum walks.")
    parser.add_argument("--config", help="config json file")
    parser.add_argument("--log-level", help="override the configured log level")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run one protocol and verify every outcome")
    _add_system_flags(run)
    _add_secret_flags(run)
    run.add_argument("--mode", default=const.MODE_ENUMERATE)
    run.add_argument("--seed")
    run.add_argument("--corrected-receiver")
    run.add_argument("--rz-correction", action="store_true", help="R_z(-theta) instead of sigma_x")
    run.add_argument("--dump-circuit", action="store_true")
    run.add_argument("--out")

    verify = sub.add_parser("verify", help="closed-form and identity checks")
    verify.add_argument("--n")
    verify.add_argument("--m")
    verify.add_argument("--all", action="store_true", help="every n in 1..3 and m in 2..4")
    _add_secret_flags(verify)
    verify.add_argument("--out")

    security = sub.add_parser("security", help="phase blindness of sub-parties")
    _add_system_flags(security)
    _add_secret_flags(security)
    security.add_argument("--measured", help="measured senders, e.g. 1,3")
    security.add_argument("--probe", help="probe participants, e.g. r1,s2, or ALL_REMAINING")
    security.add_argument("--max-subset-size")
    security.add_argument("--view")
    security.add_argument("--out")
    return parser


def _add_system_flags(parser):
    parser.add_argument("--n", required=True)
    parser.add_argument("--m", required=True)
    parser.add_argument("--variant", required=True)


def _add_secret_flags(parser):
    parser.add_argument("--alpha", default="0.6,0", help="RE,IM")
    parser.add_argument("--beta", default="0.8,0", help="RE,IM")


def _secret(args):
    alpha = validators.complex_field(args.alpha, name="alpha")
    beta = validators.complex_field(args.beta, name="beta")
    return SecretSpec(alpha, beta)


def _system(args):
    n = validators.int_field(args.n, minimum=1, name="n")
    m = validators.int_field(args.m, minimum=2, name="m")
    variant = validators.choice_field(args.variant, const.VARIANTS, name="variant")
    return n, m, variant


def _header(command):
    return {"tool": "walkport", "version": version_string(), "command": command}


def cmd_run(args):
    """ Run one protocol.

    Returns:
        (report, exit code).
    """
    n, m, variant = _system(args)
    secret = _secret(args)
    mode = validators.choice_field(args.mode, const.MODES, name="mode")
    seed = validators.int_field(args.seed, required=False, name="seed") if args.seed is not None else settings.seed
    corrected = validators.int_field(args.corrected_receiver, minimum=1, maximum=m, name="corrected-receiver") \
        if args.corrected_receiver is not None else m
    config = ProtocolConfig(n, m, variant, corrected, args.rz_correction)

    run = run_protocol(config, secret, mode, seed)
    report = _header("run")
    report.update({"config": config.data, "secret": secret.data, "mode": mode, "seed": seed})
    report.update(run.data)
    report["pass"] = run.passed
    if args.dump_circuit:
        report["circuit"] = circuit(config.shape, variant)
    return report, EXIT_PASS if run.passed else EXIT_FAIL


def cmd_verify(args):
    """ Run the identity suite for one (n, m) or, with --all, for the whole desk-scale grid.
    """
    secret = _secret(args)
    if args.all:
        grid = [(n, m) for n in ALL_RANGE_N for m in ALL_RANGE_M]
    else:
        if args.n is None or args.m is None:
            raise exceptions.ValidationError("verify needs --n and --m, or --all")
        grid = [(validators.int_field(args.n, minimum=1, name="n"),
                 validators.int_field(args.m, minimum=2, name="m"))]
    checks = []
    for n, m in grid:
        checks.extend(IdentitySuite.run(n, m, secret))
    failed = next((c.name for c in checks if not c.passed), None)
    report = _header("verify")
    report.update({"secret": secret.data, "checks": [c.data for c in checks], "failed": failed,
                   "pass": failed is None})
    return report, EXIT_PASS if failed is None else EXIT_FAIL


def cmd_security(args):
    """ Phase blindness of one scenario (--measured and --probe), or a sweep restricted by either flag.
    """
    n, m, variant = _system(args)
    secret = _secret(args)
    config = ProtocolConfig(n, m, variant)
    view = validators.choice_field(args.view, const.VIEWS, name="view") if args.view else settings.security_view
    report = _header("security")
    report.update({"config": config.data, "secret": secret.data, "view": view})

    measured = validators.int_list_field(args.measured, minimum=1, maximum=n, name="measured") \
        if args.measured is not None else None
    if args.probe == "ALL_REMAINING":
        if measured is None:
            raise exceptions.ValidationError("ALL_REMAINING needs --measured")
        probe = ["s{}".format(i) for i in range(1, n + 1) if i not in measured] + \
            ["r{}".format(j) for j in range(1, m + 1)]
    else:
        probe = validators.list_field(args.probe, name="probe") if args.probe is not None else None

    if measured is not None and probe is not None:
        result = phase_blindness_check(SecurityScenario(config, secret, measured, probe), view=view)
        report.update({"scenarios": [result.data], "worst_deviation": tools.clean_float(result.worst_deviation),
                       "pass": result.passed, "conditional_failures": int(not result.conditional_passed),
                       "findings": [e.data for e in result.errors]})
    else:
        size = validators.int_field(args.max_subset_size, minimum=1, name="max-subset-size") \
            if args.max_subset_size else None
        report.update(sweep_all_subsets(config, secret, size, view=view, measured=measured, probe=probe))
    return report, EXIT_PASS if report["pass"] else EXIT_FAIL


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "security": cmd_security}


def validate_report(report):
    """ Check a report against the published schema.

    Raise:
        VerificationError: The report does not match the schema.
    """
    with open(SCHEMA_PATH) as f:
        schema = json.load(f)
    try:
        jsonschema.validate(instance=report, schema=schema)
    except jsonschema.ValidationError as e:
        raise exceptions.VerificationError("report does not match {}: {}".format(SCHEMA_PATH, e.message))


def write_report(report, out=None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None):
    """ Entry point of the `walkport` console script.

    Returns:
        exit code.
    """
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("choose one of: {}".format(", ".join(COMMANDS)))
        walkport.initialize(args.config, args.log_level)
        start = time.time()
        report, code = COMMANDS[args.command](args)
        report["timing"] = {"wall_time_s": round(time.time() - start, 6), "timestamp": tools.get_utc_datetime_str()}
        validate_report(report)
        write_report(report, getattr(args, "out", None))
    except (exceptions.ValidationError, exceptions.BoundaryError) as e:
        sys.stderr.write("walkport: {}\n".format(e))
        return EXIT_USAGE
    except exceptions.CustomException as e:
        logger.exception("walkport failed:", e)
        sys.stderr.write("walkport: {}\n".format(e))
        return EXIT_FAIL
    sys.stderr.write("walkport {}: {}\n".format(args.command, "pass" if code == EXIT_PASS else "FAIL"))
    return code


if __name__ == "__main__":
    sys.exit(main())
