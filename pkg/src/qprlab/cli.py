"""Command-line interface: ``qprlab <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage / invalid config,
3 validation failure (frame or SIC), 4 I/O or file format error.
"""
import argparse
import math
import os
import sys

from . import __version__
from .config import TOL, FiducialParseError, ValidationError
from .frames import KINDS, build_frame, frame_to_dict
from .negativity import NegativityReport, analyze, closed_forms
from .report import csv_text, dumps
from .sic import builtin_fiducial, find_fiducial, load_fiducial, sic_from_fiducial, validate_sic
from . import verify as suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _data_dir(args):
    return args.data_dir or os.environ.get("QPRLAB_DATA")


def _fiducial(args):
    if getattr(args, "fiducial_file", None):
        rec = load_fiducial(args.fiducial_file)
        if rec.dim != args.dim:
            raise ValidationError(f"fiducial file has dim {rec.dim}, expected --dim {args.dim}")
        return rec
    if args.dim in (2, 3):
        return builtin_fiducial(args.dim, args.fiducial_t)
    path = find_fiducial(args.dim, _data_dir(args))
    if path is None:
        raise UsageError(
            f"no built-in SIC fiducial for d={args.dim}; pass --fiducial-file or --data-dir"
        )
    return load_fiducial(path)


def _frame(args):
    if args.frame in ("sic-minus", "sic-plus"):
        return build_frame(args.dim, args.frame, fiducial=_fiducial(args))
    if args.frame == "custom":
        from .frames import random_nqpr

        return random_nqpr(args.dim, args.seed)
    return build_frame(args.dim, args.frame)


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    rep = analyze(_frame(args))
    if args.format == "csv":
        text = csv_text(NegativityReport.CSV_FIELDS, [rep.csv_row()])
    else:
        text = dumps(rep.to_dict())
    _emit(args, text)
    return EXIT_OK


def cmd_verify(args):
    opts = suites.Options(dim=args.dim, samples=args.samples, seed=args.seed, threads=args.threads,
                          data_dir=_data_dir(args))
    checks = suites.run(args.which, opts)
    passed = all(c.passed for c in checks)
    if args.format == "csv":
        text = csv_text(("name", "passed", "value", "bound", "detail"),
                        [(c.name, c.passed, c.value, c.bound, c.detail) for c in checks])
    else:
        text = dumps({
            "schema": 1,
            "which": args.which,
            "dim": args.dim,
            "samples": args.samples,
            "seed": args.seed,
            "checks": [c.to_dict() for c in checks],
            "passed": passed,
        })
    _emit(args, text)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


SCAN_HEADER = ("t", "N", "N_U", "N_C", "sic_ok", "hw_covariant", "label")


def cmd_scan_d3(args):
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    rows = suites.scan_d3(args.steps, args.t_max)
    _emit(args, csv_text(SCAN_HEADER, rows))
    return EXIT_OK


def cmd_bounds(args):
    cf = closed_forms(args.dim)
    if args.format == "csv":
        text = csv_text(("quantity", "value"), list(cf.items()))
    else:
        text = dumps({"schema": 1, **cf})
    _emit(args, text)
    return EXIT_OK


def cmd_validate_sic(args):
    rec = _fiducial(args)
    tol = args.tol if args.tol is not None else rec.tolerance
    try:
        s = sic_from_fiducial(rec, tol=tol)
    except ValidationError as exc:
        print(f"qprlab: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    rep = validate_sic(s, tol)
    _emit(args, dumps({"schema": 1, "source": rec.source, **rep.to_dict()}))
    return EXIT_OK


def cmd_export_frame(args):
    f = _frame(args)
    _emit(args, dumps({"schema": 1, **frame_to_dict(f)}))
    return EXIT_OK


def _dim(text):
    d = int(text)
    if d < 2:
        raise argparse.ArgumentTypeError("dimension must be >= 2")
    return d


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _finite(text):
    x = float(text)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError("must be finite")
    return x


def build_parser():
    parser = argparse.ArgumentParser(prog="qprlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qprlab {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=_dim, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    common.add_argument("--data-dir", default=None, help="directory with SIC fiducial files (env QPRLAB_DATA)")
    common.add_argument("--threads", type=_positive, default=1)

    frame_opts = argparse.ArgumentParser(add_help=False)
    frame_opts.add_argument("--frame", choices=KINDS, default="sic-minus")
    frame_opts.add_argument("--fiducial-t", type=_finite, default=0.0, help="d=3 family parameter t")
    frame_opts.add_argument("--fiducial-file", default=None)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, frame_opts], help="negativity report for one frame")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[common], help="run theorem / lemma verification suites")
    p.add_argument("--which", choices=suites.SUITES, default="all")
    p.add_argument("--samples", type=_positive, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan-d3", parents=[common], help="scan the d=3 fiducial family (CSV)")
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--t-max", type=_finite, default=math.pi / 9)
    p.set_defaults(func=cmd_scan_d3)

    p = sub.add_parser("bounds", parents=[common], help="closed-form reference values")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("validate-sic", parents=[common, frame_opts], help="validate a SIC fiducial")
    p.add_argument("--tol", type=_finite, default=None, help=f"override tolerance (default: file value or {TOL.exact:g})")
    p.set_defaults(func=cmd_validate_sic)

    p = sub.add_parser("export-frame", parents=[common, frame_opts], help="dump a frame as JSON")
    p.set_defaults(func=cmd_export_frame)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qprlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FiducialParseError as exc:
        print(f"qprlab: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationError as exc:
        print(f"qprlab: validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"qprlab: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"qprlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
