"""Command-line front end: ``pearsonprob {prob,fit,quantile}``.

Inputs are three central moments (or a raw sample file) and, for ``prob``, a
percentage point x0 measured from the mean; ``--plot PATH`` writes an SVG.
Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

import argparse
import dataclasses
import json
import math
import os
import sys

import numpy as np

from .classify import ClassifyTolerances
from .errors import (
    DegenerateSample,
    FitFailure,
    InvalidMoments,
    InvalidOptions,
    NonConvergence,
)
from .fit import fit
from .moments import CentralMoments, compute_sample_moments, shape_from_moments
from .plot import PlotOptions, render_density_plot
from .quadrature import IntegrationSettings, cdf, quantile

TOLERANCE_ENV = "PEARSONPROB_TOLERANCES"

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class InputError(Exception):
    pass


def read_data(path):
    """Whitespace-separated reals; lines starting with ``#`` are ignored."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read data file {path!r}: {exc.strerror}") from exc
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            continue
        for tok in line.split():
            try:
                values.append(float(tok))
            except ValueError:
                raise InputError(f"{path}:{lineno}: not a number: {tok!r}") from None
    return np.array(values)


def load_tolerances(args, environ=os.environ):
    overrides = {}
    blob = environ.get(TOLERANCE_ENV)
    if blob:
        try:
            overrides = json.loads(blob)
        except json.JSONDecodeError as exc:
            raise InputError(f"{TOLERANCE_ENV} is not valid JSON: {exc}") from None
        if not isinstance(overrides, dict):
            raise InputError(f"{TOLERANCE_ENV} must be a JSON object")
    for name in ("abs_tol", "rel_tol", "max_subdivisions"):
        v = getattr(args, name, None)
        if v is not None:
            overrides[name] = v
    ctol_fields = {f.name for f in dataclasses.fields(ClassifyTolerances)}
    itol_fields = {f.name for f in dataclasses.fields(IntegrationSettings)}
    unknown = set(overrides) - ctol_fields - itol_fields
    if unknown:
        raise InputError(f"unknown tolerance keys: {', '.join(sorted(unknown))}")
    ctol = ClassifyTolerances(**{k: v for k, v in overrides.items() if k in ctol_fields})
    itol = IntegrationSettings(**{k: v for k, v in overrides.items() if k in itol_fields})
    return ctol, itol


def _json_number(v):
    if v is None:
        return None
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pearsonprob",
        description="Fit a Pearson distribution to central moments and compute probability values.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, help_text in (
        ("prob", "probability value P(X <= x0)"),
        ("fit", "fitted type and parameters only"),
        ("quantile", "percentage point for a probability p"),
    ):
        p = sub.add_parser(mode, help=help_text)
        p.add_argument("--mu2", type=float, help="second central moment")
        p.add_argument("--mu3", type=float, help="third central moment")
        p.add_argument("--mu4", type=float, help="fourth central moment")
        p.add_argument("--data", metavar="PATH", help="raw sample file (replaces --mu2/3/4)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--abs-tol", dest="abs_tol", type=float)
        p.add_argument("--rel-tol", dest="rel_tol", type=float)
        p.add_argument("--max-subdivisions", dest="max_subdivisions", type=int)
        if mode == "prob":
            p.add_argument("--x0", type=float, required=True,
                           help="percentage point, as a deviation from the mean")
            p.add_argument("--plot", metavar="PATH", help="write an SVG plot to PATH")
        if mode == "quantile":
            p.add_argument("--p", type=float, required=True, help="probability in (0, 1)")
    return parser


def _moments(args):
    given = [v is not None for v in (args.mu2, args.mu3, args.mu4)]
    if args.data is not None:
        if any(given):
            raise InputError("--data cannot be combined with --mu2/--mu3/--mu4")
        return compute_sample_moments(read_data(args.data))
    if not all(given):
        raise InputError("give all of --mu2, --mu3, --mu4 or a --data file")
    return CentralMoments(args.mu2, args.mu3, args.mu4)


def _report(fitted, shape):
    return {
        "type": fitted.type_tag.value,
        "kappa": _json_number(shape.kappa),
        "beta1": shape.beta1,
        "beta2": shape.beta2,
        "sqrt_beta1": shape.sqrt_beta1,
        "r": fitted.r,
        "params": {k: _json_number(v) for k, v in fitted.params.items()},
        "origin_shift": fitted.origin_shift,
        "mirrored": fitted.mirrored,
        "support": [_json_number(v) for v in fitted.support],
    }


def _text(report):
    lines = [
        f"Pearson type: {report['type']}",
        f"kappa: {report['kappa']}",
        f"beta1: {report['beta1']:.6f}",
        f"beta2: {report['beta2']:.6f}",
    ]
    if report["r"] is not None:
        lines.append(f"r: {report['r']:.6f}")
    lines.append("parameters:")
    for k, v in report["params"].items():
        lines.append(f"  {k} = {v:.6f}" if isinstance(v, float) else f"  {k} = {v}")
    lo, hi = report["support"]
    lines.append(f"origin shift: {report['origin_shift']:.6f}")
    lines.append(f"support: [{lo}, {hi}]")
    if "x0" in report:
        lines.append(f"x0: {report['x0']}")
        lines.append(f"probability: {report['p']:.7f}")
    if "quantile" in report:
        lines.append(f"p: {report['p']}")
        lines.append(f"quantile: {report['quantile']:.7f}")
    return "\n".join(lines)


def run(args, stdout=sys.stdout, stderr=sys.stderr, environ=os.environ):
    try:
        ctol, itol = load_tolerances(args, environ)
        m = _moments(args)
        if args.mode == "quantile" and not 0 < args.p < 1:
            raise InputError(f"--p must lie in (0, 1), got {args.p}")
        if args.mode == "prob" and not math.isfinite(args.x0):
            raise InputError("--x0 must be finite")
    except (InputError, InvalidMoments, DegenerateSample, InvalidOptions, TypeError) as exc:
        print(f"pearsonprob: error: {exc}", file=stderr)
        return EXIT_INPUT

    try:
        shape = shape_from_moments(m, ctol.eps_type3)
        fitted = fit(m, ctol)
        report = _report(fitted, shape)
        if args.mode == "prob":
            res = cdf(fitted, args.x0, itol)
            report["x0"] = args.x0
            report["p"] = res.p
            report["error_estimate"] = res.error_estimate
            if res.domain_warning:
                report["warning"] = res.domain_warning
            if args.plot:
                svg = render_density_plot(fitted, args.x0, res, PlotOptions())
                try:
                    with open(args.plot, "w", encoding="utf-8") as fh:
                        fh.write(svg)
                except OSError as exc:
                    print(f"pearsonprob: error: cannot write {args.plot!r}: {exc.strerror}",
                          file=stderr)
                    return EXIT_INPUT
        elif args.mode == "quantile":
            report["p"] = args.p
            report["quantile"] = quantile(fitted, args.p, itol)
    except (FitFailure, NonConvergence) as exc:
        print(f"pearsonprob: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC

    if args.format == "json":
        print(json.dumps(report), file=stdout)
    else:
        if "warning" in report:
            print(report["warning"], file=stderr)
        print(_text(report), file=stdout)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
