"""Command-line front end.

Subcommands:
  spectrum   both spectra of one domain                  -> CSV
  curves     eigenvalue curves over a parameter sweep    -> CSV
  events     zero crossings, bisection-refined           -> CSV
  verify     full verification report                    -> JSON
  oracle     closed-form reference values                -> text
  plot       curves CSV (+ optional events CSV)          -> SVG

Exit codes: 0 success, 1 verification failure, 2 input/usage error,
3 numeric error.  Output is deterministic: floats are written with 17
significant digits in fixed field order, so identical invocations produce
byte-identical files regardless of the MORSE_SPECTRUM_THREADS setting.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import analytic
from .errors import InputError, NumericError
from .morse import EventKind, Resolution, detect_events, trace_curves, verify
from .surfaces import FAMILY_BUILDERS
from .svgplot import curves_svg

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _f17(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class RunConfig:
    family: str
    t_min: float | None = None
    t_max: float | None = None
    steps: int | None = None
    t: float | None = None
    k: int = 6
    n_per_unit: int = 600
    m_max: int = 8
    null_tol: float | None = None
    refine: bool = True
    output: str = "-"
    format: str = "csv"

    def validate(self):
        if self.n_per_unit < 50:
            raise InputError("n-per-unit must be >= 50")
        if self.m_max < 0:
            raise InputError("m-max must be >= 0")
        if self.k < 1:
            raise InputError("k must be >= 1")
        if self.steps is not None and self.steps < 2:
            raise InputError("steps must be >= 2")


def _threads() -> int:
    raw = os.environ.get("MORSE_SPECTRUM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"MORSE_SPECTRUM_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise InputError("MORSE_SPECTRUM_THREADS must be >= 1")
    return n


def _family(cfg: RunConfig):
    try:
        build = FAMILY_BUILDERS[cfg.family]
    except KeyError as exc:
        raise InputError(
            f"unknown family {cfg.family!r}; choose from {sorted(FAMILY_BUILDERS)}"
        ) from exc
    kwargs = {}
    if cfg.t_min is not None:
        kwargs["t_min"] = min(cfg.t_min, 0.3)
    if cfg.t_max is not None:
        kwargs["t_max"] = cfg.t_max
    if cfg.t is not None:
        kwargs.setdefault("t_min", min(cfg.t, 0.3))
        kwargs["t_max"] = max(cfg.t, kwargs.get("t_max", 0.0))
    fam = build(**kwargs)
    return fam


def _write(cfg: RunConfig, text: str):
    if cfg.output == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _grid(cfg: RunConfig):
    if cfg.t_min is None or cfg.t_max is None or cfg.steps is None:
        raise InputError("curve runs need --t-min, --t-max and --steps")
    return np.linspace(cfg.t_min, cfg.t_max, cfg.steps)


def _trace(cfg: RunConfig):
    fam = _family(cfg)
    res = Resolution(n_per_unit=cfg.n_per_unit, m_max=cfg.m_max)
    return trace_curves(fam, _grid(cfg), cfg.k, res, workers=_threads())


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_spectrum(cfg: RunConfig) -> int:
    fam = _family(cfg)
    if cfg.t is None:
        raise InputError("spectrum needs --t")
    from .morse import spectra_at

    res = Resolution(n_per_unit=cfg.n_per_unit, m_max=cfg.m_max)
    dvals, tvals = spectra_at(fam, cfg.t, cfg.k, res)
    rows = [
        [k + 1, _f17(dvals[k]), _f17(tvals[k]) if k < len(tvals) else ""]
        for k in range(min(cfg.k, len(dvals)))
    ]
    _write(cfg, _csv_text(["k", "lambda", "lambda_twisted"], rows))
    return EXIT_OK


def cmd_curves(cfg: RunConfig) -> int:
    curve = _trace(cfg)
    rows = []
    for kind, mat in (("dirichlet", curve.dirichlet), ("twisted", curve.twisted)):
        for k in range(mat.shape[0]):
            for i, t in enumerate(curve.t_samples):
                rows.append([_f17(t), kind, k + 1, _f17(mat[k, i])])
    _write(cfg, _csv_text(["t", "kind", "k", "value"], rows))
    return EXIT_OK


def cmd_events(cfg: RunConfig) -> int:
    curve = _trace(cfg)
    events = detect_events(curve, refine=cfg.refine)
    rows = [
        [_f17(e.t_star), e.kind.value, e.k, e.multiplicity, _f17(e.refined_width)]
        for e in events
    ]
    _write(cfg, _csv_text(["t_star", "kind", "k", "multiplicity", "width"], rows))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    curve = _trace(cfg)
    events = detect_events(curve, refine=cfg.refine)
    report = verify(curve, events)
    doc = {
        "config": asdict(cfg),
        "curve": {
            "family": cfg.family,
            "t_samples": [float(_f17(t)) for t in curve.t_samples],
            "dirichlet": [[float(_f17(v)) for v in row] for row in curve.dirichlet],
            "twisted": [[float(_f17(v)) for v in row] for row in curve.twisted],
        },
        "events": [
            {
                "t_star": float(_f17(e.t_star)),
                "kind": e.kind.value,
                "k": e.k,
                "multiplicity": e.multiplicity,
                "width": float(_f17(e.refined_width)),
            }
            for e in events
        ],
        "checks": [
            {
                "name": name,
                "ok": c.ok,
                "expected_failure": c.expected_failure,
                "detail": c.detail,
            }
            for name, c in report.checks.items()
        ],
    }
    _write(cfg, json.dumps(doc, indent=2, sort_keys=False) + "\n")
    return EXIT_OK if report.passed() else EXIT_VERIFY_FAILED


def cmd_oracle(args) -> int:
    name = args.which
    out = []
    if name == "circle-lambda":
        out.append(analytic.circle_dirichlet_lambda(args.k, args.t))
    elif name == "twisted-lambda":
        out.append(analytic.circle_twisted_lambda(args.k, args.t))
    elif name == "psi":
        out.append(float(analytic.psi(args.t)))
    elif name == "psi-zeros":
        out.extend(analytic.psi_zeros(args.count).zeros.tolist())
    elif name == "bessel-zero":
        out.append(analytic.bessel_zero(args.m, args.n))
    elif name == "gap-lambda1":
        out.append(analytic.gap_lambda1(args.t))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown oracle {name!r}")
    text = "".join(_f17(v) + "\n" for v in out)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_plot(args) -> int:
    series = {}
    with open(args.curves, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["kind"], int(row["k"]))
            series.setdefault(key, []).append((float(row["t"]), float(row["value"])))
    events = []
    if args.events:
        with open(args.events, encoding="utf-8", newline="") as fh:
            for row in csv.DictReader(fh):
                events.append((float(row["t_star"]), row["kind"]))
    svg = curves_svg(series, events, title=args.title)
    with open(args.output, "w", encoding="utf-8", newline="") as fh:
        fh.write(svg)
    return EXIT_OK


def _add_common(p, curve_mode):
    p.add_argument("--family", required=True, choices=sorted(FAMILY_BUILDERS))
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--n-per-unit", type=int, default=600)
    p.add_argument("--m-max", type=int, default=8)
    p.add_argument("--output", default="-")
    if curve_mode:
        p.add_argument("--t-min", type=float, required=True)
        p.add_argument("--t-max", type=float, required=True)
        p.add_argument("--steps", type=int, required=True)
    else:
        p.add_argument("--t", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="morse-spectrum",
        description="Spectra of the CMC stability operator along deforming domains",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("spectrum", help="both spectra at one t"), curve_mode=False)
    _add_common(sub.add_parser("curves", help="eigenvalue curves over a sweep"), curve_mode=True)

    pe = sub.add_parser("events", help="zero crossings with refinement")
    _add_common(pe, curve_mode=True)
    pe.add_argument("--refine", action=argparse.BooleanOptionalAction, default=True)

    pv = sub.add_parser("verify", help="full verification report (JSON)")
    _add_common(pv, curve_mode=True)
    pv.add_argument("--refine", action=argparse.BooleanOptionalAction, default=True)

    po = sub.add_parser("oracle", help="closed-form reference values")
    po.add_argument(
        "which",
        choices=["circle-lambda", "twisted-lambda", "psi", "psi-zeros", "bessel-zero", "gap-lambda1"],
    )
    po.add_argument("--k", type=int, default=1)
    po.add_argument("--t", type=float, default=1.0)
    po.add_argument("--count", type=int, default=6)
    po.add_argument("--m", type=int, default=0)
    po.add_argument("--n", type=int, default=1)
    po.add_argument("--output", default="-")

    pp = sub.add_parser("plot", help="render curves CSV to SVG")
    pp.add_argument("--curves", required=True)
    pp.add_argument("--events", default=None)
    pp.add_argument("--output", required=True)
    pp.add_argument("--title", default="")
    return ap


def _config_from(args) -> RunConfig:
    cfg = RunConfig(
        family=args.family,
        t_min=getattr(args, "t_min", None),
        t_max=getattr(args, "t_max", None),
        steps=getattr(args, "steps", None),
        t=getattr(args, "t", None),
        k=args.k,
        n_per_unit=args.n_per_unit,
        m_max=args.m_max,
        refine=getattr(args, "refine", True),
        output=args.output,
    )
    cfg.validate()
    return cfg


def run(argv) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "oracle":
            return cmd_oracle(args)
        if args.command == "plot":
            return cmd_plot(args)
        cfg = _config_from(args)
        handler = {
            "spectrum": cmd_spectrum,
            "curves": cmd_curves,
            "events": cmd_events,
            "verify": cmd_verify,
        }[args.command]
        return handler(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():  # console entry point
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
