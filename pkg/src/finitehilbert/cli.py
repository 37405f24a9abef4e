"""Command-line surface: transform tables, airfoil inversion, spectrum tools.

Exit codes: 0 success, 1 failing identity report, 2 spec/argument parse error,
3 quadrature failure, 4 unsolvable inversion, 5 unsupported space descriptor.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass, replace

import numpy as np

from . import airfoil, harness, spectrum
from .engine import (
    TRICOMI,
    WIDOM,
    QuadratureConfig,
    fht_pointwise,
    fht_polynomial,
    fht_spectral,
    sampled_to_weighted,
)
from .errors import (
    FhtError,
    FunctionSpecError,
    NoConvergence,
    NotSolvable,
    SingularEvaluation,
    UnsupportedDescriptor,
    UnsupportedExponents,
)
from .functions import (
    EndpointWeightedFunction,
    IndicatorUnion,
    SampledFunction,
    one,
    sampled_from_csv,
    sqrt_weight,
)
from .series import FIRST_KIND, SECOND_KIND, ChebyshevSeries

EXIT_REPORT_FAIL = 1
EXIT_PARSE = 2
EXIT_QUADRATURE = 3
EXIT_NOT_SOLVABLE = 4
EXIT_DESCRIPTOR = 5


# ---------------------------------------------------------------------------
# FunctionSpec: textual function descriptors.

_LIST_RE = re.compile(r"^\s*(poly|chebT|chebU):\[(.*)\]\s*$")
_WEIGHTED_RE = re.compile(
    r"^\s*weighted:\{([^,]+),([^,]+),(chebT|chebU):\[(.*)\]\}\s*$"
)
_CSV_RE = re.compile(r"^\s*csv:(.+)$")


def _parse_coeffs(body):
    body = body.strip()
    if not body:
        raise FunctionSpecError("empty coefficient list")
    try:
        return np.array([complex(tok.strip()) for tok in body.split(",")])
    except ValueError as exc:
        raise FunctionSpecError(f"bad coefficient in [{body}]") from exc


def _fmt_num(c):
    c = complex(c)
    if c.imag == 0.0:
        return repr(c.real)
    return repr(c)


@dataclass(frozen=True)
class FunctionSpec:
    """Parsed form of a textual function descriptor; printing round-trips."""

    kind: str  # poly | chebT | chebU | weighted | csv
    coeffs: np.ndarray | None = None
    a: complex = 0.0
    b: complex = 0.0
    basis: str = FIRST_KIND
    path: str | None = None

    def to_string(self):
        if self.kind == "csv":
            return f"csv:{self.path}"
        body = ",".join(_fmt_num(c) for c in self.coeffs)
        if self.kind == "poly":
            return f"poly:[{body}]"
        if self.kind in ("chebT", "chebU"):
            return f"{self.kind}:[{body}]"
        tag = "chebT" if self.basis == FIRST_KIND else "chebU"
        return f"weighted:{{{_fmt_num(self.a)},{_fmt_num(self.b)},{tag}:[{body}]}}"

    def to_function(self):
        if self.kind == "csv":
            try:
                with open(self.path, newline="") as fh:
                    return sampled_from_csv(fh.read())
            except OSError as exc:
                raise FunctionSpecError(f"cannot read {self.path}: {exc}") from exc
        if self.kind == "poly":
            tc = np.polynomial.chebyshev.poly2cheb(self.coeffs)
            return EndpointWeightedFunction(
                0.0, 0.0, ChebyshevSeries(tc, FIRST_KIND)
            )
        if self.kind in ("chebT", "chebU"):
            basis = FIRST_KIND if self.kind == "chebT" else SECOND_KIND
            return EndpointWeightedFunction(
                0.0, 0.0, ChebyshevSeries(self.coeffs, basis)
            )
        return EndpointWeightedFunction(
            self.a, self.b, ChebyshevSeries(self.coeffs, self.basis)
        )


def parse_function_spec(text):
    m = _LIST_RE.match(text)
    if m:
        return FunctionSpec(kind=m.group(1), coeffs=_parse_coeffs(m.group(2)))
    m = _WEIGHTED_RE.match(text)
    if m:
        try:
            a, b = complex(m.group(1).strip()), complex(m.group(2).strip())
        except ValueError as exc:
            raise FunctionSpecError(f"bad weight exponents in {text!r}") from exc
        basis = FIRST_KIND if m.group(3) == "chebT" else SECOND_KIND
        return FunctionSpec(kind="weighted", coeffs=_parse_coeffs(m.group(4)),
                            a=a, b=b, basis=basis)
    m = _CSV_RE.match(text)
    if m:
        return FunctionSpec(kind="csv", path=m.group(1).strip())
    raise FunctionSpecError(f"cannot parse function spec {text!r}")


def spec_of_weighted(func):
    """FunctionSpec for a series-backed function (used to print solutions)."""
    series = func.smooth.trimmed()
    tag = FIRST_KIND if series.basis == FIRST_KIND else SECOND_KIND
    if func.a == 0.0 and func.b == 0.0:
        kind = "chebT" if tag == FIRST_KIND else "chebU"
        return FunctionSpec(kind=kind, coeffs=series.coeffs)
    return FunctionSpec(kind="weighted", coeffs=series.coeffs,
                        a=complex(func.a), b=complex(func.b), basis=series.basis)


# ---------------------------------------------------------------------------
# RunConfig: defaults < config file (FHT_CONFIG or --config) < flags.

@dataclass(frozen=True)
class RunConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_panels: int = 4096
    eps_edge: float = 1e-6
    seed: int = 0
    convention: str = TRICOMI
    fmt: str = "json"

    def quadrature(self):
        return QuadratureConfig(abs_tol=self.abs_tol, rel_tol=self.rel_tol,
                                max_panels=self.max_panels, eps_edge=self.eps_edge)


_CONFIG_CASTS = {
    "abs_tol": float, "rel_tol": float, "max_panels": int, "eps_edge": float,
    "seed": int, "convention": str, "fmt": str,
}


def load_run_config(path=None, overrides=None):
    cfg = RunConfig()
    path = path or os.environ.get("FHT_CONFIG")
    if path:
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, raw = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_CASTS:
                    raise FunctionSpecError(f"unknown config key {key!r}")
                cfg = replace(cfg, **{key: _CONFIG_CASTS[key](raw.strip())})
    for key, value in (overrides or {}).items():
        if value is not None:
            cfg = replace(cfg, **{key: value})
    if cfg.convention not in (TRICOMI, WIDOM):
        raise FunctionSpecError(f"unknown convention {cfg.convention!r}")
    if cfg.fmt not in ("json", "csv"):
        raise FunctionSpecError(f"unknown output format {cfg.fmt!r}")
    return cfg


# ---------------------------------------------------------------------------
# Output plumbing: stable-key JSON, x,re,im CSV, atomic file writes.

def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fht-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(payload, timestamp):
    if timestamp:
        payload = dict(payload)
        payload["timestamp"] = (
            datetime.datetime.now(datetime.timezone.utc).isoformat()
        )
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _table_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "re", "im"])
    for x, v in rows:
        writer.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Transform dispatch shared by the transform/invert commands.

def make_transform(func, run_cfg):
    """Fastest available route to T(f): closed form, spectral rule, quadrature."""
    qcfg = run_cfg.quadrature()
    factor = 1.0 / 1j if run_cfg.convention == WIDOM else 1.0
    if isinstance(func, SampledFunction):
        func = sampled_to_weighted(func)
    if isinstance(func, EndpointWeightedFunction):
        if func.a == 0.0 and func.b == 0.0:
            poly = fht_polynomial(func.smooth.to_basis(FIRST_KIND).coeffs)
            return lambda t: factor * poly(t)
        try:
            image = fht_spectral(func, convention=run_cfg.convention)
        except UnsupportedExponents:
            pass
        else:
            return lambda t: complex(image(t))
    return lambda t: fht_pointwise(func, t, qcfg, convention=run_cfg.convention)


def _parse_points(args, eps_edge):
    if args.points is not None:
        try:
            pts = [float(tok) for tok in args.points.split(",")]
        except ValueError as exc:
            raise FunctionSpecError(f"bad --points value {args.points!r}") from exc
    else:
        pts = list(np.linspace(-0.9, 0.9, args.grid))
    for t in pts:
        if not -1.0 + eps_edge <= t <= 1.0 - eps_edge:
            raise FunctionSpecError(f"point {t} is not interior")
    return pts


# ---------------------------------------------------------------------------
# Subcommands.

def cmd_transform(args, run_cfg):
    spec = parse_function_spec(args.f)
    pts = _parse_points(args, run_cfg.eps_edge)
    transform = make_transform(spec.to_function(), run_cfg)
    rows = [(t, complex(transform(t))) for t in pts]
    if run_cfg.fmt == "csv":
        _emit(_table_csv(rows), args.output)
    else:
        payload = {
            "command": "transform",
            "convention": run_cfg.convention,
            "spec": spec.to_string(),
            "table": [
                {"x": float(t), "re": v.real, "im": v.imag} for t, v in rows
            ],
        }
        _emit(_json_text(payload, not args.no_timestamp), args.output)
    return 0


def cmd_invert(args, run_cfg):
    spec = parse_function_spec(args.g)
    qcfg = run_cfg.quadrature()
    g = spec.to_function()
    if args.regime == airfoil.LOW:
        sol = airfoil.solve_low(g, C=complex(args.constant), cfg=qcfg)
    else:
        sol = airfoil.solve_high(g, cfg=qcfg)
    report = airfoil.verify_roundtrip(g, args.regime, C=complex(args.constant),
                                      cfg=qcfg)
    solution = sol.solution()
    payload = {
        "command": "invert",
        "regime": sol.regime,
        "rhs": spec.to_string(),
        "solution": spec_of_weighted(solution).to_string(),
        "roundtrip_residual": report.max_residual,
        "solvability_residual": (
            airfoil.solvability_residual(g, qcfg) if args.regime == airfoil.HIGH
            else None
        ),
        "constant_recovered": (
            None if report.constant_recovered is None
            else [report.constant_recovered.real, report.constant_recovered.imag]
        ),
    }
    _emit(_json_text(payload, not args.no_timestamp), args.output)
    return 0


def _parse_descriptor(text):
    head, _, rest = text.partition(":")
    parts = [tok.strip() for tok in rest.split(",")] if rest else []
    try:
        if head == "lebesgue" and len(parts) == 1:
            return spectrum.SpaceDescriptor.lebesgue(float(parts[0]))
        if head == "lorentz" and len(parts) == 2:
            r = math.inf if parts[1] in ("inf", "oo") else float(parts[1])
            return spectrum.SpaceDescriptor.lorentz(float(parts[0]), r)
        if head == "indexed" and len(parts) == 4:
            flags = []
            for tok in parts[2:]:
                if tok.lower() in ("1", "true", "yes"):
                    flags.append(True)
                elif tok.lower() in ("0", "false", "no"):
                    flags.append(False)
                else:
                    raise ValueError(tok)
            return spectrum.SpaceDescriptor.indexed(
                float(parts[0]), float(parts[1]), *flags
            )
    except ValueError as exc:
        raise UnsupportedDescriptor(f"bad descriptor {text!r}") from exc
    raise UnsupportedDescriptor(f"bad descriptor {text!r}")


def _parse_lambda(text):
    try:
        re_part, _, im_part = text.partition(",")
        return complex(float(re_part), float(im_part or "0"))
    except ValueError as exc:
        raise FunctionSpecError(f"bad --lambda value {text!r}") from exc


def cmd_classify(args, run_cfg):
    desc = _parse_descriptor(args.space)
    fs = spectrum.classify_space(desc)
    if args.boundary_csv:
        pts = spectrum.region_boundary_points(fs.sigma.p, args.boundary_points)
        rows = [(i, complex(z)) for i, z in enumerate(pts)]
        _emit(_table_csv(rows), args.boundary_csv)
    payload = {
        "command": "classify-spectrum",
        "convention": WIDOM,
        "space": args.space,
        "sigma_p": fs.sigma.p,
        "point": fs.point.label(),
        "residual": fs.residual.label(),
        "continuous": fs.continuous.label(),
    }
    if args.lam is not None:
        lam = _parse_lambda(args.lam)
        payload["lambda"] = [lam.real, lam.imag]
        payload["classification"] = spectrum.classify_point(desc, lam)
    _emit(_json_text(payload, not args.no_timestamp), args.output)
    return 0


def cmd_eigencheck(args, run_cfg):
    lam = _parse_lambda(args.lam)
    gamma = spectrum.gamma_of_lambda(lam)
    grid = np.linspace(-0.9, 0.9, args.grid)
    residual = spectrum.eigen_residual(lam, grid=grid, cfg=run_cfg.quadrature())
    tol = 1e-8 if abs(lam.imag) == 0.0 else 1e-5
    payload = {
        "command": "eigencheck",
        "convention": WIDOM,
        "lambda": [lam.real, lam.imag],
        "gamma": gamma,
        "grid_size": int(args.grid),
        "max_residual": residual,
        "tolerance": tol,
        "pass": residual <= tol,
    }
    _emit(_json_text(payload, not args.no_timestamp), args.output)
    return 0 if residual <= tol else EXIT_REPORT_FAIL


# Identity suites: everything is seeded so reruns are byte-identical.

def _random_poly(rng, degree):
    coeffs = rng.standard_normal(degree + 1).astype(complex)
    return EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries(coeffs, FIRST_KIND))


def _random_union(rng, max_intervals=3):
    k = int(rng.integers(1, max_intervals + 1))
    cuts = np.sort(rng.uniform(-1.0, 1.0, 2 * k))
    while np.min(np.diff(cuts)) < 0.05:
        cuts = np.sort(rng.uniform(-1.0, 1.0, 2 * k))
    return IndicatorUnion(tuple((cuts[2 * i], cuts[2 * i + 1]) for i in range(k)))


def _suite_parseval(rng):
    reports = [harness.check_parseval(one(), sqrt_weight())]
    for _ in range(5):
        reports.append(harness.check_parseval(_random_poly(rng, 6),
                                              _random_poly(rng, 6)))
    return reports


def _suite_pb(rng):
    return [
        harness.check_poincare_bertrand(_random_poly(rng, 4), _random_poly(rng, 4))
        for _ in range(2)
    ]


def _suite_laeng(rng):
    lambdas = np.linspace(0.1, 2.0, 20)
    return [harness.check_laeng(_random_union(rng), lambdas) for _ in range(2)]


def _suite_kernel(rng):
    return [harness.check_kernel(1.0), harness.check_kernel(2.0 - 3.0j)]


def _suite_norms(rng):
    seed = int(rng.integers(0, 2**31 - 1))
    return [harness.norm_probe(p, family_size=20, seed=seed)
            for p in (1.2, 1.5, 1.8)]


_SUITES = {
    "parseval": _suite_parseval,
    "pb": _suite_pb,
    "laeng": _suite_laeng,
    "kernel": _suite_kernel,
    "norms": _suite_norms,
}


def cmd_identities(args, run_cfg):
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    rng = np.random.default_rng(run_cfg.seed)
    reports = []
    for name in names:
        reports.extend(r.as_dict() for r in _SUITES[name](rng))
    all_pass = all(r["pass"] for r in reports)
    payload = {
        "command": "identities",
        "suite": args.suite,
        "seed": run_cfg.seed,
        "reports": reports,
        "pass": all_pass,
    }
    _emit(_json_text(payload, not args.no_timestamp), args.output)
    return 0 if all_pass else EXIT_REPORT_FAIL


def cmd_norms(args, run_cfg):
    ps = [float(tok) for tok in args.p.split(",")]
    reports = [
        harness.norm_probe(p, family_size=args.family_size, seed=run_cfg.seed)
        for p in ps
    ]
    if args.weighted:
        gamma, delta, p = (float(tok) for tok in args.weighted.split(","))
        reports.append(harness.khvedelidze_probe(gamma, delta, p,
                                                 family_size=args.family_size,
                                                 seed=run_cfg.seed))
    if args.loglog:
        reports.append(harness.loglog_probe(seed=run_cfg.seed))
    all_pass = all(r.passed for r in reports)
    payload = {
        "command": "norms",
        "seed": run_cfg.seed,
        "reports": [r.as_dict() for r in reports],
        "pass": all_pass,
    }
    _emit(_json_text(payload, not args.no_timestamp), args.output)
    return 0 if all_pass else EXIT_REPORT_FAIL


# ---------------------------------------------------------------------------
# Argument parsing and dispatch.

def _add_common(sub):
    sub.add_argument("--config", help="key=value config file (or set FHT_CONFIG)")
    sub.add_argument("--format", choices=["json", "csv"], dest="fmt")
    sub.add_argument("--convention", choices=[TRICOMI, WIDOM])
    sub.add_argument("--seed", type=int)
    sub.add_argument("--output", help="write output atomically to this path")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="omit the timestamp field from JSON output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fht",
        description="Finite Hilbert transform toolkit on (-1,1)",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("transform", help="evaluate T(f) on points or a grid")
    p.add_argument("--f", required=True, help="function spec, e.g. chebT:[0,1]")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--points", help="comma-separated interior points")
    group.add_argument("--grid", type=int, help="uniform interior grid size")
    _add_common(p)
    p.set_defaults(func=cmd_transform)

    p = subs.add_parser("invert", help="solve the airfoil equation T(f) = g")
    p.add_argument("--g", required=True, help="right-hand side spec")
    p.add_argument("--regime", required=True, choices=[airfoil.LOW, airfoil.HIGH])
    p.add_argument("--constant", default="0",
                   help="homogeneous coefficient C (low regime)")
    _add_common(p)
    p.set_defaults(func=cmd_invert)

    for name in ("classify-spectrum", "classify"):
        p = subs.add_parser(name, help="fine-spectrum classification")
        p.add_argument("--space", required=True,
                       help="lebesgue:p | lorentz:p,r | indexed:pX,qX,pa,qa")
        p.add_argument("--lambda", dest="lam", help="point to classify, re,im")
        p.add_argument("--boundary-csv",
                       help="also write the region boundary polyline to this path")
        p.add_argument("--boundary-points", type=int, default=400)
        _add_common(p)
        p.set_defaults(func=cmd_classify)

    p = subs.add_parser("eigencheck", help="verify the eigen-relation at lambda")
    p.add_argument("--lambda", dest="lam", required=True, help="re,im")
    p.add_argument("--grid", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_eigencheck)

    p = subs.add_parser("identities", help="run identity suites")
    p.add_argument("--suite", required=True,
                   choices=sorted(_SUITES) + ["all"])
    _add_common(p)
    p.set_defaults(func=cmd_identities)

    p = subs.add_parser("norms", help="operator-norm probes")
    p.add_argument("--p", default="1.2,1.5,1.8",
                   help="comma-separated exponents in (1,2)")
    p.add_argument("--family-size", type=int, default=20)
    p.add_argument("--weighted", help="gamma,delta,p for the weighted probe")
    p.add_argument("--loglog", action="store_true",
                   help="include the L log L -> L^1 probe")
    _add_common(p)
    p.set_defaults(func=cmd_norms)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run_cfg = load_run_config(args.config, {
            "fmt": args.fmt,
            "convention": args.convention,
            "seed": args.seed,
        })
        # spectral statements are stated for T/i; these commands pin it
        if args.command in ("classify-spectrum", "classify", "eigencheck"):
            run_cfg = replace(run_cfg, convention=WIDOM)
        return args.func(args, run_cfg)
    except (FunctionSpecError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NoConvergence, SingularEvaluation) as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except NotSolvable as exc:
        print(f"not solvable: residual {exc.residual:.6e}", file=sys.stderr)
        return EXIT_NOT_SOLVABLE
    except UnsupportedDescriptor as exc:
        print(f"unsupported descriptor: {exc}", file=sys.stderr)
        return EXIT_DESCRIPTOR
    except FhtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
