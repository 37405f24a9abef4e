"""Quantitative checks of the transform's integral identities and norm bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .engine import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    fht_pointwise,
    fht_polynomial,
    fht_spectral,
    weighted_transform,
)
from .errors import DegenerateSet, UnsupportedExponents
from .functions import EndpointWeightedFunction, IndicatorUnion, SampledFunction, sample
from .rearrange import l1_norm, zygmund_norm
from .series import FIRST_KIND, ChebyshevSeries

# Per-identity tolerances, in one place.
TOLERANCES = {
    "parseval": 1e-6,
    "poincare_bertrand": 1e-4,
    "laeng": 1e-3,
    "kernel": 1e-8,
    "norm_bound_slack": 1e-3,
    "stability": 0.10,
}


@dataclass(frozen=True)
class IdentityReport:
    name: str
    max_abs_residual: float
    max_rel_residual: float
    grid_size: int
    tolerance: float

    @property
    def passed(self):
        return self.max_abs_residual <= self.tolerance

    def as_dict(self):
        return {
            "name": self.name,
            "max_abs_residual": self.max_abs_residual,
            "max_rel_residual": self.max_rel_residual,
            "grid_size": self.grid_size,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def _report(name, residuals, scale, tolerance, grid_size):
    max_abs = float(np.max(residuals)) if len(residuals) else 0.0
    max_rel = max_abs / max(scale, 1e-300)
    return IdentityReport(name=name, max_abs_residual=max_abs,
                          max_rel_residual=max_rel, grid_size=grid_size,
                          tolerance=tolerance)


def _poly_transform(func, cfg=DEFAULT_CONFIG):
    """Exact transform for series-backed inputs; quadrature otherwise.

    Plain T-series go through the closed-form polynomial transform; the
    canonical (+-1/2, +-1/2) weights go through the exact spectral rules.
    """
    if isinstance(func, EndpointWeightedFunction):
        if func.a == 0.0 and func.b == 0.0:
            return fht_polynomial(func.smooth.to_basis(FIRST_KIND).coeffs)
        try:
            image = fht_spectral(func)
        except UnsupportedExponents:
            pass
        else:
            return lambda t: complex(image(t))
    return lambda t: fht_pointwise(func, t, cfg)


def check_parseval(f, g, cfg=DEFAULT_CONFIG):
    """Residual of int f T(g) + int g T(f) = 0 for an admissible pair.

    The transforms of polynomial inputs are exact, so the only numerical work
    is the outer integral, whose integrand has at worst log endpoint
    singularities.
    """
    Tf = _poly_transform(f, cfg)
    Tg = _poly_transform(g, cfg)

    def integrand(x):
        return (complex(f(x)) * Tg(x) + complex(g(x)) * Tf(x)).real

    val, err = integrate.quad(integrand, -1.0, 1.0, epsabs=1e-10, epsrel=1e-10,
                              limit=cfg.max_panels)
    scale = max(abs(complex(f(0.0))), abs(complex(g(0.0))), 1.0)
    return _report("parseval", [abs(val)], scale, TOLERANCES["parseval"], 1)


def check_poincare_bertrand(f, g, grid=None, cfg=None):
    """Pointwise residual of T(g T(f) + f T(g)) = T(f) T(g) - f g on the grid.

    The inner transforms of polynomial inputs use the exact closed form; the
    outer transform is adaptive principal-value quadrature with a relaxed
    tolerance, since nested quadrature error compounds.
    """
    if grid is None:
        grid = np.linspace(-0.8, 0.8, 10)
    outer_cfg = cfg or QuadratureConfig(abs_tol=1e-8, rel_tol=1e-8, max_panels=512)
    Tf = _poly_transform(f)
    Tg = _poly_transform(g)

    class _Inner:
        # Hoelder at interior points; log-singular only at the endpoints
        real_valued = False

        def __call__(self, x):
            return complex(g(x)) * Tf(x) + complex(f(x)) * Tg(x)

    inner = _Inner()
    residuals, scale = [], 1.0
    for t in grid:
        t = float(t)
        lhs = fht_pointwise(inner, t, outer_cfg)
        rhs = Tf(t) * Tg(t) - complex(f(t)) * complex(g(t))
        residuals.append(abs(lhs - rhs))
        scale = max(scale, abs(rhs))
    return _report("poincare_bertrand", residuals, scale,
                   TOLERANCES["poincare_bertrand"], len(grid))


def hilbert_of_indicator(A, x):
    """Closed-form line Hilbert transform of the indicator of a union of intervals."""
    total = 0.0
    for a, b in A.intervals:
        total += math.log(abs((x - b) / (x - a)))
    return total / math.pi


def _level_set_measure(A, lam, n_seed=4000):
    """m({x in A : |H(chi_A)(x)| > lam}) by dense sampling plus bisection."""
    measure = 0.0
    for a, b in A.intervals:
        xs = np.linspace(a, b, n_seed + 2)[1:-1]
        vals = np.array([abs(hilbert_of_indicator(A, x)) - lam for x in xs])
        # refine the crossings of |H| - lam between consecutive samples
        crossings = []
        for i in range(len(xs) - 1):
            if vals[i] == 0.0:
                crossings.append(xs[i])
            elif vals[i] * vals[i + 1] < 0.0:
                lo, hi = xs[i], xs[i + 1]
                for _ in range(60):
                    mid = 0.5 * (lo + hi)
                    if (abs(hilbert_of_indicator(A, mid)) - lam) * vals[i] > 0.0:
                        lo = mid
                    else:
                        hi = mid
                crossings.append(0.5 * (lo + hi))
        # walk the panels; |H| -> +inf at both interval endpoints
        edges = [a] + crossings + [b]
        for lo, hi in zip(edges, edges[1:]):
            mid = 0.5 * (lo + hi)
            if abs(hilbert_of_indicator(A, mid)) > lam:
                measure += hi - lo
    return measure


def check_laeng(A, lambdas=None):
    """Level-set law of the transformed indicator: measure = 2 m(A)/(e^(pi lam)+1)."""
    if not isinstance(A, IndicatorUnion):
        A = IndicatorUnion(tuple(A))
    if lambdas is None:
        lambdas = np.linspace(0.1, 2.0, 20)
    mA = A.measure()
    if mA <= 0.0:
        raise DegenerateSet("indicator union has zero measure")
    residuals = []
    for lam in lambdas:
        exact = 2.0 * mA / (math.exp(math.pi * lam) + 1.0)
        approx = _level_set_measure(A, float(lam))
        residuals.append(abs(approx - exact) / exact)
    return _report("laeng", residuals, 1.0, TOLERANCES["laeng"], len(lambdas))


def check_kernel(C=1.0, cfg=DEFAULT_CONFIG, n_points=20):
    """sup |T(C/w)| over an interior grid; the kernel is exactly span{1/w}."""
    func = EndpointWeightedFunction(
        -0.5, -0.5, ChebyshevSeries(np.array([complex(C)]), FIRST_KIND)
    )
    grid = np.linspace(-0.95, 0.95, n_points)
    residuals = [abs(fht_pointwise(func, float(t), cfg)) for t in grid]
    return _report("kernel", residuals, max(abs(complex(C)), 1.0),
                   TOLERANCES["kernel"], n_points)


@dataclass(frozen=True)
class ProbeReport:
    name: str
    sup_ratio: float
    analytic_bound: float | None
    stable: bool
    details: dict

    @property
    def passed(self):
        if self.analytic_bound is None:
            return math.isfinite(self.sup_ratio) and self.stable
        slack = 1.0 + TOLERANCES["norm_bound_slack"]
        return self.sup_ratio <= self.analytic_bound * slack

    def as_dict(self):
        return {
            "name": self.name,
            "sup_ratio": self.sup_ratio,
            "analytic_bound": self.analytic_bound,
            "stable": self.stable,
            "pass": self.passed,
            **self.details,
        }


_THETA_N = 2000
_THETA, _THETA_W = np.polynomial.legendre.leggauss(_THETA_N)
_THETA = 0.5 * math.pi * (_THETA + 1.0)
_THETA_W = 0.5 * math.pi * _THETA_W
_XGRID = np.cos(_THETA)
_SINW = np.sin(_THETA) * _THETA_W


def _grid_lp(vals, p):
    """L^p norm on (-1,1) on the Gauss grid in theta (endpoint-safe)."""
    return float(np.sum(np.abs(vals) ** p * _SINW) ** (1.0 / p))


def _random_cheb_family(rng, size, degree):
    for _ in range(size):
        coeffs = rng.standard_normal(degree + 1)
        yield ChebyshevSeries(coeffs.astype(complex), FIRST_KIND)


def norm_probe(p, family_size=50, seed=0, degree=10):
    """Empirical operator-norm ratio against the analytic value tan(pi/(2p)).

    The transform of each random Chebyshev polynomial is exact (closed form);
    the norms are Gauss-grid norms.  The analytic value bounds every finite
    family from above, so only the one-sided inequality is meaningful.
    """
    if not 1.0 < p < 2.0:
        raise ValueError("the closed-form operator norm applies for p in (1,2)")
    rng = np.random.default_rng(seed)
    bound = math.tan(math.pi / (2.0 * p))
    ratios = []
    for series in _random_cheb_family(rng, family_size, degree):
        tf = fht_polynomial(series.coeffs)
        fv = series(_XGRID)
        tv = np.array([tf(x) for x in _XGRID])
        ratios.append(_grid_lp(tv, p) / _grid_lp(fv, p))
    sup = float(np.max(ratios))
    return ProbeReport(name=f"norm_p{p:g}", sup_ratio=sup, analytic_bound=bound,
                       stable=True,
                       details={"p": p, "family_size": family_size, "seed": seed,
                                "gap": bound - sup})


def _smoothed_spike(x0, beta, eps=1e-3):
    """(|x-x0|^2 + eps^2)^(-beta/2): an integrable spike, smooth and bounded."""

    def func(x):
        return ((x - x0) ** 2 + eps * eps) ** (-0.5 * beta)

    return func


def loglog_probe(family_size=10, seed=7, n_grid=800, cfg=None):
    """sup of ||T f||_1 / ||f||_(L log L) over a spiky family.

    There is no closed-form constant here; the probe asserts finiteness and
    stability of the sup under grid refinement of the Zygmund functional.
    """
    rng = np.random.default_rng(seed)
    cfg = cfg or QuadratureConfig(abs_tol=1e-7, rel_tol=1e-7, max_panels=512)
    tgrid = np.linspace(-0.9, 0.9, 41)
    ratios, ratios_fine = [], []
    for _ in range(family_size):
        x0 = rng.uniform(-0.6, 0.6)
        beta = rng.uniform(0.2, 0.8)
        amp = rng.uniform(0.5, 2.0)
        spike = _smoothed_spike(x0, beta)

        def f(x, spike=spike, amp=amp):
            return amp * spike(x)

        tvals = np.array([fht_pointwise(f, float(t), cfg) for t in tgrid])
        tf = SampledFunction(tgrid, tvals, eps_edge=0.05)
        num = l1_norm(tf)
        den = zygmund_norm(1.0, sample(f, n_grid, spacing="cos"))
        den_fine = zygmund_norm(1.0, sample(f, 2 * n_grid, spacing="cos"))
        ratios.append(num / den)
        ratios_fine.append(num / den_fine)
    sup = float(np.max(ratios))
    sup_fine = float(np.max(ratios_fine))
    stable = abs(sup_fine - sup) <= TOLERANCES["stability"] * max(sup, 1e-300)
    return ProbeReport(name="loglog", sup_ratio=sup, analytic_bound=None,
                       stable=stable,
                       details={"family_size": family_size, "seed": seed,
                                "refined_sup_ratio": sup_fine})


def khvedelidze_probe(gamma, delta, p, family_size=20, seed=0, degree=8):
    """sup of ||rho T(f/rho)||_p / ||f||_p over random polynomials.

    The weighted transform is bounded for exponents inside the admissible
    window; the probe asserts finiteness of the empirical ratio.
    """
    rng = np.random.default_rng(seed)
    tgrid = np.linspace(-0.9, 0.9, 31)
    dt = tgrid[1] - tgrid[0]
    ratios = []
    for series in _random_cheb_family(rng, family_size, degree):
        func = EndpointWeightedFunction(0.0, 0.0, series)
        tv = np.array([weighted_transform(gamma, delta, func, float(t), p=p)
                       for t in tgrid])
        f_norm = _grid_lp(series(_XGRID), p)
        t_norm = float(np.sum(np.abs(tv) ** p * dt) ** (1.0 / p))
        ratios.append(t_norm / f_norm)
    sup = float(np.max(ratios))
    return ProbeReport(name=f"khvedelidze_g{gamma:g}_d{delta:g}_p{p:g}",
                       sup_ratio=sup, analytic_bound=None,
                       stable=math.isfinite(sup),
                       details={"gamma": gamma, "delta": delta, "p": p,
                                "family_size": family_size, "seed": seed})
