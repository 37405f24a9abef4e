"""The finite Hilbert transform: principal-value quadrature and spectral rules.

The principal-value integral is evaluated by singularity subtraction,

    T(f)(t) = (1/pi) [ int (f(x)-f(t))/(x-t) dx + f(t) log((1-t)/(1+t)) ],

which is a proper integral when f is Hoelder-continuous at t.  The integral is
computed after the substitution x = cos(theta), which removes square-root
endpoint singularities exactly and weakens general algebraic ones.

The spectral rules use the exact images of the two canonical weight classes:

    (1/w) T_n  ->  U_{n-1}        (n >= 1; the n = 0 term is annihilated)
    w U_n      ->  -T_{n+1}
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import (
    ExponentOutOfRange,
    NoConvergence,
    SingularEvaluation,
    UnsupportedExponents,
)
from .functions import EndpointWeightedFunction, SampledFunction
from .series import (
    FIRST_KIND,
    SECOND_KIND,
    ChebyshevSeries,
    interpolate_chebyshev,
)

TRICOMI = "tricomi"
WIDOM = "widom"


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_panels: int = 4096
    eps_edge: float = 1e-6

    def __post_init__(self):
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_panels < 4:
            raise ValueError("max_panels must be >= 4")


DEFAULT_CONFIG = QuadratureConfig()


def _as_callable(f, cfg=DEFAULT_CONFIG, degree=64):
    """Normalize supported inputs to an evaluable function on (-1,1)."""
    if isinstance(f, SampledFunction):
        return sampled_to_weighted(f, degree=degree)
    return f


def sampled_to_weighted(f, degree=64):
    """Interpolate a sampled function to a Chebyshev series (exponents (0,0))."""
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(f.points, f.values, extrapolate=True)
    series = interpolate_chebyshev(lambda x: complex(spline(x)), degree)
    return EndpointWeightedFunction(0.0, 0.0, series)


def _is_real(f):
    return bool(getattr(f, "real_valued", False))


def _quad(g, a, b, cfg, points=None):
    """Adaptive quadrature with the panel budget from cfg; returns (value, err)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            g, a, b,
            epsabs=0.25 * cfg.abs_tol,
            epsrel=0.25 * cfg.rel_tol,
            limit=cfg.max_panels,
            points=points,
            full_output=1,
        )
    val, err = out[0], out[1]
    if not np.isfinite(val):
        raise NoConvergence("quadrature returned a non-finite value")
    return val, err


def _quad_complex(g, a, b, cfg, real_only=False, points=None):
    re, err_re = _quad(lambda s: g(s).real, a, b, cfg, points=points)
    if real_only:
        return complex(re), err_re
    im, err_im = _quad(lambda s: g(s).imag, a, b, cfg, points=points)
    return complex(re, im), err_re + err_im


def _eval_times_sin(f, theta):
    """f(cos theta) * sin(theta), stable against endpoint blow-up.

    For endpoint-weighted f the weight times sin(theta) is rewritten as
    2^(a+b+1) sin(theta/2)^(2a+1) cos(theta/2)^(2b+1), which stays finite for
    all integrable exponents.
    """
    if isinstance(f, EndpointWeightedFunction):
        h = 0.5 * theta
        sh = max(math.sin(h), 1e-300)
        ch = max(math.cos(h), 1e-300)
        a, b = complex(f.a), complex(f.b)
        log_factor = (
            (a + b + 1.0) * math.log(2.0)
            + (2.0 * a + 1.0) * math.log(sh)
            + (2.0 * b + 1.0) * math.log(ch)
        )
        return np.exp(log_factor) * complex(f.smooth(math.cos(theta)))
    return complex(f(math.cos(theta))) * math.sin(theta)


def integrate_unit(f, cfg=DEFAULT_CONFIG):
    """int_{-1}^1 f(x) dx via the x = cos(theta) substitution."""
    f = _as_callable(f, cfg)
    real_only = _is_real(f)

    def g(theta):
        return _eval_times_sin(f, theta)

    val, err = _quad_complex(g, 0.0, math.pi, cfg, real_only=real_only)
    if err > max(cfg.abs_tol, cfg.rel_tol * abs(val)) * 10.0:
        raise NoConvergence(f"integral error estimate {err:.2e} too large")
    if real_only:
        return val.real
    return val


def _derivative(f, t, h=1e-6):
    return (complex(f(t + h)) - complex(f(t - h))) / (2.0 * h)


def fht_pointwise(f, t, cfg=DEFAULT_CONFIG, convention=TRICOMI):
    """T(f)(t) = (1/pi) p.v. int f(x)/(x-t) dx by singularity subtraction."""
    f = _as_callable(f, cfg)
    if not -1.0 + cfg.eps_edge <= t <= 1.0 - cfg.eps_edge:
        raise ValueError("t must lie in the interior window")
    ft = complex(f(t))
    if not np.isfinite(ft):
        raise SingularEvaluation(f"f is not finite at t={t}")
    real_only = _is_real(f)
    phi = math.acos(t)
    dft = _derivative(f, t, h=min(1e-6, 0.25 * (1.0 - abs(t))))

    def g(theta):
        x = math.cos(theta)
        dx = x - t
        s = math.sin(theta)
        if abs(dx) < 1e-13:
            return dft * s
        return (_eval_times_sin(f, theta) - ft * s) / dx

    v1, e1 = _quad_complex(g, 0.0, phi, cfg, real_only=real_only)
    v2, e2 = _quad_complex(g, phi, math.pi, cfg, real_only=real_only)
    log_term = ft * math.log((1.0 - t) / (1.0 + t))
    result = (v1 + v2 + log_term) / math.pi
    err = (e1 + e2) / math.pi
    if err > max(cfg.abs_tol, cfg.rel_tol * abs(result)) * 100.0:
        raise NoConvergence(f"p.v. quadrature error estimate {err:.2e} too large")
    if convention == WIDOM:
        result = result / 1j
    elif convention != TRICOMI:
        raise ValueError(f"unknown convention {convention!r}")
    if real_only and convention == TRICOMI:
        return complex(result.real)
    return result


def _exponents_close(f, a, b, tol=1e-12):
    return abs(complex(f.a) - a) <= tol and abs(complex(f.b) - b) <= tol


def fht_spectral(f, convention=TRICOMI):
    """Exact transform of the two canonical weight classes.

    (1/w) sum a_n T_n  ->  sum_{n>=1} a_n U_{n-1}
    w sum b_n U_n      ->  -sum b_n T_{n+1}
    """
    if not isinstance(f, EndpointWeightedFunction):
        raise UnsupportedExponents("spectral rule needs an endpoint-weighted function")
    if _exponents_close(f, -0.5, -0.5):
        tc = f.smooth.to_basis(FIRST_KIND).coeffs
        out = np.zeros(max(len(tc) - 1, 1), dtype=complex)
        out[: len(tc) - 1] = tc[1:]
        result = EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries(out, SECOND_KIND))
    elif _exponents_close(f, 0.5, 0.5):
        uc = f.smooth.to_basis(SECOND_KIND).coeffs
        out = np.zeros(len(uc) + 1, dtype=complex)
        out[1:] = -uc
        result = EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries(out, FIRST_KIND))
    else:
        raise UnsupportedExponents(
            f"no closed form for exponents ({f.a}, {f.b}); use fht_pointwise"
        )
    if convention == WIDOM:
        result = result.scaled(1.0 / 1j)
    return result


def fht_hat(g, cfg=DEFAULT_CONFIG, degree=64):
    """The pseudo-inverse -(1/w) T(g w).

    For a plain series input (exponents (0,0)) the spectral rule
    sum b_n U_n -> (1/w) sum b_n T_{n+1} is exact; other inputs go through
    quadrature and re-interpolation.
    """
    g = _as_callable(g, cfg, degree=degree)
    if isinstance(g, EndpointWeightedFunction) and _exponents_close(g, 0.0, 0.0):
        uc = g.smooth.to_basis(SECOND_KIND).coeffs
        out = np.zeros(len(uc) + 1, dtype=complex)
        out[1:] = uc
        return EndpointWeightedFunction(-0.5, -0.5, ChebyshevSeries(out, FIRST_KIND))
    if not isinstance(g, EndpointWeightedFunction):
        raise UnsupportedExponents("fht_hat needs a series-backed function")
    gw = g.shifted_exponents(0.5, 0.5)
    tgw = interpolate_chebyshev(lambda x: fht_pointwise(gw, x, cfg), degree)
    return EndpointWeightedFunction(-0.5, -0.5, tgw * (-1.0))


def fht_check(g, cfg=DEFAULT_CONFIG, degree=64):
    """The pseudo-inverse -w T(g/w); spectral rule sum a_n T_n -> -w sum_{n>=1} a_n U_{n-1}."""
    g = _as_callable(g, cfg, degree=degree)
    if not (isinstance(g, EndpointWeightedFunction) and _exponents_close(g, 0.0, 0.0)):
        raise UnsupportedExponents("fht_check needs a plain (0,0) series input")
    tc = g.smooth.to_basis(FIRST_KIND).coeffs
    out = np.zeros(max(len(tc) - 1, 1), dtype=complex)
    out[: len(tc) - 1] = -tc[1:]
    return EndpointWeightedFunction(0.5, 0.5, ChebyshevSeries(out, SECOND_KIND))


def project_P(f, cfg=DEFAULT_CONFIG):
    """P(f) = ((1/pi) int f) / w, the projection onto the kernel span{1/w}."""
    c = complex(integrate_unit(f, cfg)) / math.pi
    return EndpointWeightedFunction(
        -0.5, -0.5, ChebyshevSeries(np.array([c]), FIRST_KIND)
    )


def project_Q(f, cfg=DEFAULT_CONFIG):
    """Q(f) = ((1/pi) int f/w) * 1, the projection onto span{1}."""
    f = _as_callable(f, cfg)
    if isinstance(f, EndpointWeightedFunction):
        over_w = f.shifted_exponents(-0.5, -0.5)
    else:
        over_w = lambda x: f(x) / math.sqrt(1.0 - x * x)
    c = complex(integrate_unit(over_w, cfg)) / math.pi
    return EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries(np.array([c]), FIRST_KIND))


def weighted_transform(gamma, delta, f, t, p=2.0, cfg=DEFAULT_CONFIG,
                       convention=TRICOMI):
    """rho(t) T(f/rho)(t) with rho = (1-x)^gamma (1+x)^delta.

    Admissible window: gamma, delta in (-1/p, 1/p') for the declared p.
    """
    pprime = p / (p - 1.0)
    lo, hi = -1.0 / p, 1.0 / pprime
    if not (lo < gamma < hi and lo < delta < hi):
        raise ExponentOutOfRange(
            f"(gamma, delta)=({gamma}, {delta}) outside (-1/{p}, 1/{pprime:g})"
        )
    f = _as_callable(f, cfg)
    if isinstance(f, EndpointWeightedFunction):
        over_rho = f.shifted_exponents(-gamma, -delta)
    else:
        def over_rho(x):
            return f(x) * (1.0 - x) ** (-gamma) * (1.0 + x) ** (-delta)
    rho_t = (1.0 - t) ** gamma * (1.0 + t) ** delta
    return rho_t * fht_pointwise(over_rho, t, cfg, convention)


# ---------------------------------------------------------------------------
# Exact transform of polynomials (used by the identity harness).

def _cheb_to_mono(tc):
    return np.polynomial.chebyshev.cheb2poly(np.asarray(tc, dtype=complex))


def fht_polynomial_parts(tc):
    """The transform of a T-basis polynomial split as R(t) + f(t) L(t)/pi.

    Here L(t) = log((1-t)/(1+t)) and R comes from exact integration of the
    difference quotient (a polynomial in x for fixed t).  Exposing the two
    parts lets callers evaluate the log factor in whatever stable form the
    context provides (e.g. 2 log tan(theta/2) near the endpoints).
    """
    mono = _cheb_to_mono(tc)
    n = len(mono)
    # moments m_k = int_{-1}^1 x^k dx
    moments = np.array([0.0 if k % 2 else 2.0 / (k + 1) for k in range(n)])
    series = ChebyshevSeries(np.asarray(tc, dtype=complex), FIRST_KIND)

    def rational(t):
        # synthetic division: (f(x) - f(t))/(x - t) = sum q_k x^k
        q = np.zeros(max(n - 1, 1), dtype=complex)
        acc = 0.0 + 0.0j
        for k in range(n - 1, 0, -1):
            acc = mono[k] + t * acc
            q[k - 1] = acc
        return np.dot(q, moments[: len(q)]) / math.pi

    return rational, series


def fht_polynomial(tc):
    """Closed-form transform of a T-basis polynomial."""
    rational, series = fht_polynomial_parts(tc)

    def value(t):
        log_part = complex(series(t)) * math.log((1.0 - t) / (1.0 + t)) / math.pi
        return rational(t) + log_part

    return value


def fht_of_one(t):
    """Closed form T(1)(t) = (1/pi) log((1-t)/(1+t))."""
    return math.log((1.0 - t) / (1.0 + t)) / math.pi
