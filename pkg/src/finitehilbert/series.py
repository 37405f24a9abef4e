"""Chebyshev series in the first- (T) and second-kind (U) bases.

Coefficients may be complex.  Evaluation uses the Clenshaw recurrence for
both bases; conversion between the bases uses the exact coupling relations
T_n = (U_n - U_{n-2})/2 and U_n = 2(T_n + T_{n-2} + ...).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteSample

FIRST_KIND = "T"
SECOND_KIND = "U"

DEFAULT_TAIL_TOL = 1e-12


def _clenshaw(coeffs, x, basis):
    """Evaluate sum c_n P_n(x) where P is T or U (shared three-term recurrence)."""
    c = np.asarray(coeffs)
    x = np.asarray(x)
    b1 = np.zeros_like(x, dtype=complex)
    b2 = np.zeros_like(x, dtype=complex)
    for k in range(len(c) - 1, 0, -1):
        b1, b2 = c[k] + 2.0 * x * b1 - b2, b1
    if basis == FIRST_KIND:
        return c[0] + x * b1 - b2
    # U_0 = 1, U_1 = 2x
    return c[0] + 2.0 * x * b1 - b2


@dataclass(frozen=True)
class ChebyshevSeries:
    """Finite Chebyshev series c_0..c_N in the T or U basis."""

    coeffs: np.ndarray
    basis: str = FIRST_KIND

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.atleast_1d(np.asarray(self.coeffs, dtype=complex)))
        if self.basis not in (FIRST_KIND, SECOND_KIND):
            raise ValueError(f"unknown basis {self.basis!r}")
        if not np.all(np.isfinite(self.coeffs)):
            raise NonFiniteSample("non-finite series coefficient")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def real_valued(self):
        return bool(np.all(np.abs(self.coeffs.imag) == 0.0))

    def __call__(self, x):
        val = _clenshaw(self.coeffs, x, self.basis)
        if self.real_valued:
            val = val.real
        return val

    def resolved(self, tail_tol=DEFAULT_TAIL_TOL):
        """True when the last two coefficients are below tail_tol relative to the peak."""
        mags = np.abs(self.coeffs)
        peak = mags.max()
        if peak == 0.0:
            return True
        if len(mags) == 1:
            return True
        return max(mags[-1], mags[-2]) <= tail_tol * peak

    def trimmed(self, tol=0.0):
        mags = np.abs(self.coeffs)
        peak = mags.max()
        keep = len(self.coeffs)
        while keep > 1 and mags[keep - 1] <= tol * max(peak, 1.0):
            keep -= 1
        return ChebyshevSeries(self.coeffs[:keep], self.basis)

    def to_basis(self, basis):
        if basis == self.basis:
            return self
        if basis == SECOND_KIND:
            return ChebyshevSeries(t_to_u(self.coeffs), SECOND_KIND)
        return ChebyshevSeries(u_to_t(self.coeffs), FIRST_KIND)

    def __add__(self, other):
        if other.basis != self.basis:
            other = other.to_basis(self.basis)
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=complex)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return ChebyshevSeries(out, self.basis)

    def __mul__(self, scalar):
        return ChebyshevSeries(self.coeffs * scalar, self.basis)

    __rmul__ = __mul__


def t_to_u(tc):
    """T-basis coefficients -> U-basis coefficients (exact linear map)."""
    tc = np.asarray(tc, dtype=complex)
    out = np.zeros(len(tc), dtype=complex)
    out[0] += tc[0]
    if len(tc) > 1:
        out[1] += 0.5 * tc[1]
    for n in range(2, len(tc)):
        out[n] += 0.5 * tc[n]
        out[n - 2] -= 0.5 * tc[n]
    return out


def u_to_t(uc):
    """U-basis coefficients -> T-basis coefficients (exact linear map)."""
    uc = np.asarray(uc, dtype=complex)
    out = np.zeros(len(uc), dtype=complex)
    for n in range(len(uc)):
        # U_n = 2 T_n + 2 T_{n-2} + ... (+ T_0 once when n is even)
        for k in range(n, -1, -2):
            out[k] += uc[n] * (1.0 if k == 0 else 2.0)
    return out


def chebyshev_gauss_nodes(degree):
    """First-kind Chebyshev-Gauss nodes cos((2k+1)pi/(2N+2)), k = 0..N."""
    k = np.arange(degree + 1)
    return np.cos((2.0 * k + 1.0) * np.pi / (2.0 * degree + 2.0))


def interpolate_chebyshev(f, degree):
    """Interpolate f on the degree-N Chebyshev-Gauss grid; exact for poly deg <= N.

    Returns the T-basis series of the interpolant.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    nodes = chebyshev_gauss_nodes(degree)
    vals = np.asarray([complex(f(x)) for x in nodes])
    if not np.all(np.isfinite(vals)):
        raise NonFiniteSample("f is non-finite at a Chebyshev-Gauss node")
    n = degree + 1
    k = np.arange(n)
    theta = (2.0 * k + 1.0) * np.pi / (2.0 * n)
    # c_m = (2/n) sum_k f(x_k) cos(m theta_k), with the m=0 term halved
    cosmat = np.cos(np.outer(np.arange(n), theta))
    coeffs = (2.0 / n) * cosmat @ vals
    coeffs[0] *= 0.5
    return ChebyshevSeries(coeffs, FIRST_KIND)


def series_to_json(series, a=0.0, b=0.0):
    """Serialize a (possibly endpoint-weighted) series to the wire format."""
    payload = {
        "basis": series.basis,
        "a": [float(np.real(a)), float(np.imag(a))],
        "b": [float(np.real(b)), float(np.imag(b))],
        "coeffs": [[float(c.real), float(c.imag)] for c in series.coeffs],
    }
    return json.dumps(payload, sort_keys=True)


def series_from_json(text):
    payload = json.loads(text)
    coeffs = np.array([complex(re, im) for re, im in payload["coeffs"]])
    a = complex(*payload["a"])
    b = complex(*payload["b"])
    return ChebyshevSeries(coeffs, payload["basis"]), a, b
