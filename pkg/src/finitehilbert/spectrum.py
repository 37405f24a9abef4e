"""Spectral regions, the eigenfunction family, and fine-spectrum classification.

All spectral statements use the i-normalized transform T/i (the 'widom'
convention); the lens-shaped region for exponent p is

    {+-1} union { lambda : |arg((1+lambda)/(1-lambda))| / (2 pi) <= |1/2 - 1/p| },

bounded by two circular arcs through +-1 that pass through i cot(pi/p) and
i cot(pi/p').
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .engine import DEFAULT_CONFIG, WIDOM, fht_pointwise
from .errors import (
    BranchViolation,
    OutsideEigenvalueSet,
    UnsupportedDescriptor,
)
from .functions import EndpointWeightedFunction
from .series import FIRST_KIND, ChebyshevSeries

BOUNDARY_TOL = 1e-12
IMAG_TOL = 1e-14

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


def _moebius(lam):
    lam = complex(lam)
    if lam == 1.0:
        raise BranchViolation("lambda = 1 maps to infinity")
    return (1.0 + lam) / (1.0 - lam)


def _on_cut(u):
    return abs(u.imag) <= IMAG_TOL and u.real <= 0.0


def z_of_lambda(lam):
    """z = log((1+lambda)/(1-lambda)) / (2 pi i), principal branch; Re z in (-1/2, 1/2)."""
    u = _moebius(lam)
    if _on_cut(u):
        raise BranchViolation(
            f"(1+lambda)/(1-lambda) = {u} lies on the branch cut (-inf, 0]"
        )
    return cmath.log(u) / (2.0j * math.pi)


def in_eigenvalue_set(lam):
    """True when lambda avoids the real rays (-inf,-1] and [1,inf)."""
    lam = complex(lam)
    if abs(lam.imag) <= IMAG_TOL and abs(lam.real) >= 1.0:
        return False
    return True


def gamma_of_lambda(lam):
    """Integrability threshold: 1/gamma = 1/2 + |Re z(lambda)|, so gamma in (1,2].

    xi_lambda belongs to L^p exactly for p < gamma (strictly), and gamma = 2
    precisely for real lambda in (-1,1).
    """
    if not in_eigenvalue_set(lam):
        raise OutsideEigenvalueSet(f"lambda = {lam} lies on the excluded real rays")
    z = z_of_lambda(lam)
    return 1.0 / (0.5 + abs(z.real))


def region_contains(p, lam):
    """Classify lambda against the region for exponent p: interior/boundary/outside."""
    if not 1.0 < p < math.inf:
        raise ValueError("p must lie in (1, inf)")
    lam = complex(lam)
    if abs(lam - 1.0) <= BOUNDARY_TOL or abs(lam + 1.0) <= BOUNDARY_TOL:
        return BOUNDARY
    u = _moebius(lam)
    if _on_cut(u):
        return OUTSIDE
    d = abs(cmath.phase(u)) / (2.0 * math.pi)
    tau = abs(0.5 - 1.0 / p)
    if abs(d - tau) <= BOUNDARY_TOL:
        return BOUNDARY
    return INTERIOR if d < tau else OUTSIDE


def region_boundary_points(p, n=400):
    """Polyline sampling of the two boundary arcs through +-1 and +-i cot(pi/p).

    Each arc is the preimage of a ray arg(u) = const under the Moebius map,
    parameterized by |u| on a log scale.
    """
    pts = []
    tau = abs(0.5 - 1.0 / p)
    # |s| <= 8 keeps the round-trip phase error below the boundary tolerance;
    # the endpoints +-1 (u -> 0, inf) are appended exactly.
    s = np.linspace(-8.0, 8.0, max(n // 2 - 2, 2))
    for sign in (1.0, -1.0):
        u = np.exp(s + 1j * sign * 2.0 * math.pi * tau)
        lam = (u - 1.0) / (u + 1.0)
        pts.append(np.concatenate(([-1.0 + 0.0j], lam, [1.0 + 0.0j])))
    return np.concatenate(pts)


def xi_function(lam):
    """The eigenfunction (1/w) ((1-x)/(1+x))^z as an endpoint-weighted function."""
    z = z_of_lambda(lam)
    return EndpointWeightedFunction(
        -0.5 + z, -0.5 - z, ChebyshevSeries(np.array([1.0 + 0.0j]), FIRST_KIND)
    )


def xi_eval(lam, x):
    return complex(xi_function(lam)(x))


def eigen_residual(lam, grid=None, cfg=DEFAULT_CONFIG, margin=0.05):
    """sup over the grid of |(T/i)(xi)(t) - lambda xi(t)| / (1 + |xi(t)|)."""
    if not in_eigenvalue_set(lam):
        raise OutsideEigenvalueSet(f"lambda = {lam}")
    gamma = gamma_of_lambda(lam)
    if gamma <= 1.0 + margin:
        raise ValueError(
            f"gamma = {gamma:.4f} too close to 1; xi is barely integrable"
        )
    if grid is None:
        grid = np.linspace(-0.9, 0.9, 20)
    xi = xi_function(lam)
    worst = 0.0
    for t in grid:
        lhs = fht_pointwise(xi, float(t), cfg, convention=WIDOM)
        val = complex(xi(float(t)))
        worst = max(worst, abs(lhs - complex(lam) * val) / (1.0 + abs(val)))
    return worst


# ---------------------------------------------------------------------------
# Symbolic fine-spectrum sets.

EMPTY = "empty"
INTERIOR_SET = "interior"
REGION_MINUS_ENDPOINTS = "region_minus_endpoints"
BOUNDARY_SET = "boundary"
ENDPOINTS_ONLY = "endpoints_only"
OPEN_UNIT_INTERVAL = "open_unit_interval"
CLOSED_UNIT_INTERVAL = "closed_unit_interval"
WHOLE_REGION = "whole_region"


@dataclass(frozen=True)
class SymbolicSet:
    """A named subset of the closed region for exponent p."""

    kind: str
    p: float | None = None

    def contains(self, lam):
        lam = complex(lam)
        if self.kind == EMPTY:
            return False
        if self.kind == OPEN_UNIT_INTERVAL:
            return abs(lam.imag) <= IMAG_TOL and abs(lam.real) < 1.0 - BOUNDARY_TOL
        if self.kind == CLOSED_UNIT_INTERVAL:
            return abs(lam.imag) <= IMAG_TOL and abs(lam.real) <= 1.0 + BOUNDARY_TOL
        if self.kind == ENDPOINTS_ONLY:
            return min(abs(lam - 1.0), abs(lam + 1.0)) <= BOUNDARY_TOL
        where = region_contains(self.p, lam)
        at_endpoint = min(abs(lam - 1.0), abs(lam + 1.0)) <= BOUNDARY_TOL
        if self.kind == INTERIOR_SET:
            return where == INTERIOR
        if self.kind == REGION_MINUS_ENDPOINTS:
            return where != OUTSIDE and not at_endpoint
        if self.kind == BOUNDARY_SET:
            return where == BOUNDARY
        if self.kind == WHOLE_REGION:
            return where != OUTSIDE
        raise ValueError(f"unknown symbolic set {self.kind!r}")

    def label(self):
        if self.p is None:
            return self.kind
        return f"{self.kind}({self.p:g})"


def empty():
    return SymbolicSet(EMPTY)


@dataclass(frozen=True)
class SpectralRegion:
    """The lens-shaped spectral region for exponent p."""

    p: float

    def __post_init__(self):
        if not 1.0 < self.p < math.inf:
            raise ValueError("p must lie in (1, inf)")

    def contains(self, lam):
        return region_contains(self.p, lam)


@dataclass(frozen=True)
class SpaceDescriptor:
    """Identity of a parametric rearrangement-invariant space."""

    kind: str  # lebesgue | lorentz | indexed | catalog
    p: float | None = None
    r: float | None = None
    p_index: float | None = None
    q_index: float | None = None
    p_attained: bool = False
    q_attained: bool = False
    name: str | None = None

    @classmethod
    def lebesgue(cls, p):
        if not 1.0 < p < math.inf:
            raise UnsupportedDescriptor("lebesgue exponent must lie in (1, inf)")
        return cls(kind="lebesgue", p=float(p))

    @classmethod
    def lorentz(cls, p, r):
        if not 1.0 < p < math.inf:
            raise UnsupportedDescriptor("lorentz p must lie in (1, inf)")
        if not (r == math.inf or r >= 1.0):
            raise UnsupportedDescriptor("lorentz r must be >= 1 or inf")
        return cls(kind="lorentz", p=float(p), r=float(r))

    @classmethod
    def indexed(cls, p_index, q_index, p_attained, q_attained):
        if not 1.0 < p_index < math.inf or not 1.0 < q_index < math.inf:
            raise UnsupportedDescriptor("indices must lie in (1, inf)")
        if q_index > p_index:
            raise UnsupportedDescriptor("q index cannot exceed p index")
        if q_index == p_index and p_attained and q_attained:
            raise UnsupportedDescriptor(
                "no space has equal indices with both attained"
            )
        return cls(kind="indexed", p_index=float(p_index), q_index=float(q_index),
                   p_attained=bool(p_attained), q_attained=bool(q_attained))

    @classmethod
    def catalog(cls, name):
        return cls(kind="catalog", name=name)


@dataclass(frozen=True)
class FineSpectrum:
    """Decomposition of the spectrum into point / residual / continuous parts."""

    sigma: SpectralRegion
    point: SymbolicSet
    residual: SymbolicSet
    continuous: SymbolicSet

    def parts(self):
        return {"point": self.point, "residual": self.residual,
                "continuous": self.continuous}


def lorentz_indices(p, r):
    """Embedding indices of the Lorentz space with parameters (p, r).

    Both indices equal p; the weak-type index is attained only for r = inf and
    the strong-type one only for r = 1.
    """
    if not 1.0 < p < math.inf:
        raise ValueError("p must lie in (1, inf)")
    if not (r == math.inf or r >= 1.0):
        raise ValueError("r must be >= 1 or inf")
    return p, r == math.inf, p, r == 1.0


def _lebesgue_spectrum(p):
    region = SpectralRegion(p)
    if p < 2.0:
        return FineSpectrum(region, SymbolicSet(INTERIOR_SET, p), empty(),
                            SymbolicSet(BOUNDARY_SET, p))
    if p == 2.0:
        return FineSpectrum(region, empty(), empty(),
                            SymbolicSet(CLOSED_UNIT_INTERVAL))
    return FineSpectrum(region, empty(), SymbolicSet(INTERIOR_SET, p),
                        SymbolicSet(BOUNDARY_SET, p))


def _lorentz_spectrum(p, r):
    if r == math.inf:
        raise UnsupportedDescriptor(
            "weak Lorentz spaces are non-separable; tables cover 1 <= r < inf"
        )
    if p == r:
        return _lebesgue_spectrum(p)
    region = SpectralRegion(p)
    if p < 2.0:
        return FineSpectrum(region, SymbolicSet(INTERIOR_SET, p), empty(),
                            SymbolicSet(BOUNDARY_SET, p))
    if p > 2.0:
        if r == 1.0:
            return FineSpectrum(region, empty(),
                                SymbolicSet(REGION_MINUS_ENDPOINTS, p),
                                SymbolicSet(ENDPOINTS_ONLY))
        return FineSpectrum(region, empty(), SymbolicSet(INTERIOR_SET, p),
                            SymbolicSet(BOUNDARY_SET, p))
    # p == 2
    if r == 1.0:
        return FineSpectrum(region, empty(), SymbolicSet(OPEN_UNIT_INTERVAL),
                            SymbolicSet(ENDPOINTS_ONLY))
    return FineSpectrum(region, empty(), empty(),
                        SymbolicSet(CLOSED_UNIT_INTERVAL))


def _indexed_spectrum(desc):
    s_p, s_q = desc.p_index, desc.q_index
    region = SpectralRegion(s_p)
    if s_p == s_q:
        s = s_p
        if s < 2.0:
            if desc.p_attained:
                return FineSpectrum(region, SymbolicSet(REGION_MINUS_ENDPOINTS, s),
                                    empty(), SymbolicSet(ENDPOINTS_ONLY))
            return FineSpectrum(region, SymbolicSet(INTERIOR_SET, s), empty(),
                                SymbolicSet(BOUNDARY_SET, s))
        if s > 2.0:
            if desc.p_attained or desc.q_attained:
                return FineSpectrum(region, empty(),
                                    SymbolicSet(REGION_MINUS_ENDPOINTS, s),
                                    SymbolicSet(ENDPOINTS_ONLY))
            return FineSpectrum(region, empty(), SymbolicSet(INTERIOR_SET, s),
                                SymbolicSet(BOUNDARY_SET, s))
        # s == 2: three sub-cases
        if desc.p_attained:
            return FineSpectrum(region, SymbolicSet(OPEN_UNIT_INTERVAL), empty(),
                                SymbolicSet(ENDPOINTS_ONLY))
        if desc.q_attained:
            return FineSpectrum(region, empty(), SymbolicSet(OPEN_UNIT_INTERVAL),
                                SymbolicSet(ENDPOINTS_ONLY))
        return FineSpectrum(region, empty(), empty(),
                            SymbolicSet(CLOSED_UNIT_INTERVAL))
    # distinct indices
    if s_p <= 2.0 and desc.p_attained:
        return FineSpectrum(region, SymbolicSet(REGION_MINUS_ENDPOINTS, s_p),
                            empty(), SymbolicSet(ENDPOINTS_ONLY))
    if s_q <= 2.0 <= s_p:
        attained_at_two = (s_p == 2.0 and desc.p_attained) or (
            s_q == 2.0 and desc.q_attained
        )
        if not attained_at_two:
            return FineSpectrum(region, empty(), empty(),
                                SymbolicSet(WHOLE_REGION, s_p))
    raise UnsupportedDescriptor(
        f"no table covers indexed(p={s_p:g}, q={s_q:g}, "
        f"pa={desc.p_attained}, qa={desc.q_attained})"
    )


_CATALOG = {
    "lebesgue": lambda args: SpaceDescriptor.lebesgue(float(args[0])),
    "lorentz": lambda args: SpaceDescriptor.lorentz(
        float(args[0]), math.inf if args[1] in ("inf", "oo") else float(args[1])
    ),
}


def resolve_catalog(name):
    """Catalog names look like 'lebesgue:2' or 'lorentz:1.5,3'."""
    try:
        head, _, rest = name.partition(":")
        return _CATALOG[head]([s.strip() for s in rest.split(",")])
    except (KeyError, ValueError, IndexError) as exc:
        raise UnsupportedDescriptor(f"unknown catalog entry {name!r}") from exc


def classify_space(desc):
    """Symbolic fine-spectrum decomposition for a supported descriptor."""
    if desc.kind == "lebesgue":
        return _lebesgue_spectrum(desc.p)
    if desc.kind == "lorentz":
        return _lorentz_spectrum(desc.p, desc.r)
    if desc.kind == "indexed":
        return _indexed_spectrum(desc)
    if desc.kind == "catalog":
        return classify_space(resolve_catalog(desc.name))
    raise UnsupportedDescriptor(f"unknown descriptor kind {desc.kind!r}")


RESOLVENT = "resolvent"
POINT = "point"
RESIDUAL = "residual"
CONTINUOUS = "continuous"


def classify_point(desc, lam):
    """Locate lambda in the fine spectrum: resolvent/point/residual/continuous."""
    fs = classify_space(desc)
    label = RESOLVENT
    for name, part in fs.parts().items():
        if part.contains(lam):
            label = name
            break
    if label == POINT and desc.kind == "indexed":
        gamma = gamma_of_lambda(lam)
        member = (desc.p_index <= gamma) if desc.p_attained else (desc.p_index < gamma)
        if not member:
            raise UnsupportedDescriptor(
                "table and eigenfunction membership disagree; descriptor invalid"
            )
    return label


def sample_region(p, n, rng):
    """n points of the closed region for exponent p (rejection sampling)."""
    tau = abs(0.5 - 1.0 / p)
    height = 1.0 / math.tan(math.pi / max(p, p / (p - 1.0))) if p != 2.0 else 0.0
    out = []
    while len(out) < n:
        lam = complex(rng.uniform(-1.0, 1.0), rng.uniform(-height - 0.1, height + 0.1))
        if p == 2.0:
            lam = complex(rng.uniform(-1.0, 1.0), 0.0)
        if region_contains(p, lam) != OUTSIDE:
            out.append(lam)
    return out


def partition_check(fs, n=200, seed=0):
    """Sampled disjointness/union check of the three parts against sigma."""
    if isinstance(fs, SpaceDescriptor):
        fs = classify_space(fs)
    rng = np.random.default_rng(seed)
    for lam in sample_region(fs.sigma.p, n, rng):
        hits = [name for name, part in fs.parts().items() if part.contains(lam)]
        in_sigma = fs.sigma.contains(lam) != OUTSIDE
        if len(hits) > 1:
            return False, f"parts overlap at {lam}: {hits}"
        if in_sigma and not hits:
            return False, f"sigma point {lam} uncovered"
        if hits and not in_sigma:
            return False, f"part point {lam} outside sigma"
    return True, "ok"
