import math

import numpy as np
import pytest

from finitehilbert.engine import (
    DEFAULT_CONFIG,
    WIDOM,
    QuadratureConfig,
    fht_hat,
    fht_check,
    fht_of_one,
    fht_pointwise,
    fht_polynomial,
    fht_spectral,
    integrate_unit,
    project_P,
    project_Q,
    weighted_transform,
)
from finitehilbert.errors import ExponentOutOfRange, UnsupportedExponents
from finitehilbert.functions import (
    EndpointWeightedFunction,
    constant_series,
    inverse_sqrt_weight,
    one,
    sample,
    sqrt_weight,
)
from finitehilbert.series import FIRST_KIND, SECOND_KIND, ChebyshevSeries

GRID = np.linspace(-0.9, 0.9, 13)


def x_over_w():
    return EndpointWeightedFunction(
        -0.5, -0.5, ChebyshevSeries([0.0, 1.0], FIRST_KIND)
    )


def test_integrate_unit_closed_forms():
    assert integrate_unit(one()) == pytest.approx(2.0, abs=1e-10)
    assert integrate_unit(sqrt_weight()) == pytest.approx(math.pi / 2, abs=1e-10)
    assert integrate_unit(inverse_sqrt_weight()) == pytest.approx(math.pi, abs=1e-10)


def test_transform_of_one_matches_log_formula():
    for t in GRID:
        lhs = fht_pointwise(one(), float(t))
        assert lhs == pytest.approx(fht_of_one(float(t)), abs=1e-10)


def test_canonical_fixtures_pointwise():
    for t in GRID:
        t = float(t)
        assert abs(fht_pointwise(inverse_sqrt_weight(), t)) < 1e-10
        assert fht_pointwise(sqrt_weight(), t) == pytest.approx(-t, abs=1e-10)
        assert fht_pointwise(x_over_w(), t) == pytest.approx(1.0, abs=1e-10)


def test_spectral_rules_match_fixtures():
    # (1/w) T_0 -> 0, (1/w) T_1 -> U_0 = 1, w U_0 -> -T_1
    img = fht_spectral(inverse_sqrt_weight())
    assert np.allclose(img.smooth.coeffs, [0.0])
    img = fht_spectral(x_over_w())
    assert img.smooth.basis == SECOND_KIND
    assert np.allclose(img.smooth.coeffs, [1.0])
    img = fht_spectral(EndpointWeightedFunction(
        0.5, 0.5, ChebyshevSeries([1.0], SECOND_KIND)))
    assert img.smooth.basis == FIRST_KIND
    assert np.allclose(img.smooth.coeffs, [0.0, -1.0])


def test_spectral_rejects_other_exponents():
    with pytest.raises(UnsupportedExponents):
        fht_spectral(one())


def test_widom_convention_divides_by_i():
    t = 0.3
    assert fht_pointwise(sqrt_weight(), t, convention=WIDOM) == pytest.approx(
        -t / 1j, abs=1e-10
    )


def test_polynomial_closed_form_vs_quadrature():
    rng = np.random.default_rng(11)
    for _ in range(5):
        tc = rng.standard_normal(7)
        func = EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries(tc, FIRST_KIND))
        poly = fht_polynomial(tc)
        for t in (-0.7, -0.2, 0.4, 0.85):
            assert complex(poly(t)) == pytest.approx(
                complex(fht_pointwise(func, t)), abs=1e-9
            )


def test_hat_spectral_shift():
    # T_hat(U_n) = (1/w) T_{n+1}
    g = EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries([0.0, 1.0], SECOND_KIND))
    h = fht_hat(g)
    assert h.a == -0.5 and h.b == -0.5
    assert np.allclose(h.smooth.coeffs, [0.0, 0.0, 1.0])


def test_check_spectral_shift():
    # T_check(T_n) = -w U_{n-1} ... sign folded: -(T_n -> U_{n-1}) with w weight
    g = EndpointWeightedFunction(0.0, 0.0, ChebyshevSeries([0.0, 0.0, 1.0], FIRST_KIND))
    h = fht_check(g)
    assert h.a == 0.5 and h.b == 0.5
    assert np.allclose(h.smooth.coeffs, [0.0, -1.0])


def test_projections():
    # P(1/w) = 1/w; Q(1) = 1
    p = project_P(inverse_sqrt_weight())
    assert complex(p.smooth.coeffs[0]) == pytest.approx(1.0, abs=1e-10)
    q = project_Q(one())
    assert complex(q.smooth.coeffs[0]) == pytest.approx(1.0, abs=1e-10)
    # Q annihilates odd functions
    q = project_Q(x_over_w().shifted_exponents(0.5, 0.5))
    assert abs(complex(q.smooth.coeffs[0])) < 1e-10


def test_weighted_transform_window():
    with pytest.raises(ExponentOutOfRange):
        weighted_transform(0.9, 0.0, one(), 0.0, p=2.0)
    # gamma = delta = 0 reduces to the plain transform
    v = weighted_transform(0.0, 0.0, sqrt_weight(), 0.25, p=2.0)
    assert v == pytest.approx(-0.25, abs=1e-9)
    # the T_hat regime: gamma = delta = -1/2 at p = 1.5
    v = weighted_transform(-0.5, -0.5, sqrt_weight(), 0.25, p=1.5)
    assert np.isfinite(v)


def test_sampled_input_goes_through_interpolation():
    grid = sample(lambda x: x, 200, spacing="cos")
    v = fht_pointwise(grid, 0.0)
    assert complex(v) == pytest.approx(2.0 / math.pi, abs=1e-6)


def test_linearity_of_pointwise_transform():
    f, g = sqrt_weight(), x_over_w()
    t = 0.37
    lhs = fht_pointwise(
        lambda x: 2.0 * complex(f(x)) + 3.0 * complex(g(x)),
        t,
        QuadratureConfig(abs_tol=1e-9, rel_tol=1e-9),
    )
    rhs = 2.0 * fht_pointwise(f, t) + 3.0 * fht_pointwise(g, t)
    assert complex(lhs) == pytest.approx(complex(rhs), abs=1e-7)
