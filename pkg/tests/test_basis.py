import math

import numpy as np
import pytest

from gardner.basis import TRIG_H_MAX, BasisKind, nodal_weights, segment_value

H_SAMPLES = (0.05, 0.1, 0.25, 0.5, 1.0)


def test_polynomial_weights_exact():
    w = nodal_weights(BasisKind.POLYNOMIAL, 0.5)
    assert w.a1 == 1.0
    assert w.a2 == 4.0
    # b1 pairs with the left-neighbor coefficient in the slope stencil and
    # is therefore the basis slope at the right interior node: -3/h
    assert w.b1 == -6.0
    assert w.g1 == 24.0
    assert w.g2 == -48.0


def test_polynomial_identities():
    for h in H_SAMPLES:
        w = nodal_weights(BasisKind.POLYNOMIAL, h)
        assert 2.0 * w.a1 + w.a2 == 6.0
        assert 2.0 * w.g1 + w.g2 == 0.0


def test_trigonometric_small_h_limits():
    w = nodal_weights(BasisKind.TRIGONOMETRIC, 1e-4)
    assert w.a1 == pytest.approx(1.0 / 6.0, abs=1e-8)
    assert w.a2 == pytest.approx(2.0 / 3.0, abs=1e-8)


def test_trigonometric_identities_hold_only_in_the_limit():
    # nodal partition of unity and vanishing curvature-sum are h^2-accurate
    # for this family, not exact; both defects shrink quadratically
    for h in (0.05, 0.1, 0.2, 0.4, 0.8):
        w = nodal_weights(BasisKind.TRIGONOMETRIC, h)
        assert abs(2.0 * w.a1 + w.a2 - 1.0) <= 0.5 * h * h
        assert abs(2.0 * w.g1 + w.g2) <= 0.04 * abs(w.g1) * h * h
    w = nodal_weights(BasisKind.TRIGONOMETRIC, 0.5)
    assert 2.0 * w.a1 + w.a2 != pytest.approx(1.0, abs=1e-3)


@pytest.mark.parametrize("h", [-1.0, 0.0])
@pytest.mark.parametrize("kind", list(BasisKind))
def test_nonpositive_spacing_rejected(kind, h):
    with pytest.raises(ValueError):
        nodal_weights(kind, h)


def test_trigonometric_spacing_limit():
    with pytest.raises(ValueError):
        nodal_weights(BasisKind.TRIGONOMETRIC, TRIG_H_MAX)
    nodal_weights(BasisKind.TRIGONOMETRIC, TRIG_H_MAX * 0.999)


@pytest.mark.parametrize("kind", list(BasisKind))
@pytest.mark.parametrize("h", H_SAMPLES)
def test_segment_nodal_values_match_weights(kind, h):
    w = nodal_weights(kind, h)
    assert segment_value(kind, h, 0, 1.0) == pytest.approx(w.a1, rel=1e-12)
    assert segment_value(kind, h, 1, 1.0) == pytest.approx(w.a2, rel=1e-12)
    assert segment_value(kind, h, 2, 1.0) == pytest.approx(w.a1, rel=1e-12)


@pytest.mark.parametrize("kind", list(BasisKind))
@pytest.mark.parametrize("h", H_SAMPLES)
def test_segment_continuity_and_support(kind, h):
    assert segment_value(kind, h, 0, 0.0) == pytest.approx(0.0, abs=1e-14)
    assert segment_value(kind, h, 3, 1.0) == pytest.approx(0.0, abs=1e-14)
    for left, right in ((0, 1), (1, 2), (2, 3)):
        a = segment_value(kind, h, left, 1.0)
        b = segment_value(kind, h, right, 0.0)
        assert a == pytest.approx(b, abs=1e-12)


def _whole_spline(kind, h):
    """Basis function as a single callable on [-2h, 2h] around its center."""

    def f(y):
        tau = y / h
        seg = min(max(int(math.floor(tau)) + 2, 0), 3)
        s = tau - (seg - 2)
        return segment_value(kind, h, seg, min(max(s, 0.0), 1.0))

    return f


@pytest.mark.parametrize("kind", list(BasisKind))
@pytest.mark.parametrize("h", (0.25, 0.5))
def test_derivative_weights_via_finite_differences(kind, h):
    w = nodal_weights(kind, h)
    f = _whole_spline(kind, h)
    d = 1e-6 * h
    slope_right = (f(h + d) - f(h - d)) / (2.0 * d)
    assert slope_right == pytest.approx(w.b1, rel=1e-6)
    assert (f(-h + d) - f(-h - d)) / (2.0 * d) == pytest.approx(-w.b1, rel=1e-6)
    # one-sided 4-point second derivative avoids differencing across a knot
    dd = 1e-3 * h
    curv = lambda x0, s: (
        2.0 * f(x0) - 5.0 * f(x0 + s * dd) + 4.0 * f(x0 + 2 * s * dd) - f(x0 + 3 * s * dd)
    ) / dd**2
    assert curv(-h, 1.0) == pytest.approx(w.g1, rel=1e-5)
    assert curv(0.0, 1.0) == pytest.approx(w.g2, rel=1e-5)
    assert curv(h, -1.0) == pytest.approx(w.g1, rel=1e-5)


def test_segment_accepts_arrays():
    s = np.linspace(0.0, 1.0, 11)
    vals = segment_value(BasisKind.POLYNOMIAL, 0.5, 0, s)
    assert vals.shape == s.shape
    assert vals[-1] == pytest.approx(1.0)


def test_segment_domain_errors():
    with pytest.raises(ValueError):
        segment_value(BasisKind.POLYNOMIAL, 0.5, 4, 0.5)
    with pytest.raises(ValueError):
        segment_value(BasisKind.POLYNOMIAL, 0.5, -1, 0.5)
    with pytest.raises(ValueError):
        segment_value(BasisKind.POLYNOMIAL, 0.5, 1, 1.5)
    with pytest.raises(ValueError):
        segment_value(BasisKind.TRIGONOMETRIC, 0.5, 1, -0.1)
