"""Cubic B-spline basis families and their nodal weights.

Two interchangeable bases are supported: the classical polynomial cubic
B-spline and the trigonometric cubic B-spline on a uniform knot sequence
with spacing ``h``.  Everything downstream (interpolation, collocation
rows, boundary closures) only ever touches the five nodal weights
collected in :class:`NodalWeights`, so the basis choice is a single enum
value threaded through the code.

Sign convention: ``b1`` is the slope of a basis function at the interior
node right of its center, so the expansion derivative at node ``i`` is
``b1*(c[i-1] - c[i+1])``.  It is negative for both families (a basis
function is decreasing on its right flank); the polynomial value is
``-3/h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

__all__ = ["BasisKind", "NodalWeights", "nodal_weights", "segment_value", "TRIG_H_MAX"]

# All three sine factors of the trigonometric normalizer are positive only
# below this spacing (sin(3h/2) vanishes at h = 2*pi/3).
TRIG_H_MAX = 2.0 * math.pi / 3.0


class BasisKind(Enum):
    """Which cubic B-spline family to collocate with."""

    POLYNOMIAL = "polynomial"
    TRIGONOMETRIC = "trigonometric"


@dataclass(frozen=True)
class NodalWeights:
    """Values of one basis function and its derivatives at the grid nodes.

    With coefficients ``c`` the expansion satisfies, at node ``i``::

        value   = a1*c[i-1] + a2*c[i] + a1*c[i+1]
        slope   = b1*(c[i-1] - c[i+1])
        curvature = g1*c[i-1] + g2*c[i] + g1*c[i+1]

    ``a1``/``a2`` are the off-center/center function values, ``b1`` the
    first-derivative weight (units 1/length, negative by convention, see
    module docstring) and ``g1``/``g2`` the second-derivative weights
    (units 1/length^2).
    """

    a1: float
    a2: float
    b1: float
    g1: float
    g2: float
    h: float


@lru_cache(maxsize=None)
def nodal_weights(kind: BasisKind, h: float) -> NodalWeights:
    """Compute the five nodal weights for basis ``kind`` at spacing ``h``.

    Raises
    ------
    ValueError
        If ``h <= 0``, or if ``h >= 2*pi/3`` for the trigonometric family.
    """
    if h <= 0.0:
        raise ValueError(f"grid spacing must be positive, got h={h}")
    if kind is BasisKind.POLYNOMIAL:
        return NodalWeights(
            a1=1.0,
            a2=4.0,
            b1=-3.0 / h,
            g1=6.0 / h**2,
            g2=-12.0 / h**2,
            h=h,
        )
    if h >= TRIG_H_MAX:
        raise ValueError(
            f"trigonometric basis requires h < 2*pi/3 ~ {TRIG_H_MAX:.6f}, got h={h}"
        )
    s, c = math.sin, math.cos
    a1 = s(h / 2) ** 2 / (s(h) * s(1.5 * h))
    a2 = 2.0 / (1.0 + 2.0 * c(h))
    b1 = -0.75 / s(1.5 * h)
    g1 = 3.0 * (1.0 + 3.0 * c(h)) / (16.0 * s(h / 2) ** 2 * (2.0 * c(h / 2) + c(1.5 * h)))
    g2 = -3.0 * (c(h / 2) / s(h / 2)) ** 2 / (2.0 + 4.0 * c(h))
    return NodalWeights(a1=a1, a2=a2, b1=b1, g1=g1, g2=g2, h=h)


def segment_value(kind: BasisKind, h: float, segment: int, s):
    """Evaluate one of the four nonzero pieces of a basis function.

    A basis function centered at node ``i`` is supported on the four cells
    ``[x_{i-2}, x_{i+2}]``; ``segment`` (0..3) picks the cell counting from
    the left and ``s`` in [0, 1] is the local coordinate within it.  ``s``
    may be a numpy array.

    Raises
    ------
    ValueError
        If ``segment`` is outside 0..3 or ``s`` outside [0, 1].
    """
    if segment not in (0, 1, 2, 3):
        raise ValueError(f"segment must be in 0..3, got {segment}")
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0) or np.any(s_arr > 1.0):
        raise ValueError("local coordinate s must lie in [0, 1]")

    if kind is BasisKind.POLYNOMIAL:
        if segment == 0:
            out = s_arr**3
        elif segment == 1:
            out = 1.0 + 3.0 * s_arr + 3.0 * s_arr**2 - 3.0 * s_arr**3
        elif segment == 2:
            r = 1.0 - s_arr
            out = 1.0 + 3.0 * r + 3.0 * r**2 - 3.0 * r**3
        else:
            out = (1.0 - s_arr) ** 3
    else:
        if h <= 0.0 or h >= TRIG_H_MAX:
            raise ValueError(f"invalid trigonometric spacing h={h}")
        # tau: offset from the center node in units of h
        tau = segment - 2.0 + s_arr
        sin = np.sin
        zh = math.sin(h / 2) * math.sin(h) * math.sin(1.5 * h)
        if segment == 0:
            out = sin((tau + 2.0) * h / 2) ** 3 / zh
        elif segment == 1:
            out = (
                sin((tau + 2.0) * h / 2)
                * (
                    -sin((tau + 2.0) * h / 2) * sin(tau * h / 2)
                    + sin((1.0 - tau) * h / 2) * sin((tau + 1.0) * h / 2)
                )
                + sin((2.0 - tau) * h / 2) * sin((tau + 1.0) * h / 2) ** 2
            ) / zh
        elif segment == 2:
            out = (
                sin((tau + 2.0) * h / 2) * sin((1.0 - tau) * h / 2) ** 2
                + sin((2.0 - tau) * h / 2)
                * (
                    sin((tau + 1.0) * h / 2) * sin((1.0 - tau) * h / 2)
                    + sin((2.0 - tau) * h / 2) * sin(tau * h / 2)
                )
            ) / zh
        else:
            out = sin((2.0 - tau) * h / 2) ** 3 / zh

    if np.isscalar(s) or s_arr.ndim == 0:
        return float(out)
    return out
