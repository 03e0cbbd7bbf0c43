"""Uniform grid, boundary closures and spline coefficient fields.

A :class:`SplineField` stores the coefficient vector of a cubic B-spline
expansion over a uniform grid, including one ghost coefficient beyond each
end of the interval.  The ghosts are never independent unknowns: a
homogeneous Neumann condition at each end expresses them in terms of the
two nearest interior coefficients (:func:`ghost_rule`), and every mutation
re-applies that rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .banded import BandedMatrix, solve
from .basis import BasisKind, NodalWeights, nodal_weights, segment_value

__all__ = [
    "Closure",
    "GhostRule",
    "Grid",
    "SplineField",
    "ghost_rule",
    "interpolate",
]


class Closure(Enum):
    """Homogeneous Neumann boundary condition order at an interval end."""

    NEUMANN1 = "n1"  # first derivative vanishes
    NEUMANN2 = "n2"  # second derivative vanishes


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [a, b] into n cells."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one cell, got n={self.n}")
        if not self.b > self.a:
            raise ValueError(f"empty interval [{self.a}, {self.b}]")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n + 1)


@dataclass(frozen=True)
class GhostRule:
    """Ghost coefficient as a combination of the two nearest interior ones.

    At the left end ``c_ghost = c0*c[0] + c1*c[1]``; the right end mirrors
    with the last two coefficients.
    """

    c0: float
    c1: float


def ghost_rule(closure: Closure, w: NodalWeights) -> GhostRule:
    """Eliminate a ghost coefficient through a homogeneous Neumann condition.

    NEUMANN1 (vanishing slope, ``b1*(ghost - c1) = 0``) gives ``ghost = c1``.
    NEUMANN2 (vanishing curvature, ``g1*ghost + g2*c0 + g1*c1 = 0``) gives
    ``ghost = -(g2*c0 + g1*c1)/g1``.
    """
    if closure is Closure.NEUMANN1:
        return GhostRule(0.0, 1.0)
    if w.g1 == 0.0:
        raise ZeroDivisionError("second-derivative weight g1 is zero")
    return GhostRule(-w.g2 / w.g1, -1.0)


class SplineField:
    """Spline expansion over a grid with closure-consistent ghost entries.

    ``coeffs`` has length ``n + 3``: entry 0 is the left ghost, entries
    ``1..n+1`` belong to the grid nodes, entry ``n+2`` is the right ghost.
    Fields behave as values; stepping code builds new instances rather than
    mutating shared ones.
    """

    __slots__ = ("grid", "kind", "weights", "closure", "coeffs")

    def __init__(self, grid: Grid, kind: BasisKind, closure: Closure,
                 coeffs: np.ndarray | None = None):
        self.grid = grid
        self.kind = kind
        self.weights = nodal_weights(kind, grid.h)
        self.closure = closure
        if coeffs is None:
            coeffs = np.zeros(grid.n + 3)
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (grid.n + 3,):
            raise ValueError(f"expected {grid.n + 3} coefficients, got {coeffs.shape}")
        self.coeffs = coeffs

    # -- construction helpers -------------------------------------------------

    def with_interior(self, interior: np.ndarray) -> "SplineField":
        """New field from the n+1 nodal coefficients; ghosts re-derived."""
        if interior.shape != (self.grid.n + 1,):
            raise ValueError("interior coefficient count mismatch")
        coeffs = np.empty(self.grid.n + 3)
        coeffs[1:-1] = interior
        field = SplineField(self.grid, self.kind, self.closure, coeffs)
        field.refresh_ghosts()
        return field

    def refresh_ghosts(self) -> None:
        rule = ghost_rule(self.closure, self.weights)
        c = self.coeffs
        c[0] = rule.c0 * c[1] + rule.c1 * c[2]
        c[-1] = rule.c0 * c[-2] + rule.c1 * c[-3]

    def copy(self) -> "SplineField":
        return SplineField(self.grid, self.kind, self.closure, self.coeffs.copy())

    # -- nodal stencils --------------------------------------------------------

    def nodal_values(self) -> np.ndarray:
        w, c = self.weights, self.coeffs
        return w.a1 * c[:-2] + w.a2 * c[1:-1] + w.a1 * c[2:]

    def nodal_first_derivs(self) -> np.ndarray:
        w, c = self.weights, self.coeffs
        return w.b1 * (c[:-2] - c[2:])

    def nodal_second_derivs(self) -> np.ndarray:
        w, c = self.weights, self.coeffs
        return w.g1 * c[:-2] + w.g2 * c[1:-1] + w.g1 * c[2:]

    # -- dense evaluation ------------------------------------------------------

    def evaluate(self, x) -> np.ndarray:
        """Evaluate the expansion at points ``x`` inside [a, b]."""
        g = self.grid
        x_arr = np.asarray(x, dtype=float)
        scalar = x_arr.ndim == 0
        x_arr = np.atleast_1d(x_arr)
        if np.any(x_arr < g.a - 1e-12 * (g.b - g.a)) or np.any(x_arr > g.b + 1e-12 * (g.b - g.a)):
            raise ValueError("evaluation point outside the grid interval")
        cell = np.clip(((x_arr - g.a) / g.h).astype(int), 0, g.n - 1)
        s = np.clip((x_arr - (g.a + cell * g.h)) / g.h, 0.0, 1.0)
        out = np.zeros_like(x_arr)
        # the four splines overlapping cell k are centered at nodes k-1..k+2
        for m in range(4):
            out += self.coeffs[cell + m] * segment_value(self.kind, g.h, 3 - m, s)
        return float(out[0]) if scalar else out

    def evaluate_at(self, x: float) -> float:
        return self.evaluate(float(x))


def interpolate(grid: Grid, kind: BasisKind, samples: np.ndarray,
                closure: Closure) -> SplineField:
    """Spline field whose nodal values reproduce ``samples``.

    Solves the tridiagonal collocation system obtained after folding the
    ghost coefficients into the first and last rows via the closure.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (grid.n + 1,):
        raise ValueError(f"expected {grid.n + 1} samples, got {samples.shape}")
    w = nodal_weights(kind, grid.h)
    rule = ghost_rule(closure, w)
    n = grid.n

    m = BandedMatrix.zeros(n + 1, 1, 1)
    diag = np.full(n + 1, w.a2)
    lower = np.full(n, w.a1)
    upper = np.full(n, w.a1)
    diag[0] += w.a1 * rule.c0
    upper[0] = w.a1 * (1.0 + rule.c1)
    diag[n] += w.a1 * rule.c0
    lower[n - 1] = w.a1 * (1.0 + rule.c1)
    m.set_diagonal(0, diag)
    m.set_diagonal(-1, lower)
    m.set_diagonal(1, upper)

    interior = solve(m, samples)
    field = SplineField(grid, kind, closure)
    return field.with_interior(interior)
