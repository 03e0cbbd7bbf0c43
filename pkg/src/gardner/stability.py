"""Fourier (Von Neumann) stability of the linearized scheme.

A single mode ``c_j^n = C * xi^n * exp(i*j*phi)`` is inserted into the
frozen-coefficient scheme, with the advective factor ``u + u^2`` replaced
by a constant ``eps``.  The momentum equation and the slope constraint
each yield an amplification factor; the slope constraint relates the two
mode amplitudes, and with that relation both factors have modulus one for
every mode angle, step size and spacing, so the scheme amplifies nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .basis import BasisKind, NodalWeights, nodal_weights

__all__ = [
    "FourierProbe",
    "StabilityReport",
    "coupled_spectral_radius",
    "rho_constraint",
    "rho_momentum",
    "stability_sweep",
]


@dataclass(frozen=True)
class FourierProbe:
    """One Fourier mode of the frozen-coefficient scheme.

    ``phi`` is the mode angle (wavenumber times spacing), ``eps_frozen``
    the frozen advective factor, ``mu`` the dispersion coefficient and
    ``dt`` the time step; ``weights`` supplies the basis stencil.
    """

    phi: float
    eps_frozen: float
    mu: float
    dt: float
    weights: NodalWeights


def _symbols(probe: FourierProbe) -> tuple[float, float, float]:
    w = probe.weights
    p = 2.0 * w.a1 * math.cos(probe.phi) + w.a2  # value stencil symbol
    g = 2.0 * w.g1 * math.cos(probe.phi) + w.g2  # curvature stencil symbol
    b = w.b1 * math.sin(probe.phi)  # slope stencil symbol / (-2i)
    return p, g, b


def rho_momentum(probe: FourierProbe) -> float:
    """Modulus of the momentum-equation amplification factor.

    The slope-constraint relation fixes the v-mode amplitude at
    ``-2i*b1*sin(phi)/p`` times the u-mode amplitude; with that ratio the
    numerator and denominator are complex conjugates, so the modulus is
    one up to rounding.
    """
    p, g, b = _symbols(probe)
    k1 = probe.dt * probe.eps_frozen * b
    if p == 0.0:
        if k1 == 0.0:
            raise ZeroDivisionError("degenerate mode: vanishing symbol and no advection")
        ratio = 0.0j
    else:
        ratio = -2.0j * b / p
    half_mu = 0.5 * probe.dt * probe.mu
    m1 = p - half_mu * ratio * g
    m2 = p + half_mu * ratio * g
    return abs((m1 + 1j * k1) / (m2 - 1j * k1))


def rho_constraint(probe: FourierProbe) -> float:
    """Modulus of the slope-constraint amplification factor (exactly one).

    Numerator and denominator are negatives of each other for every probe.
    """
    p, _, b = _symbols(probe)
    num = p + 2.0j * b
    return abs(num / (-num))


def coupled_spectral_radius(probe: FourierProbe) -> float:
    """Spectral radius of the full per-mode 2x2 update matrix.

    Goes beyond the two scalar factors: both eigenvalues of the coupled
    update lie on the unit circle, confirming marginal stability.
    """
    p, g, b = _symbols(probe)
    eb = probe.dt * probe.eps_frozen * b
    half_mu = 0.5 * probe.dt * probe.mu
    lhs = np.array(
        [[p - 1j * eb, half_mu * g], [-2j * b, -p]], dtype=complex
    )
    rhs = np.array(
        [[p + 1j * eb, -half_mu * g], [2j * b, p]], dtype=complex
    )
    step_matrix = np.linalg.solve(lhs, rhs)
    return float(np.max(np.abs(np.linalg.eigvals(step_matrix))))


@dataclass
class StabilityReport:
    """Sweep results: one row per probe plus maxima and any violations."""

    rows: list[tuple[float, float, float, float, float, float]]
    max_rho_momentum: float
    max_rho_constraint: float
    violations: list[tuple[float, float, float, float, float]]


DEFAULT_PHI_COUNT = 64
DEFAULT_EPS = (0.0, 0.5, 1.0, 1.5, 2.0)
DEFAULT_DT = (0.01, 0.1)
DEFAULT_H = (0.1, 0.5)


def stability_sweep(
    kind: BasisKind,
    phis: Sequence[float] | None = None,
    eps_values: Iterable[float] = DEFAULT_EPS,
    dts: Iterable[float] = DEFAULT_DT,
    hs: Iterable[float] = DEFAULT_H,
    mu: float = 1.0,
    tolerance: float = 1e-10,
) -> StabilityReport:
    """Evaluate both amplification factors over a parameter grid.

    Rows are ``(phi, eps, dt, h, rho_momentum, rho_constraint)``; probes
    with ``|rho| > 1 + tolerance`` are listed as violations, not raised.
    """
    if phis is None:
        phis = np.linspace(0.0, 2.0 * math.pi, DEFAULT_PHI_COUNT + 2)[1:-1]
    rows = []
    violations = []
    max_m = 0.0
    max_c = 0.0
    for h in hs:
        w = nodal_weights(kind, h)
        for dt in dts:
            for eps in eps_values:
                for phi in phis:
                    probe = FourierProbe(phi, eps, mu, dt, w)
                    rm = rho_momentum(probe)
                    rc = rho_constraint(probe)
                    rows.append((phi, eps, dt, h, rm, rc))
                    max_m = max(max_m, rm)
                    max_c = max(max_c, rc)
                    if rm > 1.0 + tolerance or rc > 1.0 + tolerance:
                        violations.append((phi, eps, dt, h, max(rm, rc)))
    return StabilityReport(rows, max_m, max_c, violations)
