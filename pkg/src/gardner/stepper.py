"""One time step of the linearized Crank-Nicolson collocation scheme.

The Gardner equation ``u_t + alpha*u*u_x + beta*u^2*u_x + mu*u_xxx = eps``
is integrated as the first-order system in ``u`` and ``v = u_x`` (cubic
splines have no continuous third derivative).  Time averaging over the two
levels plus a one-shot linearization of the products around the current
state yields, per node, a pair of linear equations in the interleaved
spline coefficients ``(du_0, dv_0, du_1, dv_1, ...)``; the resulting
2(N+1) system is banded with bandwidths (3, 3) after the ghost
coefficients are folded into the boundary rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import banded
from .basis import NodalWeights
from .field import SplineField, ghost_rule

__all__ = ["GardnerParams", "State", "EtaRow", "linearize", "assemble", "step"]


@dataclass(frozen=True)
class GardnerParams:
    """Equation coefficients, time step and optional constant forcing."""

    alpha: float
    beta: float
    mu: float
    dt: float
    epsilon_forcing: float = 0.0

    def __post_init__(self):
        if self.alpha == 0.0 or self.beta == 0.0 or self.mu == 0.0:
            raise ValueError("alpha, beta and mu must be nonzero")
        if self.dt <= 0.0:
            raise ValueError(f"time step must be positive, got dt={self.dt}")


@dataclass
class State:
    """Solution pair at one time level: u and its slope field v."""

    t: float
    u: SplineField
    v: SplineField

    def __post_init__(self):
        if self.u.grid != self.v.grid or self.u.kind != self.v.kind:
            raise ValueError("u and v must share one grid and one basis")


@dataclass(frozen=True)
class EtaRow:
    """Linearized momentum-row coefficients at one node.

    ``K`` and ``L`` are the nodal values of u and v around which the
    products were expanded; eta1/eta3/eta5 multiply the left/center/right
    u-coefficients at the new level, eta2/eta4 the v couplings, and
    eta6/eta7 weight the old-level u-coefficients on the right-hand side.
    """

    eta1: float
    eta2: float
    eta3: float
    eta4: float
    eta5: float
    eta6: float
    eta7: float
    K: float
    L: float


def linearize(K: float, L: float, p: GardnerParams, w: NodalWeights) -> EtaRow:
    """Momentum-row coefficients for frozen nodal values ``K`` (u) and ``L`` (v)."""
    d = 2.0 / p.dt + p.alpha * L + 2.0 * p.beta * K * L
    s = (p.alpha * K + p.beta * K * K) * w.b1
    r = 2.0 / p.dt + p.beta * K * L
    return EtaRow(
        eta1=d * w.a1 + s,
        eta2=p.mu * w.g1,
        eta3=d * w.a2,
        eta4=p.mu * w.g2,
        eta5=d * w.a1 - s,
        eta6=r * w.a1,
        eta7=r * w.a2,
        K=K,
        L=L,
    )


def assemble(state: State, p: GardnerParams) -> tuple[banded.BandedMatrix, np.ndarray]:
    """Build the banded system ``A y = rhs`` advancing ``state`` by ``p.dt``.

    Unknown ordering interleaves the two fields node by node.  The ghost
    coefficients at the new level are substituted out of the first and last
    node rows through each field's closure; the old-level ghosts enter the
    right-hand side with their stored values.
    """
    w = state.u.weights
    n = state.u.grid.n
    dim = 2 * (n + 1)

    K = state.u.nodal_values()
    L = state.v.nodal_values()
    d = 2.0 / p.dt + p.alpha * L + 2.0 * p.beta * K * L
    s = (p.alpha * K + p.beta * K * K) * w.b1
    eta1 = d * w.a1 + s
    eta3 = d * w.a2
    eta5 = d * w.a1 - s
    eta2 = p.mu * w.g1
    eta4 = p.mu * w.g2

    a = banded.BandedMatrix.zeros(dim, 3, 3)
    bands, ku = a.bands, a.ku
    jj = np.arange(1, n)  # interior nodes; boundary nodes handled below
    rows_m = 2 * jj
    # momentum rows: offsets -2..+3 hold (du_{j-1}, dv_{j-1}, du_j, dv_j, du_{j+1}, dv_{j+1})
    bands[ku + 2, rows_m - 2] = eta1[jj]
    bands[ku + 1, rows_m - 1] = eta2
    bands[ku + 0, rows_m] = eta3[jj]
    bands[ku - 1, rows_m + 1] = eta4
    bands[ku - 2, rows_m + 2] = eta5[jj]
    bands[ku - 3, rows_m + 3] = eta2
    # slope-constraint rows at offsets -3..+2
    rows_c = 2 * jj + 1
    bands[ku + 3, rows_c - 3] = -w.b1
    bands[ku + 2, rows_c - 2] = w.a1
    bands[ku + 0, rows_c] = w.a2
    bands[ku - 1, rows_c + 1] = w.b1
    bands[ku - 2, rows_c + 2] = w.a1

    ru = ghost_rule(state.u.closure, w)
    rv = ghost_rule(state.v.closure, w)
    # left end: ghost = c0*du_0 + c1*du_1 (same pattern for v)
    a.set(0, 0, eta3[0] + eta1[0] * ru.c0)
    a.set(0, 1, eta4 + eta2 * rv.c0)
    a.set(0, 2, eta5[0] + eta1[0] * ru.c1)
    a.set(0, 3, eta2 + eta2 * rv.c1)
    a.set(1, 0, -w.b1 * ru.c0)
    a.set(1, 1, w.a2 + w.a1 * rv.c0)
    a.set(1, 2, w.b1 - w.b1 * ru.c1)
    a.set(1, 3, w.a1 + w.a1 * rv.c1)
    # right end mirrors with the last two nodes
    rm, rc = 2 * n, 2 * n + 1
    a.set(rm, rm - 2, eta1[n] + eta5[n] * ru.c1)
    a.set(rm, rm - 1, eta2 + eta2 * rv.c1)
    a.set(rm, rm, eta3[n] + eta5[n] * ru.c0)
    a.set(rm, rm + 1, eta4 + eta2 * rv.c0)
    a.set(rc, rm - 2, -w.b1 + w.b1 * ru.c1)
    a.set(rc, rm - 1, w.a1 + w.a1 * rv.c1)
    a.set(rc, rm, w.b1 * ru.c0)
    a.set(rc, rm + 1, w.a2 + w.a1 * rv.c0)

    # right-hand side from the old level, stored ghosts included
    eta6 = (2.0 / p.dt + p.beta * K * L) * w.a1
    eta7 = (2.0 / p.dt + p.beta * K * L) * w.a2
    cu, cv = state.u.coeffs, state.v.coeffs
    rhs = np.empty(dim)
    rhs[0::2] = (
        eta6 * (cu[:-2] + cu[2:])
        + eta7 * cu[1:-1]
        - eta2 * (cv[:-2] + cv[2:])
        - eta4 * cv[1:-1]
        + 2.0 * p.epsilon_forcing
    )
    rhs[1::2] = w.b1 * (cu[:-2] - cu[2:]) - w.a1 * (cv[:-2] + cv[2:]) - w.a2 * cv[1:-1]
    return a, rhs


def step(state: State, p: GardnerParams) -> State:
    """Advance one time step: assemble, solve, refresh ghosts."""
    a, rhs = assemble(state, p)
    y = banded.solve(a, rhs)
    u_new = state.u.with_interior(y[0::2])
    v_new = state.v.with_interior(y[1::2])
    return State(t=state.t + p.dt, u=u_new, v=v_new)
