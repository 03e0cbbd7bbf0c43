"""Independent oracles shared by the test modules.

Everything here is deliberately written without reusing the package's own
algorithms: dense elimination instead of the banded solver, a literal
block-pattern transcription instead of the vectorized assembler, and
finite differences instead of closed-form derivatives.
"""

import numpy as np

from gardner.field import ghost_rule
from gardner.stepper import linearize


def dense_solve(a, b):
    """Gaussian elimination with partial pivoting on a dense matrix."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = len(b)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            raise ZeroDivisionError(f"zero pivot in column {k}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        for i in range(k + 1, n):
            m = a[i, k] / a[k, k]
            a[i, k + 1:] -= m * a[k, k + 1:]
            b[i] -= m * b[k]
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - a[i, i + 1:] @ x[i + 1:]) / a[i, i]
    return x


def random_banded(rng, n, kl, ku, diag_boost=3.0):
    """Dense random matrix with the given band profile, safely nonsingular."""
    dense = np.zeros((n, n))
    for d in range(-kl, ku + 1):
        vals = rng.normal(size=n - abs(d))
        if d == 0:
            vals += diag_boost * np.sign(vals)
        dense += np.diag(vals, k=d)
    return dense


def naive_assemble(state, p):
    """Literal two-row block pattern over the extended coefficient list.

    Builds the dense left and right matrices including the four ghost
    columns, folds the ghosts in by explicit column operations, and forms
    the right-hand side as a full matrix-vector product.
    """
    w = state.u.weights
    n = state.u.grid.n
    k_vals = state.u.nodal_values()
    l_vals = state.v.nodal_values()
    n_ext = 2 * (n + 3)

    def col_u(j):
        return 2 * (j + 1)

    def col_v(j):
        return 2 * (j + 1) + 1

    a_ext = np.zeros((2 * (n + 1), n_ext))
    b_ext = np.zeros((2 * (n + 1), n_ext))
    for j in range(n + 1):
        e = linearize(k_vals[j], l_vals[j], p, w)
        r = 2 * j
        a_ext[r, col_u(j - 1)] = e.eta1
        a_ext[r, col_v(j - 1)] = e.eta2
        a_ext[r, col_u(j)] = e.eta3
        a_ext[r, col_v(j)] = e.eta4
        a_ext[r, col_u(j + 1)] = e.eta5
        a_ext[r, col_v(j + 1)] = e.eta2
        b_ext[r, col_u(j - 1)] = e.eta6
        b_ext[r, col_v(j - 1)] = -e.eta2
        b_ext[r, col_u(j)] = e.eta7
        b_ext[r, col_v(j)] = -e.eta4
        b_ext[r, col_u(j + 1)] = e.eta6
        b_ext[r, col_v(j + 1)] = -e.eta2
        r = 2 * j + 1
        a_ext[r, col_u(j - 1)] = -w.b1
        a_ext[r, col_v(j - 1)] = w.a1
        a_ext[r, col_v(j)] = w.a2
        a_ext[r, col_u(j + 1)] = w.b1
        a_ext[r, col_v(j + 1)] = w.a1
        b_ext[r, col_u(j - 1)] = w.b1
        b_ext[r, col_v(j - 1)] = -w.a1
        b_ext[r, col_v(j)] = -w.a2
        b_ext[r, col_u(j + 1)] = -w.b1
        b_ext[r, col_v(j + 1)] = -w.a1

    ru = ghost_rule(state.u.closure, w)
    rv = ghost_rule(state.v.closure, w)
    a_red = a_ext[:, 2:-2].copy()
    for ghost, near, far, rule in (
        (col_u(-1), col_u(0), col_u(1), ru),
        (col_v(-1), col_v(0), col_v(1), rv),
        (col_u(n + 1), col_u(n), col_u(n - 1), ru),
        (col_v(n + 1), col_v(n), col_v(n - 1), rv),
    ):
        a_red[:, near - 2] += rule.c0 * a_ext[:, ghost]
        a_red[:, far - 2] += rule.c1 * a_ext[:, ghost]

    d_ext = np.empty(n_ext)
    d_ext[0::2] = state.u.coeffs
    d_ext[1::2] = state.v.coeffs
    rhs = b_ext @ d_ext
    rhs[0::2] += 2.0 * p.epsilon_forcing
    return a_red, rhs


def pde_residual(u, alpha, beta, mu, x, t, dx=1e-2, dt=1e-3, forcing=0.0):
    """Finite-difference residual of u_t + a*u*u_x + b*u^2*u_x + m*u_xxx - f.

    Central stencils with steps small enough that the truncation error sits
    well below 1e-6 for the solutions under test.
    """
    ut = (u(x, t + dt) - u(x, t - dt)) / (2.0 * dt)
    ux = (u(x + dx, t) - u(x - dx, t)) / (2.0 * dx)
    uxxx = (
        u(x + 2 * dx, t) - 2.0 * u(x + dx, t) + 2.0 * u(x - dx, t) - u(x - 2 * dx, t)
    ) / (2.0 * dx**3)
    val = u(x, t)
    return ut + alpha * val * ux + beta * val * val * ux + mu * uxxx - forcing
