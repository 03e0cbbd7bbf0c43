"""General banded matrices with an LU solver using partial pivoting.

Storage is diagonal-ordered: ``bands[ku + i - j, j]`` holds entry ``(i, j)``
for ``-ku <= i - j <= kl``.  The factorization works on a private row-window
copy widened by ``kl`` superdiagonals, the fill-in bound for partial
pivoting on a band.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["BandedMatrix", "SingularMatrixError", "multiply", "solve"]

# a pivot this small relative to the largest initial band entry means the
# elimination has run out of information
PIVOT_RTOL = 1e-14


class SingularMatrixError(ValueError):
    """Raised when elimination encounters a negligible pivot."""


@dataclass
class BandedMatrix:
    """Real banded matrix of order ``dim`` with bandwidths ``(kl, ku)``."""

    dim: int
    kl: int
    ku: int
    bands: np.ndarray = field(repr=False)

    @classmethod
    def zeros(cls, dim: int, kl: int, ku: int) -> "BandedMatrix":
        if dim < 1 or kl < 0 or ku < 0:
            raise ValueError("need dim >= 1 and nonnegative bandwidths")
        return cls(dim, kl, ku, np.zeros((kl + ku + 1, dim)))

    @classmethod
    def from_dense(cls, a: np.ndarray, kl: int, ku: int) -> "BandedMatrix":
        a = np.asarray(a, dtype=float)
        dim = a.shape[0]
        if a.shape != (dim, dim):
            raise ValueError("dense input must be square")
        out = np.abs(a).copy()
        for d in range(-dim + 1, dim):
            if -kl <= d <= ku:
                np.fill_diagonal(out[max(0, -d):, max(0, d):], 0.0)
        if np.any(out != 0.0):
            raise ValueError("dense matrix has entries outside the stated band")
        m = cls.zeros(dim, kl, ku)
        for d in range(-kl, ku + 1):
            m.set_diagonal(d, np.diagonal(a, offset=d))
        return m

    def _check_index(self, i: int, j: int) -> None:
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(f"index ({i}, {j}) outside a {self.dim}x{self.dim} matrix")
        if not (-self.ku <= i - j <= self.kl):
            raise IndexError(f"entry ({i}, {j}) lies outside the band")

    def get(self, i: int, j: int) -> float:
        if not (0 <= i < self.dim and 0 <= j < self.dim):
            raise IndexError(f"index ({i}, {j}) outside a {self.dim}x{self.dim} matrix")
        if not (-self.ku <= i - j <= self.kl):
            return 0.0
        return float(self.bands[self.ku + i - j, j])

    def set(self, i: int, j: int, value: float) -> None:
        self._check_index(i, j)
        self.bands[self.ku + i - j, j] = value

    def add(self, i: int, j: int, value: float) -> None:
        self._check_index(i, j)
        self.bands[self.ku + i - j, j] += value

    def set_diagonal(self, offset: int, values: np.ndarray) -> None:
        """Fill diagonal ``j - i = offset`` (length ``dim - |offset|``)."""
        if not (-self.kl <= offset <= self.ku):
            raise IndexError(f"diagonal {offset} outside band ({self.kl}, {self.ku})")
        values = np.asarray(values, dtype=float)
        if values.shape != (self.dim - abs(offset),):
            raise ValueError("diagonal length mismatch")
        r = self.ku - offset
        if offset >= 0:
            self.bands[r, offset:] = values
        else:
            self.bands[r, : self.dim + offset] = values

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.dim, self.dim))
        for d in range(-self.kl, self.ku + 1):
            r = self.ku - d
            if d >= 0:
                idx = np.arange(self.dim - d)
                a[idx, idx + d] = self.bands[r, d:]
            else:
                idx = np.arange(self.dim + d)
                a[idx - d, idx] = self.bands[r, : self.dim + d]
        return a


def multiply(m: BandedMatrix, x: np.ndarray) -> np.ndarray:
    """Band-aware matrix-vector product ``m @ x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (m.dim,):
        raise ValueError(f"vector length {x.shape} does not match dim {m.dim}")
    y = np.zeros(m.dim)
    for d in range(-m.kl, m.ku + 1):
        r = m.ku - d
        if d >= 0:
            y[: m.dim - d] += m.bands[r, d:] * x[d:]
        else:
            y[-d:] += m.bands[r, : m.dim + d] * x[: m.dim + d]
    return y


def _row_windows(m: BandedMatrix) -> np.ndarray:
    """Row-major working copy: ``rw[i, j - i + kl]`` is entry ``(i, j)``.

    Width ``2*kl + ku + 1`` leaves room for the fill-in caused by row
    interchanges.
    """
    n, kl, ku = m.dim, m.kl, m.ku
    rw = np.zeros((n, 2 * kl + ku + 1))
    for d in range(-kl, ku + 1):
        r = ku - d
        if d >= 0:
            rows = np.arange(n - d)
            rw[rows, d + kl] = m.bands[r, d:]
        else:
            rows = np.arange(-d, n)
            rw[rows, d + kl] = m.bands[r, : n + d]
    return rw


def solve(m: BandedMatrix, rhs: np.ndarray) -> np.ndarray:
    """Solve ``m @ x = rhs`` by banded LU with partial pivoting.

    Raises
    ------
    SingularMatrixError
        When every pivot candidate in some column falls below
        ``1e-14`` times the largest initial band entry.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (m.dim,):
        raise ValueError(f"rhs length {rhs.shape} does not match dim {m.dim}")
    n, kl, ku = m.dim, m.kl, m.ku
    width = kl + ku  # active row width beyond the pivot after interchanges
    tol = PIVOT_RTOL * np.max(np.abs(m.bands)) if m.bands.size else 0.0

    rw = _row_windows(m)
    piv = np.arange(n)
    y = rhs.copy()

    for k in range(n):
        iend = min(k + kl, n - 1)
        rows = np.arange(k, iend + 1)
        col = rw[rows, k - rows + kl]
        p = k + int(np.argmax(np.abs(col)))
        if abs(rw[p, k - p + kl]) <= tol:
            raise SingularMatrixError(f"negligible pivot in column {k}")
        piv[k] = p
        jmax = min(k + width, n - 1)
        w = jmax - k + 1
        if p != k:
            tk = slice(kl, kl + w)
            tp = slice(k - p + kl, k - p + kl + w)
            tmp = rw[k, tk].copy()
            rw[k, tk] = rw[p, tp]
            rw[p, tp] = tmp
        pivot = rw[k, kl]
        for i in range(k + 1, iend + 1):
            t0 = k - i + kl
            mult = rw[i, t0] / pivot
            rw[i, t0] = mult
            if w > 1:
                rw[i, t0 + 1 : t0 + w] -= mult * rw[k, kl + 1 : kl + w]

    # forward pass: interleave interchanges and multiplier application
    for k in range(n):
        p = piv[k]
        if p != k:
            y[k], y[p] = y[p], y[k]
        iend = min(k + kl, n - 1)
        for i in range(k + 1, iend + 1):
            y[i] -= rw[i, k - i + kl] * y[k]

    # back substitution on U
    x = y
    for i in range(n - 1, -1, -1):
        jmax = min(i + width, n - 1)
        if jmax > i:
            x[i] -= rw[i, kl + 1 : kl + 1 + (jmax - i)] @ x[i + 1 : jmax + 1]
        x[i] /= rw[i, kl]
    return x
