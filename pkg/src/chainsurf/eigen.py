"""Symmetric eigenvalue kernels: Sturm-sequence bisection and cyclic Jacobi."""
from __future__ import annotations

import math

import numpy as np

from .errors import NumericalError

BISECTION_REL_WIDTH = 1e-14
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def sturm_count(diag, off_sq, x, pivmin=1e-300) -> int:
    """Number of eigenvalues strictly below ``x`` of the symmetric tridiagonal matrix.

    ``off_sq`` holds the squared off-diagonal entries.
    """
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, len(diag)):
        q = diag[i] - x - off_sq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def tridiagonal_eigs(diag, off, count=None, rel_width=BISECTION_REL_WIDTH):
    """Smallest ``count`` eigenvalues of a symmetric tridiagonal matrix by bisection."""
    d = [float(x) for x in diag]
    e = [float(x) for x in off]
    n = len(d)
    if len(e) != n - 1:
        raise ValueError("off-diagonal must have length n - 1")
    count = n if count is None else int(count)
    e_sq = [x * x for x in e]
    radii = [0.0] * n
    for i, x in enumerate(e):
        radii[i] += abs(x)
        radii[i + 1] += abs(x)
    lo = min(di - ri for di, ri in zip(d, radii))
    hi = max(di + ri for di, ri in zip(d, radii))
    scale = max(abs(lo), abs(hi), 1e-300)
    width = rel_width * scale
    pivmin = 1e-300 * max(1.0, max(e_sq, default=1.0))
    out = []
    left = lo
    for j in range(count):
        a, b = left, hi
        for _ in range(400):
            if b - a <= width:
                break
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if sturm_count(d, e_sq, mid, pivmin) > j:
                b = mid
            else:
                a = mid
        lam = 0.5 * (a + b)
        out.append(lam)
        left = a
    return np.array(out)


def jacobi_eigs(matrix, tol=JACOBI_OFFDIAG_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """All eigenvalues (ascending) of a dense symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = max(np.abs(a).max(), 1e-300)
    thresh = tol * scale
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        if np.abs(a[iu]).max() < thresh:
            return np.sort(a.diagonal())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 0.01 * thresh:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    if np.abs(a[iu]).max() < thresh:
        return np.sort(a.diagonal())
    raise NumericalError(f"cyclic Jacobi did not converge in {max_sweeps} sweeps")
