"""Closed-form hyperbolic trigonometry for pants and collars.

All lengths are hyperbolic lengths. Inputs are accepted on (0, MAX_LENGTH];
anything else raises :class:`~chainsurf.errors.DomainError`.

Collar coordinates are ``(rho, t)`` in ``[-w, w] x R/Z`` with metric
``drho^2 + l^2 cosh^2(rho) dt^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError

MAX_LENGTH = 1.0e4
PANTS_AREA = 2.0 * math.pi

_LN2 = math.log(2.0)


def _check_length(x, name="length"):
    try:
        x = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {x!r}") from None
    if not math.isfinite(x) or x <= 0.0 or x > MAX_LENGTH:
        raise DomainError(f"{name} must lie in (0, {MAX_LENGTH:g}], got {x!r}")
    return x


def inv_sinh(x: float) -> float:
    """1/sinh(x) for x > 0 without overflow."""
    if x > 20.0:
        return 2.0 * math.exp(-x) / -math.expm1(-2.0 * x)
    return 1.0 / math.sinh(x)


def _log_sinh(x: float) -> float:
    return x - _LN2 + math.log(-math.expm1(-2.0 * x))


def _log_cosh(x: float) -> float:
    return x - _LN2 + math.log1p(math.exp(-2.0 * x))


def _asinh_from_log(log_q: float) -> float:
    # asinh(q) = log q + log(1 + sqrt(1 + q^-2)), valid for huge q
    inv_q2 = math.exp(-2.0 * log_q)
    return log_q + math.log1p(math.sqrt(1.0 + inv_q2))


def compute_d(epsilon: float) -> float:
    """Distance between two distinct cuffs of the pants with all cuffs ``epsilon``.

    Underflows to 0.0 once ``epsilon`` exceeds roughly 2980 (d ~ 2 exp(-epsilon/4)).
    """
    eps = _check_length(epsilon, "epsilon")
    return 2.0 * math.asinh(0.5 * inv_sinh(0.25 * eps))


def log_d(epsilon: float) -> float:
    """Natural log of :func:`compute_d`, finite on the whole valid range."""
    eps = _check_length(epsilon, "epsilon")
    x = 0.25 * eps
    if x < 20.0:
        return math.log(compute_d(eps))
    # d = 2 asinh(s), s = 1/(2 sinh x) tiny; asinh(s) = s (1 - s^2/6 + ...)
    log_s = -math.log(2.0) - _log_sinh(x)
    s = math.exp(log_s)
    return _LN2 + log_s + math.log1p(-s * s / 6.0)


def compute_h(epsilon: float) -> float:
    """Altitude between opposite sides of the right-angled hexagon (half of tau)."""
    eps = _check_length(epsilon, "epsilon")
    if eps < 80.0:
        q = math.cosh(0.5 * eps) / math.sinh(0.25 * eps)
        return math.asinh(q)
    return _asinh_from_log(_log_cosh(0.5 * eps) - _log_sinh(0.25 * eps))


def compute_tau(epsilon: float) -> float:
    """Shortest arc returning to the same cuff; exactly ``2 * compute_h``."""
    return 2.0 * compute_h(epsilon)


def collar_half_width(length: float) -> float:
    """w(l) = arcsinh(1 / sinh(l/2))."""
    ell = _check_length(length)
    return math.asinh(inv_sinh(0.5 * ell))


def collar_area(length: float) -> float:
    """Area 2l/sinh(l/2) of the standard collar; always below 4."""
    ell = _check_length(length)
    return 2.0 * ell * inv_sinh(0.5 * ell)


def half_collar_area(length: float) -> float:
    return 0.5 * collar_area(length)


def collar_angle(length: float) -> float:
    """arctan(tanh(w/2)) for the standard collar; underflows to 0 near l = 1490."""
    return math.atan(math.tanh(0.5 * collar_half_width(length)))


def collar_conductance(length: float) -> float:
    """Minimal Dirichlet energy across a collar per unit squared jump: l / (4 arctan(tanh(w/2))).

    Grows like l exp(l/2) / 2 and overflows float64 beyond l of about 1400.
    """
    ell = _check_length(length)
    angle = collar_angle(ell)
    value = ell / (4.0 * angle) if angle > 0.0 else math.inf
    if not math.isfinite(value):
        raise NumericalError(f"collar conductance overflows float64 at length {ell!r}")
    return value


@dataclass(frozen=True)
class PantsGeometry:
    epsilon: float
    d: float
    tau: float
    h: float
    half_width: float
    collar_area: float
    pants_area: float = PANTS_AREA


def pants_geometry(epsilon: float) -> PantsGeometry:
    eps = _check_length(epsilon, "epsilon")
    h = compute_h(eps)
    return PantsGeometry(
        epsilon=eps,
        d=compute_d(eps),
        tau=2.0 * h,
        h=h,
        half_width=collar_half_width(eps),
        collar_area=collar_area(eps),
    )


def _adaptive_simpson(f, a, b, tol, max_depth=48, max_evals=1_000_000):
    """Adaptive Simpson with Richardson correction; each half gets half the tolerance."""
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    evals = 3
    while stack:
        a, b, fa, fm, fb, whole, tol, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        evals += 2
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth or evals > max_evals:
            raise NumericalError(
                f"adaptive Simpson did not converge on [{a}, {b}] (depth {depth}, {evals} evaluations)"
            )
        stack.append((a, m, fa, flm, fm, left, 0.5 * tol, depth + 1))
        stack.append((m, b, fm, frm, fb, right, 0.5 * tol, depth + 1))
    return total


def collar_area_quadrature(length: float, tol: float = 1e-10) -> float:
    """Collar area by integrating the volume element l cosh(rho) over the collar.

    The integrand does not depend on t, so the t-integral over [0, 1] is exact.
    ``tol`` is relative to the area.
    """
    ell = _check_length(length)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    w = collar_half_width(ell)
    # rough scale for an absolute target; conservative by a factor 4
    scale = 2.0 * ell * w
    return _adaptive_simpson(lambda r: ell * math.cosh(r), -w, w, 0.25 * tol * scale)


@dataclass(frozen=True)
class CollarProfile:
    """Constant boundary data ``a`` at rho = -w and ``b`` at rho = +w on a collar."""

    length: float
    half_width: float
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        for name in ("length", "half_width"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
        for name in ("a", "b"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"boundary value {name} must be finite")

    @classmethod
    def standard(cls, length, a=0.0, b=1.0):
        """Profile on the full standard collar of a geodesic of the given length."""
        return cls(float(length), collar_half_width(length), float(a), float(b))


def _atan_tanh_half(w):
    return math.atan(math.tanh(0.5 * w))


def collar_energy_min(profile: CollarProfile) -> float:
    """(a-b)^2 l / (4 arctan(tanh(w/2)))."""
    p = profile
    return (p.a - p.b) ** 2 * p.length / (4.0 * _atan_tanh_half(p.half_width))


def harmonic_profile(profile: CollarProfile, rho):
    """Energy-minimizing extension of the boundary data, evaluated at ``rho``.

    Accepts a scalar or an array; values outside [-w, w] raise DomainError.
    """
    p = profile
    r = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(np.abs(r) > p.half_width):
        raise DomainError(f"rho must lie in [-{p.half_width}, {p.half_width}]")
    slope = (p.b - p.a) / (2.0 * _atan_tanh_half(p.half_width))
    out = 0.5 * (p.a + p.b) + slope * np.arctan(np.tanh(0.5 * r))
    if out.ndim == 0:
        return float(out)
    return out


def solve_tridiagonal(lower, diag, upper, rhs):
    """Thomas algorithm for a tridiagonal system.

    ``lower[i]`` multiplies x[i] in row i+1, ``upper[i]`` multiplies x[i+1] in row i.
    """
    n = len(diag)
    c = np.empty(n)
    d = np.empty(n)
    beta = diag[0]
    if beta == 0.0:
        raise NumericalError("singular tridiagonal system")
    c[0] = upper[0] / beta if n > 1 else 0.0
    d[0] = rhs[0] / beta
    for i in range(1, n):
        beta = diag[i] - lower[i - 1] * c[i - 1]
        if beta == 0.0:
            raise NumericalError("singular tridiagonal system")
        c[i] = upper[i] / beta if i < n - 1 else 0.0
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / beta
    x = np.empty(n)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def _collar_grid(profile, grid_size):
    if int(grid_size) != grid_size or grid_size < 16:
        raise DomainError(f"grid_size must be an integer >= 16, got {grid_size!r}")
    n = int(grid_size)
    w = profile.half_width
    step = 2.0 * w / n
    mid = -w + step * (np.arange(n) + 0.5)
    # cell conductances: l cosh(rho_{i+1/2}) / step
    cond = profile.length * np.cosh(mid) / step
    nodes = np.linspace(-w, w, n + 1)
    return nodes, cond


def discrete_collar_energy(profile: CollarProfile, values) -> float:
    """Midpoint-rule Dirichlet energy of nodal ``values`` on the uniform collar grid."""
    values = np.asarray(values, dtype=float)
    _, cond = _collar_grid(profile, len(values) - 1)
    return float(np.sum(cond * np.diff(values) ** 2))


def collar_energy_bruteforce(profile: CollarProfile, grid_size: int = 1024) -> float:
    """Minimize the discretized rotationally symmetric energy with clamped ends.

    Independent check on :func:`collar_energy_min`; converges at O(grid_size^-2).
    """
    p = profile
    nodes, cond = _collar_grid(p, grid_size)
    if p.a == p.b:
        return 0.0
    # interior unknowns f_1..f_{n-1}
    diag = cond[:-1] + cond[1:]
    off = -cond[1:-1]
    rhs = np.zeros(len(diag))
    rhs[0] += cond[0] * p.a
    rhs[-1] += cond[-1] * p.b
    interior = solve_tridiagonal(off, diag, off, rhs)
    f = np.concatenate(([p.a], interior, [p.b]))
    return float(np.sum(cond * np.diff(f) ** 2))


def disk_isoperimetric(r: float):
    """(area, perimeter) of a hyperbolic disk of radius r; area <= perimeter."""
    if not (math.isfinite(r) and 0 < r <= 700.0):
        raise DomainError(f"radius must lie in (0, 700], got {r!r}")
    # area = perimeter * tanh(r/2) keeps area <= perimeter after rounding
    perimeter = 2.0 * math.pi * math.sinh(r)
    return perimeter * math.tanh(0.5 * r), perimeter
