"""Numerical kernels shared by the physics modules.

Three tools live here: a globally adaptive Gauss-Kronrod integrator, a
grid-plus-golden-section search for the maximum of |f|, and a Bessel J0
implementation with an independent integral-representation oracle.  All are
self-contained so the physics layers above carry no solver dependencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureNoConvergence

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
# Positive abscissae in descending order, zero last; weights aligned.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node layout in ascending order, with embedded Gauss weights
# (zero at Kronrod-only nodes) so both rules come from one evaluation.
_NODES = np.concatenate((-_XGK[:7], _XGK[7:8], _XGK[6::-1]))
_WK_FULL = np.concatenate((_WGK[:7], _WGK[7:8], _WGK[6::-1]))
_WG_FULL = np.zeros(15)
for _j in (1, 3, 5):
    _WG_FULL[_j] = _WG[(_j - 1) // 2]
    _WG_FULL[14 - _j] = _WG[(_j - 1) // 2]
_WG_FULL[7] = _WG[3]
del _j

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with its error estimate and evaluation count."""

    value: float
    abs_error: float
    evaluations: int

    def __post_init__(self) -> None:
        if self.abs_error < 0.0:
            raise ValueError("abs_error must be nonnegative")
        if self.evaluations < 0:
            raise ValueError("evaluations must be nonnegative")


@dataclass(frozen=True)
class MaxResult:
    """Location and value of the maximum of |f|, with the search bracket."""

    argmax: float
    max_abs: float
    bracket: tuple[float, float]

    def __post_init__(self) -> None:
        if self.max_abs < 0.0:
            raise ValueError("max_abs must be nonnegative")
        if not self.bracket[0] <= self.argmax <= self.bracket[1]:
            raise ValueError("argmax must lie inside the bracket")


def _eval_panels(f: Callable[[np.ndarray], np.ndarray],
                 a: np.ndarray, b: np.ndarray):
    """Apply the G7/K15 pair to every panel [a_i, b_i] in one f call.

    Returns per-panel Kronrod values and error estimates.  The estimate is
    the Gauss/Kronrod discrepancy rescaled by the panel's deviation integral
    so it degrades gracefully on rough integrands, with a floor of
    50*eps*resabs against unwarranted optimism.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.reshape(-1)), dtype=float).reshape(x.shape)
    resk = fx @ _WK_FULL
    resg = fx @ _WG_FULL
    resabs = np.abs(fx) @ _WK_FULL
    resasc = np.abs(fx - 0.5 * resk[:, None]) @ _WK_FULL
    value = resk * h
    scaled_abs = resabs * h
    scaled_asc = resasc * h
    raw = np.abs((resk - resg) * h)
    with np.errstate(divide="ignore", invalid="ignore"):
        shrunk = scaled_asc * np.minimum(1.0, (200.0 * raw / scaled_asc) ** 1.5)
    err = np.where((scaled_asc > 0.0) & (raw > 0.0), shrunk, raw)
    err = np.maximum(err, 50.0 * _EPS * scaled_abs)
    return value, err, fx.size


def integrate(f: Callable[[np.ndarray], np.ndarray],
              lo: float, hi: float,
              tol: float = 1e-9,
              max_evaluations: int = 1_000_000) -> QuadratureResult:
    """Integrate f over [lo, hi] to absolute tolerance tol.

    f must accept a 1-d ndarray of abscissae and return matching values;
    every refinement round evaluates all flagged panels through a single
    call, so vectorized integrands pay one numpy dispatch per round rather
    than one per panel.  Panels whose error exceeds their share of the
    budget are bisected until the summed estimate drops below tol.

    Raises QuadratureNoConvergence when the evaluation budget runs out or a
    panel becomes too narrow to split in floating point, and ValueError for
    bad limits, a nonpositive tolerance, or a non-finite integrand value.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("integration endpoints must be finite")
    if not lo < hi:
        raise ValueError("integration requires lo < hi")
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    edges = np.linspace(lo, hi, 9)
    a, b = edges[:-1], edges[1:]
    values, errors, evaluations = _eval_panels(f, a, b)
    if not np.all(np.isfinite(values)):
        raise ValueError("integrand produced non-finite values")

    while float(np.sum(errors)) > tol:
        split = errors > tol / (2.0 * a.size)
        width_floor = 16.0 * _EPS * np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
        if np.any(split & ((b - a) <= width_floor)):
            raise QuadratureNoConvergence(
                f"panel too narrow to refine below tol={tol:g}")
        n_split = int(np.count_nonzero(split))
        if evaluations + 30 * n_split > max_evaluations:
            raise QuadratureNoConvergence(
                f"budget of {max_evaluations} evaluations exhausted with "
                f"error estimate {float(np.sum(errors)):.3e} above tol={tol:g}")
        ka, kb = a[split], b[split]
        mid = 0.5 * (ka + kb)
        new_v, new_e, used = _eval_panels(
            f, np.concatenate((ka, mid)), np.concatenate((mid, kb)))
        if not np.all(np.isfinite(new_v)):
            raise ValueError("integrand produced non-finite values")
        evaluations += used
        a = np.concatenate((a[~split], ka, mid))
        b = np.concatenate((b[~split], mid, kb))
        values = np.concatenate((values[~split], new_v))
        errors = np.concatenate((errors[~split], new_e))

    order = np.argsort(a, kind="stable")
    return QuadratureResult(float(np.sum(values[order])),
                            float(np.sum(errors[order])),
                            evaluations)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def maximize_abs(f: Callable[[float], float],
                 lo: float, hi: float,
                 grid_n: int = 1024,
                 tol: float = 1e-10) -> MaxResult:
    """Locate the global maximum of |f| on [lo, hi].

    A uniform scan of grid_n points picks the basin (the first of equal
    maxima wins, so the smallest argmax is preferred), then golden-section
    refinement narrows the bracket of grid neighbours to width tol.  The
    caller must choose grid_n fine enough that no oscillation of f slips
    between grid points.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError("need finite bounds with lo <= hi")
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return MaxResult(lo, abs(float(f(lo))), (lo, lo))

    xs = np.linspace(lo, hi, grid_n)
    vals = np.fromiter((abs(float(f(x))) for x in xs), dtype=float, count=grid_n)
    i = int(np.argmax(vals))
    bl = float(xs[max(i - 1, 0)])
    br = float(xs[min(i + 1, grid_n - 1)])
    grid_x, grid_v = float(xs[i]), float(vals[i])

    a, b = bl, br
    h = b - a
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc = abs(float(f(c)))
    yd = abs(float(f(d)))
    while h > tol:
        if yc >= yd:  # ties keep the left interval: smaller-x bias
            b, d, yd = d, c, yc
            h *= _INV_PHI
            c = a + _INV_PHI2 * h
            yc = abs(float(f(c)))
        else:
            a, c, yc = c, d, yd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            yd = abs(float(f(d)))

    candidates = ((grid_v, grid_x), (yc, float(c)), (yd, float(d)))
    top = max(v for v, _ in candidates)
    arg = min(x for v, x in candidates if v == top)
    return MaxResult(arg, top, (bl, br))


_SERIES_CUTOFF = 12.0


def _kahan_add(total: np.ndarray, comp: np.ndarray, term: np.ndarray):
    """One compensated-summation step; returns updated (total, comp)."""
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def _j0_series(ax: np.ndarray) -> np.ndarray:
    """Ascending power series for J0, |x| below the cutoff.

    Terms alternate and grow before they shrink, so partial sums are
    accumulated with compensated summation to keep the cancellation error
    near machine precision even at the upper end of the range.
    """
    q = -0.25 * ax * ax
    term = np.ones_like(ax)
    total = np.ones_like(ax)
    comp = np.zeros_like(ax)
    for m in range(1, 80):
        term = term * q / (m * m)
        total, comp = _kahan_add(total, comp, term)
        if not np.any(np.abs(term) >= 1e-17):
            break
    return total


def _j0_asymptotic(ax: np.ndarray) -> np.ndarray:
    """Hankel expansion for J0 at large argument.

    The joint coefficient sequence a_k / x^k is summed to its smallest term
    per element (optimal truncation); even k feed the cosine series, odd k
    the sine series.
    """
    inv = 1.0 / ax
    w = ax - 0.25 * math.pi
    p_tot = np.ones_like(ax)
    p_comp = np.zeros_like(ax)
    q_tot = np.zeros_like(ax)
    q_comp = np.zeros_like(ax)
    term = np.ones_like(ax)
    prev_mag = np.full_like(ax, np.inf)
    active = np.ones(ax.shape, dtype=bool)
    for k in range(1, 60):
        term = term * (-((2 * k - 1) ** 2) / (8.0 * k)) * inv
        mag = np.abs(term)
        active &= mag < prev_mag
        if not np.any(active):
            break
        prev_mag = np.where(active, mag, prev_mag)
        contrib = np.where(active, term, 0.0)
        if k % 2:
            sign = -1.0 if ((k - 1) // 2) % 2 else 1.0
            q_tot, q_comp = _kahan_add(q_tot, q_comp, sign * contrib)
        else:
            sign = -1.0 if (k // 2) % 2 else 1.0
            p_tot, p_comp = _kahan_add(p_tot, p_comp, sign * contrib)
    amp = np.sqrt(2.0 / (math.pi * ax))
    return amp * (np.cos(w) * p_tot - np.sin(w) * q_tot)


def bessel_j0(x):
    """Bessel function of the first kind, order zero.

    Ascending series below |x| = 12, Hankel asymptotic expansion above; both
    branches hold absolute error near 1e-12 across the supported range.
    Accepts a scalar or an ndarray and matches the input's shape.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    ax = np.abs(np.atleast_1d(arr))
    out = np.empty_like(ax)
    small = ax < _SERIES_CUTOFF
    if np.any(small):
        out[small] = _j0_series(ax[small])
    large = ~small
    if np.any(large):
        out[large] = _j0_asymptotic(ax[large])
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


def bessel_j0_oracle(x: float, tol: float = 1e-10) -> float:
    """J0 through its integral representation, for cross-checking bessel_j0.

    Evaluates (1/pi) * integral of cos(x sin t) over [-pi/2, pi/2] with the
    adaptive integrator above, so the two routes share no series code.
    """
    ax = abs(float(x))
    res = integrate(lambda t: np.cos(ax * np.sin(t)) / math.pi,
                    -0.5 * math.pi, 0.5 * math.pi, tol=tol)
    return res.value
