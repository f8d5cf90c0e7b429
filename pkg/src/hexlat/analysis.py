"""Post-processing of zeros and curves: densities, scaling fits, cardioids.

All routines are plain batch computations on numbers produced elsewhere:
the discrete density of zeros along the negative axis, log-log local-slope
sequences and fixed-exponent amplitude fits for finite-size scaling, and the
two-parameter cardioid model of the inner zero boundary.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares


@dataclass
class DensityProfile:
    positions: np.ndarray      # z_j, strictly decreasing (toward -inf)
    density: np.ndarray        # D_L(z_j), one shorter than positions
    derivative: np.ndarray     # D'_L(z_j), one shorter than density
    count: int                 # zeros inside the window


def density_profile(axis_zeros, window=None):
    """Discrete density of real negative zeros and its difference quotient.

    axis_zeros: real zero locations (any order).  window: optional (left,
    right) bounds; defaults to the whole input.  With z_j ordered from the
    origin outward, D_L(z_j) = 1 / (N_L (z_j - z_{j+1}))
    and D'_L(z_j) = (D_L(z_{j+1}) - D_L(z_j)) / (z_{j+1} - z_j).
    """
    zs = np.sort(np.asarray(axis_zeros, dtype=float))[::-1]
    if window is not None:
        lo, hi = min(window), max(window)
        zs = zs[(zs >= lo) & (zs <= hi)]
    if len(zs) < 3:
        raise ValueError("need at least three zeros on the axis")
    n = len(zs)
    d = 1.0 / (n * (zs[:-1] - zs[1:]))
    dd = (d[1:] - d[:-1]) / (zs[1:-1] - zs[:-2])
    return DensityProfile(zs, d, dd, n)


def density_exponent(profile, anchor):
    """Log-log slope of D against (anchor - z); anchor is the divergence point."""
    x = np.log(np.abs(anchor - profile.positions[:-1]))
    y = np.log(profile.density)
    slope, _ = np.polyfit(x, y, 1)
    return slope


def density_ratio_fit(profile, window):
    """Straight-line fit of D/D' over a z window; returns (exponent, intercept).

    For D ~ (z_f - z)^alpha (alpha < 0, diverging toward z_f from the left),
    D/D' = (z - z_f)/alpha, so the fitted line a*z + b gives alpha = 1/a and
    z_f = -b/a.
    """
    z = profile.positions[:-2]
    ratio = profile.density[:-1] / profile.derivative
    lo, hi = min(window), max(window)
    mask = (z >= lo) & (z <= hi) & np.isfinite(ratio)
    if mask.sum() < 3:
        raise ValueError("window holds fewer than three density points")
    a, b = np.polyfit(z[mask], ratio[mask], 1)
    return 1.0 / a, -b / a


def fss_local_slopes(series, lag=3):
    """Pairwise log-log slopes of an (L, value) sequence.

    Returns (L, slope) pairs using points lag apart; raises on nonpositive
    values since the logarithm is undefined there.
    """
    pts = sorted(series)
    out = []
    by_l = {int(l): v for l, v in pts}
    for l, v in pts:
        prev = by_l.get(int(l) - lag)
        if prev is None:
            continue
        if v <= 0 or prev <= 0:
            raise ValueError("local slopes need positive values")
        out.append((l, math.log(v / prev) / math.log(l / (l - lag))))
    return out


def slope_extrapolate(slopes):
    """Linear-in-1/L extrapolation of a local-slope sequence to L = infinity."""
    ls = np.array([l for l, _ in slopes], dtype=float)
    ss = np.array([s for _, s in slopes], dtype=float)
    a, b = np.polyfit(1.0 / ls, ss, 1)
    return b


def difference_slopes(series, exponent, lag=3):
    """Local slopes of the scaled difference sequence d(L) = s(L) - s(L-lag).

    s(L) = L^exponent * value(L); the returned slopes expose the next
    correction exponent (they approach -(alpha+1) for corrections L^-alpha).
    """
    pts = sorted(series)
    scaled = [(l, l**exponent * v) for l, v in pts]
    by_l = {int(l): s for l, s in scaled}
    diffs = []
    for l, s in scaled:
        prev = by_l.get(int(l) - lag)
        if prev is not None:
            diffs.append((l, abs(s - prev)))
    return fss_local_slopes(diffs, lag)


@dataclass
class FitResult:
    exponents: list
    amplitudes: np.ndarray     # global least squares over the whole series
    refined: np.ndarray        # estimate from the largest-size trailing window
    scatter: np.ndarray        # amplitude spread across trailing sub-windows
    residual: float
    window: tuple
    condition: float = math.nan


def fss_amplitudes(series, exponents, subwindow=5):
    """Least-squares amplitudes for value(L) = sum_i a_i L^(-e_i).

    Exponents stay fixed.  `amplitudes` is the fit over the full series;
    truncation of the asymptotic expansion biases it, so `refined` repeats
    the fit on the trailing window of `subwindow` consecutive sizes (where
    neglected corrections are smallest), and `scatter` records the drift
    across the last three such windows.
    """
    pts = sorted(series)
    if len(pts) < len(exponents) + 1:
        raise ValueError("need more data points than exponents")
    ls = np.array([l for l, _ in pts], dtype=float)
    vs = np.array([v for _, v in pts], dtype=float)

    def solve(lsub, vsub):
        design = np.column_stack([lsub ** (-e) for e in exponents])
        amps, *_ = np.linalg.lstsq(design, vsub, rcond=None)
        resid = float(np.linalg.norm(design @ amps - vsub))
        cond = float(np.linalg.cond(design))
        return amps, resid, cond

    amps, resid, cond = solve(ls, vs)
    subwindow = min(subwindow, len(pts))
    windows = []
    nw = len(pts) - subwindow + 1
    for s in range(max(0, nw - 3), nw):
        amps_w, _, _ = solve(ls[s: s + subwindow], vs[s: s + subwindow])
        windows.append(amps_w)
    scatter = (np.ptp(np.array(windows), axis=0) if len(windows) >= 2
               else np.full(len(exponents), math.nan))
    return FitResult(list(exponents), amps, windows[-1], scatter, resid,
                     (int(ls[0]), int(ls[-1])), cond)


@dataclass
class CardioidFit:
    a: float
    c: float
    rms: float
    thetas: np.ndarray = field(default_factory=lambda: np.array([]))


def inner_arc(zeros, nbins=36, axis_tol=1e-6):
    """Innermost off-axis zero per angular bin (upper half plane).

    The inner boundary of the zero distribution is what the cardioid
    describes; outer structure (necklace loops, stray zeros) is dropped by
    keeping only the smallest-radius zero in each angle bin.
    """
    zs = np.asarray(zeros, dtype=complex)
    scale = max(np.abs(zs)) if len(zs) else 1.0
    zs = zs[zs.imag > axis_tol * scale]
    if len(zs) == 0:
        return np.array([], dtype=complex)
    ang = np.angle(zs)
    edges = np.linspace(0.0, np.pi, nbins + 1)
    out = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mask = (ang >= lo) & (ang < hi)
        if mask.any():
            sel = zs[mask]
            out.append(sel[np.argmin(np.abs(sel))])
    return np.array(sorted(out, key=np.angle))


def cardioid_point(a, c, theta):
    """Point of the shifted cardioid at parameter theta."""
    re = a / 2 + c + a * np.cos(theta) + a / 2 * np.cos(2 * theta)
    im = a * np.sin(theta) + a / 2 * np.sin(2 * theta)
    return re + 1j * im


def cardioid_fit(points, a0=None, c0=None):
    """Fit the two-parameter cardioid to complex arc points.

    Residuals are measured radially from the cusp at (c, 0), where the curve
    is r(theta) = a (1 + cos theta); this keeps the fit linear in `a` for
    fixed c and robust for sparse arcs.
    """
    zs = np.asarray(points, dtype=complex)
    if len(zs) < 10:
        raise ValueError("need at least ten arc points")
    if a0 is None:
        a0 = 0.5 * (zs.real.max() - zs.real.min())
    if c0 is None:
        c0 = zs.real.min()
    span = zs.real.max() - zs.real.min()
    if span < 1e-12 or np.ptp(zs.imag) < 1e-12:
        raise ValueError("arc is degenerate (collinear points)")

    def resid(p):
        a, c = p
        rel = zs - c
        theta = np.angle(rel)
        return np.abs(rel) - a * (1 + np.cos(theta))

    sol = least_squares(resid, x0=[a0, c0])
    a, c = sol.x
    thetas = np.angle(zs - c)
    rms = float(np.sqrt(np.mean(resid(sol.x) ** 2)))
    return CardioidFit(float(a), float(c), rms, thetas)


def extrapolate_linear(sizes, values):
    """Linear-in-1/L extrapolation of per-size fit parameters to L = infinity."""
    ls = np.asarray(sizes, dtype=float)
    vs = np.asarray(values, dtype=float)
    slope, intercept = np.polyfit(1.0 / ls, vs, 1)
    return intercept
