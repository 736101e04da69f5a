"""Dispersion analysis of the linearized traveling-wave problem.

In the co-moving frame z = x + ct, an exponential perturbation
e^{z z0} of an equilibrium of u_t = u_xx - u + g(u(t-h, x)) solves the
linearization exactly when the dispersion function

    D(z0; c, s, h) = z0^2 - c z0 - 1 + s * exp(-z0 c h)

vanishes, where s is the slope of g at the equilibrium under
consideration (s = g'(0) at the extinction state, s = g'(kappa) at the
positive state).

At the extinction state with s > 1 there are no positive real roots for
slow speeds; real roots appear at the minimal linear speed, where the
dispersion function has a double root in z0.  Above that speed there
are two positive roots, a slow one and a fast one, which govern the
admissible spatial decay of front tails.  At the positive state with
s < 1 there is a unique negative root giving the approach rate to
kappa.

All root finding is bracketing bisection followed by a Newton polish;
every returned root satisfies |D| < 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_RESIDUAL_TOL = 1e-12
_Z_MAX = 50.0
_C_MAX = 50.0


def dispersion(z, c, slope, h):
    """Dispersion function z^2 - c z - 1 + slope * exp(-z c h)."""
    z = np.asarray(z, dtype=float)
    out = z * z - c * z - 1.0 + slope * np.exp(-z * c * h)
    return out if out.shape else float(out)


def dispersion_dz(z, c, slope, h):
    """Partial derivative of the dispersion function in the rate z."""
    z = np.asarray(z, dtype=float)
    out = 2.0 * z - c - slope * c * h * np.exp(-z * c * h)
    return out if out.shape else float(out)


def _dispersion_dc(z, c, slope, h):
    return -z * (1.0 + slope * h * np.exp(-z * c * h))


def _dispersion_dzz(z, c, slope, h):
    return 2.0 + slope * (c * h) ** 2 * np.exp(-z * c * h)


def _dispersion_dzc(z, c, slope, h):
    return -1.0 - slope * h * np.exp(-z * c * h) * (1.0 - z * c * h)


def _bisect(f, lo, hi, width=1e-8, max_iter=200):
    """Bracketing bisection; assumes f(lo) and f(hi) have opposite signs."""
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError("bisection bracket does not straddle a sign change")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or hi - lo < width:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton_polish(f, df, x0, max_iter=60):
    x = x0
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) < _RESIDUAL_TOL:
            return x
        d = df(x)
        if d == 0.0:
            break
        x = x - fx / d
    if abs(f(x)) >= _RESIDUAL_TOL:
        raise RuntimeError("root polish stalled at residual %.3e" % abs(f(x)))
    return x


def _rate_at_minimum(c, slope, h):
    """Location of the minimum of the dispersion function over z > 0.

    The z-derivative is increasing (the dispersion function is convex in
    z for slope >= 0), negative at z = 0, so the minimizer is the unique
    root of the derivative.
    """
    hi = max(c, 1.0)
    while dispersion_dz(hi, c, slope, h) <= 0.0:
        hi *= 2.0
        if hi > _Z_MAX * 8.0:
            raise RuntimeError("dispersion minimum escaped the search window")
    z = _bisect(lambda t: dispersion_dz(t, c, slope, h), 0.0, hi)
    return _newton_polish(
        lambda t: dispersion_dz(t, c, slope, h),
        lambda t: _dispersion_dzz(t, c, slope, h),
        z,
    )


@dataclass(frozen=True)
class SpectralSummary:
    """Minimal linear speed and its double decay rate for one (gp0, h)."""

    c_linear: float
    rate_double: float
    gp0: float
    h: float


def minimal_linear_speed(gp0: float, h: float) -> SpectralSummary:
    """Smallest speed at which the extinction-state dispersion function
    has real positive roots.

    For h = 0 this is closed form: c = 2 sqrt(gp0 - 1) with double rate
    sqrt(gp0 - 1).  For h > 0 the speed solves a two-equation system
    (dispersion function and its z-derivative both vanish), located by
    bisection on the minimum value of the dispersion function and
    polished with a two-dimensional Newton iteration to residual 1e-12.
    """
    if gp0 <= 1.0:
        raise ValueError("need slope at the origin above one, got %r" % gp0)
    if h < 0.0:
        raise ValueError("delay must be nonnegative")
    if h == 0.0:
        root = float(np.sqrt(gp0 - 1.0))
        return SpectralSummary(c_linear=2.0 * root, rate_double=root, gp0=gp0, h=h)

    def min_value(c):
        return dispersion(_rate_at_minimum(c, gp0, h), c, gp0, h)

    c_lo = 1e-6
    if min_value(c_lo) <= 0.0:
        raise RuntimeError("dispersion minimum already negative at tiny speed")
    c_hi = 1.0
    while min_value(c_hi) > 0.0:
        c_hi *= 2.0
        if c_hi > _C_MAX:
            raise RuntimeError("no minimal linear speed below %r" % _C_MAX)
    c = _bisect(min_value, c_lo, c_hi)
    z = _rate_at_minimum(c, gp0, h)

    # polish (z, c) on the system (D, D_z) = (0, 0)
    for _ in range(60):
        f1 = dispersion(z, c, gp0, h)
        f2 = dispersion_dz(z, c, gp0, h)
        if max(abs(f1), abs(f2)) < _RESIDUAL_TOL:
            break
        j11 = dispersion_dz(z, c, gp0, h)
        j12 = _dispersion_dc(z, c, gp0, h)
        j21 = _dispersion_dzz(z, c, gp0, h)
        j22 = _dispersion_dzc(z, c, gp0, h)
        det = j11 * j22 - j12 * j21
        if det == 0.0:
            break
        z -= (f1 * j22 - f2 * j12) / det
        c -= (j11 * f2 - j21 * f1) / det
    resid = max(
        abs(dispersion(z, c, gp0, h)), abs(dispersion_dz(z, c, gp0, h))
    )
    if resid >= _RESIDUAL_TOL:
        raise RuntimeError("double-root polish stalled at residual %.3e" % resid)
    return SpectralSummary(c_linear=float(c), rate_double=float(z), gp0=gp0, h=h)


@dataclass(frozen=True)
class DecayPair:
    """Slow and fast positive decay rates at a supercritical speed."""

    slow: float
    fast: float


def decay_rates(c: float, gp0: float, h: float) -> DecayPair:
    """Positive real roots of the extinction-state dispersion function.

    Raises ValueError when c is below the minimal linear speed (the
    dispersion function is then positive for all real rates).  At the
    minimal speed both rates coincide with the double rate.
    """
    if gp0 <= 1.0:
        raise ValueError("need slope at the origin above one, got %r" % gp0)
    if h == 0.0:
        disc = c * c - 4.0 * (gp0 - 1.0)
        if disc < 0.0:
            raise ValueError(
                "speed %.6g below the minimal linear speed; no real decay rates" % c
            )
        root = np.sqrt(disc)
        return DecayPair(slow=0.5 * (c - root), fast=0.5 * (c + root))

    z_min = _rate_at_minimum(c, gp0, h)
    d_min = dispersion(z_min, c, gp0, h)
    if d_min > 0.0:
        raise ValueError(
            "speed %.6g below the minimal linear speed; no real decay rates" % c
        )
    if d_min > -1e-13:
        return DecayPair(slow=float(z_min), fast=float(z_min))

    def f(t):
        return dispersion(t, c, gp0, h)

    def df(t):
        return dispersion_dz(t, c, gp0, h)

    slow = _newton_polish(f, df, _bisect(f, 0.0, z_min))
    hi = max(2.0 * z_min, c + 2.0)
    while f(hi) <= 0.0:
        hi *= 2.0
        if hi > _Z_MAX * 8.0:
            raise RuntimeError("fast decay rate escaped the search window")
    fast = _newton_polish(f, df, _bisect(f, z_min, hi))
    return DecayPair(slow=float(slow), fast=float(fast))


def kappa_approach_rate(c: float, gpk: float, h: float) -> float:
    """Unique negative root of the dispersion function at the positive
    equilibrium; the rate at which profiles approach kappa.

    Requires slope gpk < 1 at the positive state.  The root is negative
    because the dispersion value at z = 0 is gpk - 1 < 0 while the
    quadratic part dominates as z -> -infinity.
    """
    if gpk >= 1.0:
        raise ValueError("need slope at kappa below one, got %r" % gpk)
    if h == 0.0:
        return float(0.5 * (c - np.sqrt(c * c + 4.0 * (1.0 - gpk))))

    def f(t):
        return dispersion(t, c, gpk, h)

    lo = -1.0
    while f(lo) <= 0.0:
        lo *= 2.0
        if lo < -_Z_MAX * 8.0:
            raise RuntimeError("approach rate escaped the search window")
    root = _bisect(f, lo, 0.0)
    return float(_newton_polish(f, lambda t: dispersion_dz(t, c, gpk, h), root))
