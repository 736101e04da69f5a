"""Convergence and stability diagnostics for front simulations.

All comparisons happen in the co-moving frame z = x + ct.  Deviations
from a front profile are measured in a weighted sup norm

    |y|_lam = sup_z |y(z)| / eta(z),      eta(z) = min(e^{lam z}, 1),

with the weight evaluated at the frame coordinate.  The weight forgives
absolute errors deep in the leading tail (where both the solution and
the profile vanish) at exactly the exponential rate lam, which must sit
strictly between the slow and fast decay rates of the profile for the
norm to see front convergence.

Sup norms are grid maxima; nothing is refined by interpolation.  All
least-squares fits discard an initial transient fraction (default 30
percent) because the statements being checked are asymptotic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import BirthFunction
from .profile import WaveProfile
from .spectral import decay_rates

_PHASE_WINDOW = 20.0
_PHASE_TOL = 1e-6
_ENVELOPE_SLACK = 1e-8


def comparison_weight(z, lam):
    """The weight eta(z) = min(e^{lam z}, 1)."""
    z = np.asarray(z, dtype=float)
    out = np.exp(lam * np.minimum(z, 0.0))
    return out if out.shape else float(out)


def weighted_norm(values, z, lam):
    """Discrete weighted sup norm max |values| / eta(z)."""
    values = np.asarray(values, dtype=float)
    return float(np.max(np.abs(values) / comparison_weight(z, lam)))


def moving_frame(u, x, c, t, z):
    """Solution in the frame moving left at speed c: w(z) = u(z - ct).

    Linear interpolation onto the requested z grid; refuses to
    extrapolate beyond the spatial domain.
    """
    u = np.asarray(u, dtype=float)
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    pts = z - c * t
    if np.min(pts) < x[0] - 1e-12 or np.max(pts) > x[-1] + 1e-12:
        raise ValueError(
            "frame window [%g, %g] leaves the domain [%g, %g] at t=%g"
            % (np.min(pts), np.max(pts), x[0], x[-1], t)
        )
    return np.interp(pts, x, u)


def _golden_min(f, lo, hi, tol):
    """Golden-section minimizer for a unimodal scalar function."""
    invphi = 0.5 * (np.sqrt(5.0) - 1.0)
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def fit_phase(w, z, profile: WaveProfile, lam, window=_PHASE_WINDOW):
    """Best-fitting phase: argmin over s of |w - phi(. + s)|_lam.

    Golden-section search on s in [-window, window] to tolerance 1e-6.
    A minimizer at the search boundary means the snapshot is not within
    range of any shift of the profile and raises.
    """
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    eta = comparison_weight(z, lam)

    def dist(s):
        return float(np.max(np.abs(w - profile.interpolate(z + s)) / eta))

    s0 = _golden_min(dist, -window, window, _PHASE_TOL)
    if abs(s0) >= window - 10.0 * _PHASE_TOL:
        raise ValueError(
            "phase fit hit the search boundary (s=%.6g); snapshot is not a "
            "shifted profile" % s0
        )
    return s0


def weighted_distance_to_shift(w, z, profile: WaveProfile, lam, s0):
    """|w - phi(. + s0)|_lam on the given frame grid."""
    w = np.asarray(w, dtype=float)
    return float(
        np.max(
            np.abs(w - profile.interpolate(np.asarray(z) + s0))
            / comparison_weight(z, lam)
        )
    )


def level_set_position(u, x, level, side):
    """Outermost crossing of a level: the smallest x for side='left',
    the largest for side='right', linearly interpolated."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    u = np.asarray(u, dtype=float)
    x = np.asarray(x, dtype=float)
    sign = np.sign(u - level)
    hits = np.where(sign[:-1] * sign[1:] <= 0)[0]
    hits = hits[(u[hits] != level) | (u[hits + 1] != level)]
    if hits.size == 0:
        raise ValueError("no crossing of level %g on the grid" % level)
    i = int(hits[0]) if side == "left" else int(hits[-1])
    du = u[i + 1] - u[i]
    frac = 0.5 if du == 0 else (level - u[i]) / du
    return float(x[i] + frac * (x[i + 1] - x[i]))


def spreading_speed_estimate(times, left_positions, right_positions,
                             discard_fraction=0.3):
    """Least-squares slopes of the two level-set trajectories.

    Returns (c_left, c_right, stderr) where stderr is the larger of the
    two slope standard errors.  The initial discard_fraction of samples
    is dropped; at least 10 must remain.
    """
    times = np.asarray(times, dtype=float)
    keep = slice(int(np.floor(discard_fraction * times.size)), None)
    t = times[keep]
    if t.size < 10:
        raise ValueError("need at least 10 samples after the transient discard")
    out = []
    errs = []
    for pos in (left_positions, right_positions):
        p = np.asarray(pos, dtype=float)[keep]
        slope, intercept = np.polyfit(t, p, 1)
        resid = p - (slope * t + intercept)
        dof = max(t.size - 2, 1)
        tvar = np.sum((t - t.mean()) ** 2)
        errs.append(float(np.sqrt(np.sum(resid**2) / dof / tvar)))
        out.append(float(slope))
    return out[0], out[1], max(errs)


@dataclass(frozen=True)
class EnvelopeConstants:
    """Constants of the exponential comparison envelopes around a front.

    An initial deviation of weighted size q below q0_plus (above the
    front) or q0_minus (below) is squeezed back at rate gamma while the
    allowed phase shift is C_shift * q.  delta is the linearization
    neighborhood of the extinction state, beta the minimal profile slope
    over the matching interval, alpha the intermediate slope constant.
    """

    gamma: float
    C_shift: float
    q0_plus: float
    q0_minus: float
    delta: float
    beta: float
    alpha: float
    margin: float
    z0: float
    z1: float
    z2: float
    lam: float
    sigma: float


def _profile_preimage(profile: WaveProfile, value):
    """Leftmost z with phi(z) = value, by bisection on the monotone
    interpolant (tails included)."""
    lo, hi = profile.z[0] - 200.0, profile.z[-1] + 200.0
    f = lambda s: float(profile.interpolate(np.array([s]))[0]) - value
    flo, fhi = f(lo), f(hi)
    if flo > 0.0 or fhi < 0.0:
        raise ValueError("value %g outside the profile range" % value)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-12:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def envelope_constants(
    g: BirthFunction,
    profile: WaveProfile,
    c: float,
    h: float,
    lam: float,
    sigma: float,
) -> EnvelopeConstants:
    """Construct admissible envelope constants for a front profile.

    Searches a halving lattice of linearization sizes delta and decay
    rates gamma until the weighted linear stability margin

        -lam^2 + c lam + 1 - gamma - g'(s) e^{-lam c h + gamma h} > 0

    holds for every sampled s in [0, delta] and the profile anchors
    z1 < -ch < 0 < z2 are ordered correctly; then assembles the slope
    and shift constants from the minimal profile slope over the
    matching interval.  Raises when the lattice is exhausted.
    """
    kappa = g.kappa
    pair = decay_rates(c, g.gp0, h)
    if not (pair.slow < lam < pair.fast):
        raise ValueError(
            "weight rate %.6g outside the admissible band (%.6g, %.6g)"
            % (lam, pair.slow, pair.fast)
        )
    if not (0.0 < sigma < kappa):
        raise ValueError("sigma must lie in (0, kappa)")
    ch = c * h

    def margin_of(delta, gamma):
        s = np.linspace(0.0, delta, 201)
        vals = (
            -lam * lam
            + c * lam
            + 1.0
            - gamma
            - g.derivative(s) * np.exp(-lam * ch + gamma * h)
        )
        return float(np.min(vals))

    for j in range(11):
        delta = kappa / 4.0 / 2.0**j
        m0 = margin_of(delta, 0.0)
        if m0 <= 0.0:
            continue
        gamma = None
        cand = 0.5 * m0
        for _ in range(40):
            if cand < c * lam and margin_of(delta, cand) > 0.0:
                gamma = cand
                break
            cand *= 0.5
        if gamma is None:
            continue
        z0 = _profile_preimage(profile, 0.25 * delta)
        z1 = _profile_preimage(profile, 0.5 * delta)
        z2 = _profile_preimage(profile, kappa - 0.5 * delta)
        if not (z1 < -ch < 0.0 < z2 or (ch == 0.0 and z1 < 0.0 < z2)):
            continue
        zz = np.arange(z0, z2 + ch + 1e-9, profile.z[1] - profile.z[0])
        vals = profile.interpolate(zz)
        beta = float(np.min(np.diff(vals) / np.diff(zz)))
        if beta <= 0.0:
            continue
        alpha = (gamma + np.exp(gamma * h) * g.lipschitz) / beta
        return EnvelopeConstants(
            gamma=gamma,
            C_shift=alpha * np.exp(gamma * h) / gamma,
            q0_plus=0.5 * delta * np.exp(-gamma * h),
            q0_minus=sigma,
            delta=delta,
            beta=beta,
            alpha=alpha,
            margin=margin_of(delta, gamma),
            z0=z0,
            z1=z1,
            z2=z2,
            lam=lam,
            sigma=sigma,
        )
    raise ValueError("no admissible (delta, gamma) in the search lattice")


def envelope_check(
    times,
    frames,
    z,
    profile: WaveProfile,
    constants: EnvelopeConstants,
    q: float,
    direction: str,
    history=None,
):
    """Verify an exponential envelope along a run, hypothesis first.

    frames[i] is the frame snapshot w(times[i], z).  For the upper
    envelope the hypothesis is w <= phi + q eta throughout the initial
    history (history rows if provided, else the first frame) with
    q <= q0_plus; the conclusion checked at every later (t, z) is

        w(t, z) <= phi(z + C q) + q e^{-gamma t} eta(z) + slack.

    The lower case mirrors both.  Returns the list of violations
    (t, z, margin); raises when the hypothesis itself fails, since then
    the envelope makes no claim.
    """
    z = np.asarray(z, dtype=float)
    eta = comparison_weight(z, constants.lam)
    phi0 = profile.interpolate(z)
    if direction == "upper":
        if q > constants.q0_plus + 1e-15:
            raise ValueError("q exceeds q0_plus; the envelope does not apply")
        shifted = profile.interpolate(z + constants.C_shift * q)
    elif direction == "lower":
        if q > constants.q0_minus + 1e-15:
            raise ValueError("q exceeds q0_minus; the envelope does not apply")
        shifted = profile.interpolate(z - constants.C_shift * q)
    else:
        raise ValueError("direction must be 'upper' or 'lower'")

    initial = np.asarray(history if history is not None else frames[0], dtype=float)
    if initial.ndim == 1:
        initial = initial[None, :]
    if direction == "upper":
        breach = float(np.max(initial - (phi0[None, :] + q * eta[None, :])))
    else:
        breach = float(np.max((phi0[None, :] - q * eta[None, :]) - initial))
    if breach > _ENVELOPE_SLACK:
        raise ValueError(
            "initial history violates the %s hypothesis by %.3e" % (direction, breach)
        )

    violations = []
    for t, w in zip(times, frames):
        w = np.asarray(w, dtype=float)
        decay = q * np.exp(-constants.gamma * t) * eta
        if direction == "upper":
            margin = w - (shifted + decay)
        else:
            margin = (shifted - decay) - w
        bad = margin > _ENVELOPE_SLACK
        if np.any(bad):
            j = int(np.argmax(margin))
            violations.append((float(t), float(z[j]), float(margin[j])))
    return violations


def origin_approach_fit(times, values, kappa, discard_fraction=0.3):
    """Exponential approach fit at a fixed station: kappa - u ~ q e^{-nu t}.

    Least squares on log(kappa - u) after the transient discard.  Trailing
    samples whose gap to kappa has shrunk to roundoff scale (below
    1e-12 * kappa) are dropped so the fit never chases arithmetic noise.
    Returns (q, nu, residual) with residual the RMS log misfit.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if abs(values[-1] - kappa) > 1e-3 * max(kappa, 1.0):
        raise ValueError("final value is not within 1e-3 of kappa; no approach to fit")
    keep = slice(int(np.floor(discard_fraction * times.size)), None)
    t = times[keep]
    gap = kappa - values[keep]
    floor = 1e-12 * max(kappa, 1.0)
    if np.any(gap < -floor):
        raise ValueError("values exceed kappa in the fit window")
    usable = gap > floor
    t = t[usable]
    gap = gap[usable]
    if t.size < 10:
        raise ValueError("fewer than 10 usable samples above the roundoff floor")
    logs = np.log(gap)
    slope, intercept = np.polyfit(t, logs, 1)
    resid = float(np.sqrt(np.mean((logs - (slope * t + intercept)) ** 2)))
    return float(np.exp(intercept)), float(-slope), resid


@dataclass
class ConvergenceReport:
    """Per-time fitted phases and weighted distances of a run against a
    front profile (one or two interfaces), plus whatever auxiliary
    series the producing diagnostic recorded."""

    times: np.ndarray
    phases: np.ndarray
    distances: np.ndarray
    extinct: bool = False
    level_sets: dict = field(default_factory=dict)
    fits: dict = field(default_factory=dict)
    envelope_violations: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "times": [float(t) for t in self.times],
            "phases": np.asarray(self.phases).tolist(),
            "weighted_distances": np.asarray(self.distances).tolist(),
            "level_sets": {
                k: [float(v) for v in vals] for k, vals in self.level_sets.items()
            },
            "envelope": {"violations": [list(v) for v in self.envelope_violations]},
            "fits": {k: float(v) for k, v in self.fits.items()},
            "extinct": bool(self.extinct),
        }


def two_front_report(
    times,
    snapshots,
    x,
    profile: WaveProfile,
    lam,
    c_star,
    phase_window=_PHASE_WINDOW,
    window=(-20.0, 40.0),
) -> ConvergenceReport:
    """Track a spreading solution against a pair of mirrored fronts.

    For each snapshot the left half x <= 0 is compared with
    phi(x + c t + s1) and the right half with the mirrored
    phi(-x + c t + s2), each with its own fitted phase and weighted
    distance (weight evaluated at the respective frame coordinate).
    Each half is first anchored at its own outermost half-level crossing
    (a bump releases its fronts from wherever its edges sat, so the
    crossing rather than c t locates the interface), a small residual
    phase is refined by the golden search, and the distance is measured
    over the window of anchored frame coordinates around the interface
    (None = whole half-line): far ahead of a front emerging from compact
    data the traveling tail has not formed yet, and the weight magnifies
    that deficit into the sup however well the front itself has
    converged.  The reported phase is the total shift s_k against the
    c_star frame.  Halves without a half-level crossing, or whose
    residual fit hits its search boundary, keep NaN phase and infinite
    distance, since early snapshots of a bump are genuinely not
    front-like yet.
    """
    x = np.asarray(x, dtype=float)
    kappa = profile.kappa
    left = x <= 0.0
    right = x >= 0.0
    phases = np.full((len(times), 2), np.nan)
    distances = np.full((len(times), 2), np.inf)
    final = np.asarray(snapshots[-1], dtype=float)
    if float(np.max(final)) < 0.01 * kappa:
        return ConvergenceReport(
            times=np.asarray(times, float),
            phases=phases,
            distances=distances,
            extinct=True,
        )
    refine = min(5.0, phase_window)
    for i, (t, u) in enumerate(zip(times, snapshots)):
        u = np.asarray(u, dtype=float)
        for k, (mask, orient, side) in enumerate(
            ((left, 1.0, "left"), (right, -1.0, "right"))
        ):
            try:
                x_half = level_set_position(u, x, 0.5 * kappa, side)
            except ValueError:
                continue
            zz = orient * (x[mask] - x_half)
            w = u[mask]
            if window is not None:
                sel = (zz >= window[0]) & (zz <= window[1])
                if not np.any(sel):
                    continue
                zz = zz[sel]
                w = w[sel]
            eta = comparison_weight(zz, lam)

            def dist(s):
                return float(
                    np.max(np.abs(w - profile.interpolate(zz + s)) / eta)
                )

            s = _golden_min(dist, -refine, refine, _PHASE_TOL)
            if abs(s) < refine - 10.0 * _PHASE_TOL:
                phases[i, k] = s - orient * x_half - c_star * t
                distances[i, k] = dist(s)
    return ConvergenceReport(
        times=np.asarray(times, float), phases=phases, distances=distances
    )
