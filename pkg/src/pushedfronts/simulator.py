"""Direct time integration of the delayed reaction-diffusion equation.

The Cauchy problem u_t = u_xx - u + g(u(t-h, x)) is advanced with an
implicit-explicit backward Euler step: diffusion and the linear decay
are implicit, the delayed birth term is explicit,

    (1 + dt) u^{n+1} - dt u^{n+1}_xx = u^n + dt g(u^{n-m}),

with m = h / dt lag steps (dt must divide h exactly).  The implicit
part is a symmetric positive definite tridiagonal solve; its Cholesky
factor is computed once per field and reused every step.  Boundary
values are held at the initial datum's edge values (Dirichlet), so
domains must be generous enough that the front never feels the edges.

The explicit birth term makes the step order preserving whenever
dt * lipschitz(g) < 1; the default time step chooser enforces
dt <= 0.9 / lipschitz.  Order preservation is what the comparison
principle tests certify, and it is also why overshoots beyond [0, kappa]
can only be roundoff: anything larger indicates a misconfigured step
and raises instead of being silently clipped.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded

from .model import BirthFunction

_OVERSHOOT_TOL = 1e-10


class SchemeInstabilityError(RuntimeError):
    """Raised when an update overshoots [0, kappa] by more than roundoff."""


def choose_time_step(h: float, target: float = 0.01, lipschitz: float | None = None):
    """Largest step not exceeding `target` that divides the delay exactly
    and respects the order-preservation bound dt <= 0.9 / lipschitz."""
    if target <= 0.0:
        raise ValueError("target time step must be positive")
    cap = target
    if lipschitz is not None:
        cap = min(cap, 0.9 / lipschitz)
    if h == 0.0:
        return cap
    m = max(1, math.ceil(h / cap - 1e-12))
    return h / m


@dataclass(frozen=True)
class InitialDatum:
    """History block over one delay interval plus its declared envelope
    parameters.

    history[j] samples the state at time -h + j dt; the last row is the
    t = 0 state.  declared carries (A, mu, B, sigma) when the datum
    advertises front-compatible structure: a left envelope
    w <= A e^{mu x} and a right plateau w >= kappa - sigma for x >= B.
    Data without that structure (bumps) declare None.
    """

    kind: str
    x: np.ndarray
    h: float
    dt: float
    history: np.ndarray
    kappa: float
    declared: dict | None


@dataclass(frozen=True)
class ICCheck:
    name: str
    passed: bool
    measured: float
    requirement: str


@dataclass(frozen=True)
class ICReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _uniform_grid(x):
    x = np.asarray(x, dtype=float)
    dx = np.diff(x)
    if x.size < 8 or np.max(np.abs(dx - dx[0])) > 1e-9 * abs(dx[0]):
        raise ValueError("need a uniform grid with at least 8 nodes")
    return x, float(dx[0])


def make_initial_datum(
    kind: str,
    x,
    g: BirthFunction,
    h: float,
    dt: float,
    **params,
) -> InitialDatum:
    """Construct one of the canonical initial data on the given grid.

    kinds:
      front_like        kappa * min(1, e^{mu (x - B)}); params mu, B
      heaviside         kappa * [x >= x0]; params x0, mu (declared rate)
      compact_bump      height * cos^2 bump; params center, width, height
      perturbed_profile traveling profile plus eps * weight; params
                        profile, eps, lam, sigma

    The history is sampled at times -h, -h+dt, ..., 0.  Static kinds
    repeat the same row; the perturbed profile translates backward in
    time so that eps = 0 reproduces an exact traveling-wave history.
    """
    x, _ = _uniform_grid(x)
    if h < 0.0:
        raise ValueError("delay must be nonnegative")
    m = int(round(h / dt)) if h > 0 else 0
    if h > 0 and abs(m * dt - h) > 1e-9 * h:
        raise ValueError("dt must divide the delay exactly (use choose_time_step)")
    kappa = g.kappa

    if kind == "front_like":
        mu = float(params.get("mu", 1.0))
        B = float(params.get("B", 0.0))
        if mu <= 0.0:
            raise ValueError("front_like needs a positive left rate mu")
        row = kappa * np.minimum(1.0, np.exp(np.minimum(mu * (x - B), 0.0)))
        history = np.tile(row, (m + 1, 1))
        declared = dict(A=kappa * np.exp(-mu * B), mu=mu, B=B, sigma=1e-9 * kappa)
    elif kind == "heaviside":
        x0 = float(params.get("x0", 0.0))
        mu = float(params.get("mu", 1.0))
        row = np.where(x >= x0, kappa, 0.0)
        history = np.tile(row, (m + 1, 1))
        declared = dict(A=kappa * np.exp(-mu * x0), mu=mu, B=x0, sigma=1e-9 * kappa)
    elif kind == "compact_bump":
        center = float(params.get("center", 0.0))
        width = float(params.get("width", 10.0))
        height = float(params.get("height", 0.5 * kappa))
        if not (0.0 < height <= kappa):
            raise ValueError("bump height must lie in (0, kappa]")
        arg = (x - center) / width
        row = np.where(np.abs(arg) < 1.0, height * np.cos(0.5 * np.pi * arg) ** 2, 0.0)
        history = np.tile(row, (m + 1, 1))
        declared = None
    elif kind == "perturbed_profile":
        prof = params["profile"]
        eps = float(params.get("eps", 0.0))
        lam = float(params.get("lam", 0.5 * prof.tail_left.rate))
        sigma = float(params.get("sigma", 0.01 * kappa))
        rows = []
        for j in range(m + 1):
            s = -h + j * dt
            zz = x + prof.c * s
            w = prof.interpolate(zz)
            if eps != 0.0:
                w = w + eps * np.minimum(np.exp(lam * zz), 1.0)
            rows.append(np.clip(w, 0.0, kappa))
        history = np.vstack(rows)
        # plateau start: where the profile is within sigma of kappa,
        # retreated by one delay span
        above = np.where(kappa - prof.interpolate(x) < sigma)[0]
        B = float(x[above[0]]) + prof.c * h if above.size else float(x[-1])
        declared = dict(A=2.0 * max(1.0, kappa), mu=lam, B=B, sigma=sigma)
    else:
        raise ValueError("unknown datum kind %r" % kind)

    return InitialDatum(
        kind=kind, x=x, h=float(h), dt=float(dt), history=history,
        kappa=kappa, declared=declared,
    )


def validate_ic(datum: InitialDatum, slow_rate: float | None = None) -> ICReport:
    """Check the structural requirements on an initial history.

    Always checks the range 0 <= w <= kappa.  When the datum declares
    envelope parameters, additionally checks the left exponential bound
    (including mu > slow_rate when a slow decay rate is supplied) and
    the right plateau.  Bump-type data fail the declaration check by
    construction; that is information, not an error.
    """
    w = datum.history
    x = datum.x
    kappa = datum.kappa
    checks = []

    low = float(np.min(w))
    high = float(np.max(w))
    checks.append(
        ICCheck(
            name="range",
            passed=low >= -1e-15 and high <= kappa + 1e-15,
            measured=max(-low, high - kappa),
            requirement="0 <= w <= kappa throughout the history",
        )
    )

    if datum.declared is None:
        checks.append(
            ICCheck(
                name="envelope_declared",
                passed=False,
                measured=float("nan"),
                requirement="datum declares (A, mu, B, sigma)",
            )
        )
        return ICReport(checks=tuple(checks))

    A = datum.declared["A"]
    mu = datum.declared["mu"]
    B = datum.declared["B"]
    sigma = datum.declared["sigma"]

    bound = A * np.exp(mu * x)
    excess = float(np.max(w - bound[None, :]))
    checks.append(
        ICCheck(
            name="left_envelope",
            passed=excess <= 1e-12 * max(1.0, kappa),
            measured=excess,
            requirement="w(s, x) <= A e^{mu x}",
        )
    )
    if slow_rate is not None:
        checks.append(
            ICCheck(
                name="steep_enough",
                passed=mu > slow_rate,
                measured=mu,
                requirement="declared mu exceeds the slow decay rate",
            )
        )
    plateau = x >= B
    if np.any(plateau):
        short = float(np.max(kappa - w[:, plateau]))
    else:
        short = float("inf")
    checks.append(
        ICCheck(
            name="right_plateau",
            passed=short <= sigma,
            measured=short,
            requirement="w >= kappa - sigma for x >= B",
        )
    )
    checks.append(
        ICCheck(
            name="sigma_in_range",
            passed=0.0 < sigma < kappa,
            measured=sigma,
            requirement="sigma in (0, kappa)",
        )
    )
    return ICReport(checks=tuple(checks))


@dataclass
class DelayedField:
    """Discrete state of the delayed equation: grid, clock, and the ring
    of past states spanning exactly one delay interval."""

    x: np.ndarray
    dx: float
    dt: float
    h: float
    t: float
    kappa: float
    lipschitz: float
    boundary: tuple
    history: deque = field(repr=False)
    chol: np.ndarray = field(repr=False, compare=False)

    @property
    def state(self) -> np.ndarray:
        return self.history[-1]

    @property
    def lagged(self) -> np.ndarray:
        return self.history[0]


def initialize(datum: InitialDatum, g: BirthFunction) -> DelayedField:
    """Build the integrable field from a datum: validates the step
    against the order-preservation bound and factors the implicit
    operator once."""
    x, dx = _uniform_grid(datum.x)
    dt = datum.dt
    if dt > 0.9 / g.lipschitz + 1e-12:
        raise ValueError(
            "dt=%.3g exceeds the order-preservation bound 0.9/L=%.3g"
            % (dt, 0.9 / g.lipschitz)
        )
    r = dt / dx**2
    n = x.size
    ab = np.zeros((2, n - 2))
    ab[0, 1:] = -r
    ab[1, :] = 1.0 + dt + 2.0 * r
    chol = cholesky_banded(ab, lower=False)
    history = deque(
        (np.array(row, dtype=float, copy=True) for row in datum.history),
        maxlen=datum.history.shape[0],
    )
    return DelayedField(
        x=x,
        dx=dx,
        dt=dt,
        h=datum.h,
        t=0.0,
        kappa=datum.kappa,
        lipschitz=g.lipschitz,
        boundary=(float(datum.history[-1, 0]), float(datum.history[-1, -1])),
        history=history,
        chol=chol,
    )


def _advance(field: DelayedField, g: BirthFunction) -> np.ndarray:
    """One implicit-explicit update; returns the new state row."""
    dt = field.dt
    r = dt / field.dx**2
    u = field.history[-1]
    ulag = field.history[0]
    rhs = u[1:-1] + dt * g(ulag[1:-1])
    rhs[0] += r * field.boundary[0]
    rhs[-1] += r * field.boundary[1]
    new = np.empty_like(u)
    new[0], new[-1] = field.boundary
    new[1:-1] = cho_solve_banded((field.chol, False), rhs, check_finite=False)
    over = max(float(-np.min(new)), float(np.max(new) - field.kappa))
    if over > _OVERSHOOT_TOL:
        raise SchemeInstabilityError(
            "update overshoots [0, kappa] by %.3e; reduce dt (currently %.3g)"
            % (over, dt)
        )
    np.clip(new, 0.0, field.kappa, out=new)
    return new


def step(field: DelayedField, g: BirthFunction) -> DelayedField:
    """Advance one step, functionally: the input field is not modified."""
    new = _advance(field, g)
    history = deque(field.history, maxlen=field.history.maxlen)
    history.append(new)
    return replace(field, t=field.t + field.dt, history=history)


@dataclass(frozen=True)
class Observer:
    """Named probe evaluated every `every` time units during a run."""

    name: str
    every: float
    fn: Callable


@dataclass
class ObservationLog:
    records: dict

    def series(self, name):
        pairs = self.records[name]
        times = np.array([p[0] for p in pairs])
        values = [p[1] for p in pairs]
        try:
            values = np.array(values)
        except ValueError:
            pass
        return times, values


def run(
    field: DelayedField,
    g: BirthFunction,
    T: float,
    observers: Sequence[Observer] = (),
) -> tuple:
    """Integrate for a duration T, collecting observer records.

    T must be a whole number of steps; every observer cadence must be a
    whole number of steps as well.  Observers fire on the initial state
    and then on the step grid, so a T = 0 run returns exactly the
    initial observation.
    """
    dt = field.dt
    nsteps = int(round(T / dt))
    if abs(nsteps * dt - T) > 1e-9 * max(T, 1.0):
        raise ValueError("T must be an integer multiple of dt")
    cadences = []
    for obs in observers:
        k = int(round(obs.every / dt))
        if k <= 0 or abs(k * dt - obs.every) > 1e-9 * obs.every:
            raise ValueError(
                "observer %r cadence %.3g is not a multiple of dt=%.3g"
                % (obs.name, obs.every, dt)
            )
        cadences.append(k)

    records = {obs.name: [] for obs in observers}
    current = field
    # mutate a working copy of the ring in the hot loop; wrap the result
    # into a fresh field at the end
    ring = deque(current.history, maxlen=current.history.maxlen)
    work = replace(current, history=ring)
    for obs in observers:
        records[obs.name].append((work.t, obs.fn(work)))
    for k in range(1, nsteps + 1):
        new = _advance(work, g)
        ring.append(new)
        work.t = field.t + k * dt
        for obs, cad in zip(observers, cadences):
            if k % cad == 0:
                records[obs.name].append((work.t, obs.fn(work)))
    final = replace(
        field, t=field.t + nsteps * dt, history=deque(ring, maxlen=ring.maxlen)
    )
    return final, ObservationLog(records=records)
