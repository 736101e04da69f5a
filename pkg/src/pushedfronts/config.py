"""Run configuration: defaults, TOML/JSON loading, and validation.

A run is described by one file (TOML preferred, JSON accepted) whose
sections mirror the computational stages: the birth model, the profile
solver, the time integration, and the diagnostics.  Every field has an
embedded default so that an empty-but-valid config reproduces the
reference setup; `dump_defaults` prints the full default file.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib


class ConfigError(ValueError):
    """A malformed or inconsistent run configuration."""


@dataclass
class ModelOptions:
    preset: str = "hadeler_rothe"
    coeffs: list | None = None  # overrides preset when given


@dataclass
class ProfileOptions:
    L: float | None = None  # frame half-width; None = automatic
    dz: float = 0.05
    tol: float = 1e-8
    tol_c: float = 1e-3
    max_iter: int = 8000


@dataclass
class SimulationOptions:
    x_lo: float = -150.0
    x_hi: float = 180.0
    dx: float = 0.1
    dt: float | None = None  # None = choose_time_step(h, dt_target)
    dt_target: float = 2e-3
    T: float = 120.0
    datum: str = "front_like"
    datum_params: dict = field(default_factory=dict)  # empty = per-kind defaults


@dataclass
class DiagnosticsOptions:
    lam: float | None = None  # None = band_fraction into the decay band
    band_fraction: float = 0.25
    every: float = 2.0
    window_lo: float = -20.0
    window_hi: float = 40.0
    discard_fraction: float = 0.3


@dataclass
class RunConfig:
    h: float = 0.0
    out_dir: str = "out"
    model: ModelOptions = field(default_factory=ModelOptions)
    profile: ProfileOptions = field(default_factory=ProfileOptions)
    simulation: SimulationOptions = field(default_factory=SimulationOptions)
    diagnostics: DiagnosticsOptions = field(default_factory=DiagnosticsOptions)


_SECTIONS = {
    "model": ModelOptions,
    "profile": ProfileOptions,
    "simulation": SimulationOptions,
    "diagnostics": DiagnosticsOptions,
}
_TOP_SCALARS = ("h", "out_dir")


def from_dict(raw: dict) -> RunConfig:
    """Build a RunConfig from a parsed mapping, rejecting unknown keys."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a table/object")
    cfg = RunConfig()
    for key, value in raw.items():
        if key in _TOP_SCALARS:
            setattr(cfg, key, value)
        elif key in _SECTIONS:
            section = getattr(cfg, key)
            known = {f.name for f in fields(section)}
            if not isinstance(value, dict):
                raise ConfigError("section %r must be a table" % key)
            for name, inner in value.items():
                if name not in known:
                    raise ConfigError(
                        "unknown key %r in section %r" % (name, key)
                    )
                setattr(section, name, inner)
        else:
            raise ConfigError("unknown top-level key %r" % key)
    validate(cfg)
    return cfg


def load_config(path: str) -> RunConfig:
    """Parse a TOML (or JSON) config file into a validated RunConfig."""
    text = open(path, "rb").read()
    if not text.strip():
        raise ConfigError("empty config file %s" % path)
    if str(path).endswith(".json") or text.lstrip()[:1] == b"{":
        raw = json.loads(text.decode())
    else:
        try:
            raw = tomllib.loads(text.decode())
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError("config parse failure: %s" % exc) from exc
    return from_dict(raw)


def validate(cfg: RunConfig) -> RunConfig:
    """Cheap structural validation; raises ConfigError on the first fault.

    Cross checks that need spectral data (the weight rate sitting inside
    the decay band, the domain outrunning the front) live in
    validate_against_spectrum.
    """
    if cfg.h < 0.0:
        raise ConfigError("h must be nonnegative")
    sim = cfg.simulation
    if sim.x_hi <= sim.x_lo:
        raise ConfigError("simulation domain is empty: x_hi <= x_lo")
    if sim.dx <= 0.0 or sim.T < 0.0 or sim.dt_target <= 0.0:
        raise ConfigError("dx, T and dt_target must be positive")
    if sim.dt is not None:
        if sim.dt <= 0.0:
            raise ConfigError("dt must be positive")
        if cfg.h > 0.0:
            m = round(cfg.h / sim.dt)
            if m < 1 or abs(m * sim.dt - cfg.h) > 1e-9 * cfg.h:
                raise ConfigError("dt must divide the delay h exactly")
    prof = cfg.profile
    if prof.dz <= 0.0 or prof.tol <= 0.0 or prof.tol_c <= 0.0:
        raise ConfigError("profile dz, tol and tol_c must be positive")
    if prof.max_iter < 100:
        raise ConfigError("profile max_iter is too small to converge")
    diag = cfg.diagnostics
    if not (0.0 <= diag.discard_fraction < 1.0):
        raise ConfigError("discard_fraction must lie in [0, 1)")
    if diag.window_hi <= diag.window_lo:
        raise ConfigError("diagnostics window is empty")
    if not (0.0 < diag.band_fraction < 1.0):
        raise ConfigError("band_fraction must lie in (0, 1)")
    if diag.every <= 0.0:
        raise ConfigError("observer cadence must be positive")
    if cfg.model.coeffs is not None and len(cfg.model.coeffs) < 2:
        raise ConfigError("model coeffs need at least a linear term")
    return cfg


def validate_against_spectrum(cfg: RunConfig, c_linear: float,
                              slow: float, fast: float) -> None:
    """Consistency checks that require the dispersion data at speed c."""
    lam = cfg.diagnostics.lam
    if lam is not None and not (slow < lam < fast):
        raise ConfigError(
            "weight rate lam=%.6g outside the decay band (%.6g, %.6g)"
            % (lam, slow, fast)
        )
    sim = cfg.simulation
    span = min(-sim.x_lo, sim.x_hi)
    if span < c_linear * sim.T + 30.0:
        raise ConfigError(
            "domain half-width %.4g cannot outrun the front over T "
            "(needs >= %.4g)" % (span, c_linear * sim.T + 30.0)
        )


def resolve_weight_rate(cfg: RunConfig, slow: float, fast: float) -> float:
    """The weight rate: explicit when configured, else a fixed fraction
    into the decay band (low side, so the weight forgives leading-tail
    mismatch of compliant data at full theoretical strength)."""
    if cfg.diagnostics.lam is not None:
        return float(cfg.diagnostics.lam)
    return slow + cfg.diagnostics.band_fraction * (fast - slow)


def to_dict(cfg: RunConfig) -> dict:
    return asdict(cfg)


def _toml_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return '"%s"' % value
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, list):
        return "[%s]" % ", ".join(_toml_value(v) for v in value)
    raise TypeError("cannot serialize %r" % (value,))


def dump_defaults() -> str:
    """The default configuration as a TOML document (None fields are
    commented out: TOML has no null, absence means 'automatic')."""
    cfg = RunConfig()
    lines = []
    for key in _TOP_SCALARS:
        lines.append("%s = %s" % (key, _toml_value(getattr(cfg, key))))
    for section, _ in _SECTIONS.items():
        lines.append("")
        lines.append("[%s]" % section)
        for f in fields(getattr(cfg, section)):
            value = getattr(getattr(cfg, section), f.name)
            if isinstance(value, dict):
                continue  # emitted as its own sub-table below
            if value is None:
                lines.append("# %s = <automatic>" % f.name)
            else:
                lines.append("%s = %s" % (f.name, _toml_value(value)))
        for f in fields(getattr(cfg, section)):
            value = getattr(getattr(cfg, section), f.name)
            if isinstance(value, dict):
                lines.append("")
                lines.append("[%s.%s]" % (section, f.name))
                if not value:
                    lines.append("# empty: per-kind defaults apply")
                for name, inner in value.items():
                    lines.append("%s = %s" % (name, _toml_value(inner)))
    return "\n".join(lines) + "\n"
