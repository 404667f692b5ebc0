"""Run configurations, named presets for every figure panel, and config files.

A ``ScenarioConfig`` holds what the user asked for (``delta`` may be the
string ``"critical"``, ``n_max`` may be ``"auto"``).  ``resolve`` turns it
into concrete parameters and an initial field state.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

from . import model, states
from .model import SingleModeParams, TwoModeParams

MODELS = ("single", "two")
STATE_ALIASES = {
    "cs": "coherent", "coherent": "coherent",
    "sv": "squeezed_vacuum", "squeezed_vacuum": "squeezed_vacuum",
    "pc": "pair_coherent", "pair_coherent": "pair_coherent",
    "tsv": "two_mode_squeezed_vacuum", "two_mode_squeezed_vacuum": "two_mode_squeezed_vacuum",
}
SINGLE_FAMILIES = ("coherent", "squeezed_vacuum")
TWO_FAMILIES = ("pair_coherent", "two_mode_squeezed_vacuum")

DEFAULTS = {
    "single": dict(lam=1e-3, tmax=100.0, dt=0.01),
    "two": dict(lam=2e-3, tmax=20.0, dt=0.005),
}
DEFAULT_AMPLITUDE = {
    "coherent": math.sqrt(30.0),
    "squeezed_vacuum": 2.402,
    "pair_coherent": 1.778,
    "two_mode_squeezed_vacuum": 1.032,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    model: str = "single"
    state: str = "coherent"
    amp: float | None = None
    k: float = 0.0
    delta: float | str = 0.0
    lam: float | None = None
    tmax: float | None = None
    dt: float | None = None
    nmax: int | str = "auto"
    out: str = "-"

    def normalized(self) -> "ScenarioConfig":
        """Fill model defaults and canonicalise names; validates everything it touches."""
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        family = STATE_ALIASES.get(str(self.state).lower())
        if family is None:
            raise ConfigError(f"unknown state {self.state!r}")
        allowed = SINGLE_FAMILIES if self.model == "single" else TWO_FAMILIES
        if family not in allowed:
            raise ConfigError(f"state {family} is not available for the {self.model}-mode model")
        d = DEFAULTS[self.model]
        cfg = replace(
            self,
            state=family,
            amp=DEFAULT_AMPLITUDE[family] if self.amp is None else float(self.amp),
            lam=d["lam"] if self.lam is None else float(self.lam),
            tmax=d["tmax"] if self.tmax is None else float(self.tmax),
            dt=d["dt"] if self.dt is None else float(self.dt),
            k=float(self.k),
        )
        if isinstance(cfg.delta, str):
            if cfg.delta.lower() != "critical":
                cfg = replace(cfg, delta=_to_float("delta", cfg.delta))
            else:
                cfg = replace(cfg, delta="critical")
        else:
            cfg = replace(cfg, delta=float(cfg.delta))
        if isinstance(cfg.nmax, str):
            if cfg.nmax.lower() != "auto":
                cfg = replace(cfg, nmax=_to_int("nmax", cfg.nmax))
            else:
                cfg = replace(cfg, nmax="auto")
        if cfg.amp < 0:
            raise ConfigError("amp must be nonnegative")
        if cfg.tmax <= 0 or cfg.dt <= 0:
            raise ConfigError("tmax and dt must be positive")
        if not isinstance(cfg.nmax, str) and cfg.nmax < 2:
            raise ConfigError("nmax must be at least 2")
        return cfg


@dataclass(frozen=True)
class ResolvedScenario:
    config: ScenarioConfig
    params: SingleModeParams | TwoModeParams
    field: states.FockVector
    mean_photons: float


def mean_for_amplitude(family: str, amp: float) -> float:
    """Mean (total, for paired states) photon number of ``family`` at amplitude ``amp``."""
    if family == "coherent":
        return amp * amp
    if family == "squeezed_vacuum":
        return math.sinh(amp) ** 2
    if family == "two_mode_squeezed_vacuum":
        return 2.0 * math.sinh(amp) ** 2
    if family == "pair_coherent":
        return states._pc_total_mean(amp)
    raise ConfigError(f"unknown state family {family!r}")


def build_state(family: str, amp: float, n_max: int) -> states.FockVector:
    if family == "coherent":
        return states.coherent(amp, n_max)
    if family == "squeezed_vacuum":
        return states.squeezed_vacuum(amp, n_max=n_max)
    if family == "pair_coherent":
        return states.pair_coherent(amp, n_max)
    if family == "two_mode_squeezed_vacuum":
        return states.two_mode_squeezed_vacuum(amp, n_max)
    raise ConfigError(f"unknown state family {family!r}")


def critical_detuning(model_name: str, mean: float, k: float, lam: float) -> float:
    if k == 0:
        raise ConfigError(
            "critical detuning is undefined for k = 0: the Rabi frequency has no "
            "minimum over photon number without deformation"
        )
    if model_name == "single":
        return float(model.critical_detuning_single(mean, SingleModeParams(lam=lam, k=k)))
    return float(model.critical_detuning_two(mean, TwoModeParams(lam=lam, k=k)))


def resolve(config: ScenarioConfig) -> ResolvedScenario:
    cfg = config.normalized()
    mean = mean_for_amplitude(cfg.state, cfg.amp)
    n_max = (states.auto_truncation(mean, family=cfg.state) if cfg.nmax == "auto"
             else int(cfg.nmax))
    try:
        field = build_state(cfg.state, cfg.amp, n_max)
    except states.TruncationError as exc:
        raise ConfigError(str(exc)) from exc
    mean = states.mean_photon_number(field)
    delta = cfg.delta
    if delta == "critical":
        delta = critical_detuning(cfg.model, mean, cfg.k, cfg.lam)
    try:
        if cfg.model == "single":
            params = SingleModeParams(lam=cfg.lam, k=cfg.k, delta=delta)
        else:
            params = TwoModeParams(lam=cfg.lam, k=cfg.k, delta=delta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ResolvedScenario(replace(cfg, delta=delta, nmax=n_max), params, field, mean)


# --- presets --------------------------------------------------------------

def _single_grid(state: str) -> list[ScenarioConfig]:
    # column-major: k = 0, 1e-4, 1e-3; three detunings per column
    columns = [
        (0.0, (0.0, 0.01, 0.016061)),
        (1e-4, (0.0, 0.01, "critical")),
        (1e-3, (0.0, 0.05, "critical")),
    ]
    return [ScenarioConfig(model="single", state=state, k=k, delta=d)
            for k, deltas in columns for d in deltas]


def _two_grid(state: str) -> list[ScenarioConfig]:
    return [ScenarioConfig(model="two", state=state, k=k, delta=d)
            for k in (0.0, 2e-3) for d in (0.0, 0.01, 0.0161)]


def _label(fig: int, items: list[ScenarioConfig]) -> dict[str, ScenarioConfig]:
    return {f"fig{fig}{chr(ord('a') + i)}": cfg for i, cfg in enumerate(items)}


PRESETS: dict[str, ScenarioConfig] = {
    **_label(1, _single_grid("coherent")),
    **_label(2, _single_grid("squeezed_vacuum")),
    **_label(3, [ScenarioConfig(model="single", state="coherent", amp=1.0, k=1e-2),
                 ScenarioConfig(model="single", state="coherent", amp=math.sqrt(30.0), k=1e-2)]),
    **_label(4, _single_grid("coherent")),
    **_label(5, _single_grid("squeezed_vacuum")),
    **_label(6, _two_grid("pair_coherent")),
    **_label(7, _two_grid("two_mode_squeezed_vacuum")),
    **_label(8, _two_grid("pair_coherent")),
    **_label(9, _two_grid("two_mode_squeezed_vacuum")),
}


# --- key=value files ------------------------------------------------------

_KEY_ALIASES = {"lambda": "lam", "t_max": "tmax", "n_max": "nmax", "output": "out"}
_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)} | {"preset"}


def _to_float(key: str, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {value!r}") from None


def _to_int(key: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


def parse_config_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment, blank lines are ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = _KEY_ALIASES.get(key.lower(), key.lower())
        if key not in _FIELD_NAMES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = value
    return out


def from_mapping(values: dict) -> ScenarioConfig:
    """Build a config from string or typed values; a ``preset`` entry is the base."""
    values = dict(values)
    base = ScenarioConfig()
    preset = values.pop("preset", None)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}")
        base = PRESETS[preset]
    updates = {}
    for key, value in values.items():
        if value is None:
            continue
        if key in ("amp", "k", "lam", "tmax", "dt"):
            updates[key] = _to_float(key, value)
        else:
            updates[key] = value
    return replace(base, **updates)


def describe(config: ScenarioConfig) -> str:
    """The fully resolved configuration as key=value lines (loadable as a config file)."""
    res = resolve(config)
    lines = [f"{key}={value}" for key, value in asdict(res.config).items()]
    lines.append(f"# mean photon number {res.mean_photons:.12g}")
    return "\n".join(lines) + "\n"
