"""Scenario configuration types with validated construction.

All configs are frozen dataclasses. ``validate`` checks every range
invariant and raises :class:`ConfigError` naming the first bad field.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, is_dataclass, replace
from pathlib import Path
from typing import Any


class ConfigError(ValueError):
    """A configuration field violates its allowed range."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class Position:
    x: float
    y: float

    def distance_to(self, other: "Position") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class RadioConfig:
    bandwidth_hz: float = 6e6
    noise_density_dbm_per_hz: float = -180.0
    noise_figure_db: float = 10.0
    p_max_macro_dbm: float = 40.0
    p_max_fap_dbm: float = 10.0
    # One 10 dB interference threshold; only the sum enters the gate.
    gamma_db: float = 10.0
    psi_db: float = 0.0

    @property
    def gate_margin_db(self) -> float:
        return self.gamma_db + self.psi_db


@dataclass(frozen=True)
class PropagationConfig:
    ref_loss_db: float = 10.0
    exponent_indoor: float = 2.0
    exponent_outdoor: float = 3.5
    wall_loss_db: float = 15.0
    shadowing_sigma_db: float = 8.0


@dataclass(frozen=True)
class GeometryConfig:
    macro_radius_m: float = 1000.0
    fap_radius_m: float = 15.0  # informational; membership is decided by received power
    room_side_m: float = 20.0
    mbs_fap_distance_m: float = 500.0
    n_subscribers: int = 6
    n_indoor_nonsub: int = 10
    n_outdoor_nonsub: int = 12


@dataclass(frozen=True)
class GameConfig:
    beta: float = 0.5
    price: float = 0.0
    chi_mbps: float = 2.0
    periodic_adjustor: float = 1.0

    @property
    def charge_bps(self) -> float:
        """Per-player charge chi * price * adjustor, in bps."""
        return self.chi_mbps * 1e6 * self.price * self.periodic_adjustor


@dataclass(frozen=True)
class ScenarioConfig:
    radio: RadioConfig = field(default_factory=RadioConfig)
    propagation: PropagationConfig = field(default_factory=PropagationConfig)
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    game: GameConfig = field(default_factory=GameConfig)
    n_subchannels: int = 30

    def with_beta(self, beta: float) -> "ScenarioConfig":
        return replace(self, game=replace(self.game, beta=beta))

    def with_price(self, price: float) -> "ScenarioConfig":
        return replace(self, game=replace(self.game, price=price))

    def with_distance(self, d: float) -> "ScenarioConfig":
        return replace(self, geometry=replace(self.geometry, mbs_fap_distance_m=d))

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def default_scenario() -> ScenarioConfig:
    """Reference parameterization (beta = 0.5, price = 0)."""
    return ScenarioConfig()


def _check_finite(cfg: Any, prefix: str) -> None:
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        name = f"{prefix}{f.name}"
        if is_dataclass(value):
            _check_finite(value, name + ".")
        elif isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(name, f"expected a number, got {value!r}")
        elif not math.isfinite(value):
            raise ConfigError(name, "non-finite value")


def _require(ok: bool, name: str, message: str) -> None:
    if not ok:
        raise ConfigError(name, message)


def validate(cfg: ScenarioConfig) -> ScenarioConfig:
    """Return ``cfg`` unchanged if every invariant holds, else raise ConfigError."""
    _check_finite(cfg, "")
    r, p, g, gm = cfg.radio, cfg.propagation, cfg.geometry, cfg.game

    _require(r.bandwidth_hz > 0, "radio.bandwidth_hz", "must be > 0")
    _require(r.gamma_db >= 0, "radio.gamma_db", "must be >= 0")
    _require(r.psi_db >= 0, "radio.psi_db", "must be >= 0")

    _require(p.exponent_indoor > 0, "propagation.exponent_indoor", "must be > 0")
    _require(p.exponent_outdoor > 0, "propagation.exponent_outdoor", "must be > 0")
    _require(p.ref_loss_db >= 0, "propagation.ref_loss_db", "must be >= 0")
    _require(p.wall_loss_db >= 0, "propagation.wall_loss_db", "must be >= 0")
    _require(p.shadowing_sigma_db >= 0, "propagation.shadowing_sigma_db", "must be >= 0")

    for name in ("macro_radius_m", "fap_radius_m", "room_side_m", "mbs_fap_distance_m"):
        _require(getattr(g, name) > 0, f"geometry.{name}", "must be > 0")
    _require(
        g.mbs_fap_distance_m <= g.macro_radius_m,
        "geometry.mbs_fap_distance_m",
        "must be <= macro_radius_m",
    )
    for name in ("n_subscribers", "n_indoor_nonsub", "n_outdoor_nonsub"):
        value = getattr(g, name)
        _require(float(value).is_integer(), f"geometry.{name}", "must be an integer")
        _require(value >= 0, f"geometry.{name}", "must be >= 0")
    _require(g.n_subscribers >= 1, "geometry.n_subscribers", "Q must be >= 1")

    _require(0.0 <= gm.beta <= 1.0, "game.beta", "beta out of [0,1]")
    _require(gm.price >= 0, "game.price", "must be >= 0")
    _require(gm.chi_mbps > 0, "game.chi_mbps", "must be > 0")
    _require(gm.periodic_adjustor > 0, "game.periodic_adjustor", "must be > 0")

    _require(float(cfg.n_subchannels).is_integer(), "n_subchannels", "must be an integer")
    _require(cfg.n_subchannels > 0, "n_subchannels", "must be > 0")
    return cfg


_SECTIONS = {
    "radio": RadioConfig,
    "propagation": PropagationConfig,
    "geometry": GeometryConfig,
    "game": GameConfig,
}


def scenario_from_dict(data: dict[str, Any]) -> ScenarioConfig:
    """Build and validate a scenario from nested mappings; missing keys take defaults."""
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a mapping")
    unknown = set(data) - set(_SECTIONS) - {"n_subchannels"}
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown key")
    kwargs: dict[str, Any] = {}
    for section, cls in _SECTIONS.items():
        raw = data.get(section, {})
        if not isinstance(raw, dict):
            raise ConfigError(section, "expected a mapping")
        known = {f.name for f in fields(cls)}
        bad = set(raw) - known
        if bad:
            raise ConfigError(f"{section}.{sorted(bad)[0]}", "unknown key")
        kwargs[section] = cls(**raw)
    if "n_subchannels" in data:
        kwargs["n_subchannels"] = data["n_subchannels"]
    return validate(ScenarioConfig(**kwargs))


def load_scenario(path: str | Path | None) -> ScenarioConfig:
    """Load a JSON scenario file. ``None`` gives the validated defaults."""
    if path is None:
        return validate(default_scenario())
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    return scenario_from_dict(data)
