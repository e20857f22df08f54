"""Log-distance propagation, link gains and received powers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .model import Position, PropagationConfig, RadioConfig


class LinkKind(Enum):
    INDOOR = "indoor"
    OUTDOOR = "outdoor_or_cross_wall"


@dataclass(frozen=True)
class LinkGain:
    gain_db: float  # negative of total path loss
    crosses_wall: bool

    @property
    def linear(self) -> float:
        return db_to_linear(self.gain_db)


def db_to_linear(x: float) -> float:
    return 10.0 ** (x / 10.0)


def linear_to_db(x: float) -> float:
    if not x > 0:
        raise ValueError(f"linear_to_db needs a positive ratio, got {x!r}")
    return 10.0 * math.log10(x)


def path_loss_db(
    distance_m: float,
    link_kind: LinkKind,
    prop: PropagationConfig,
    shadowing_db: float = 0.0,
    crosses_wall: bool = False,
) -> float:
    """Path loss in dB at ``distance_m`` (clamped to 1 m), plus wall loss if crossing."""
    if not distance_m > 0:
        raise ValueError(f"distance must be positive, got {distance_m!r}")
    if link_kind is LinkKind.INDOOR:
        n = prop.exponent_indoor
    else:
        n = prop.exponent_outdoor
    loss = prop.ref_loss_db + 10.0 * n * math.log10(max(distance_m, 1.0)) + shadowing_db
    if crosses_wall:
        loss += prop.wall_loss_db
    return loss


def link_gain(
    tx: Position,
    rx: Position,
    tx_indoor: bool,
    rx_indoor: bool,
    prop: PropagationConfig,
    shadow_sample: float = 0.0,
) -> LinkGain:
    """Large-scale gain between two endpoints.

    A link is indoor only when both ends are inside the room; a link with
    exactly one indoor end crosses the wall.
    """
    both_indoor = tx_indoor and rx_indoor
    crosses = tx_indoor != rx_indoor
    kind = LinkKind.INDOOR if both_indoor else LinkKind.OUTDOOR
    # Co-located endpoints fall under the same 1 m clamp as any short link.
    distance = max(tx.distance_to(rx), 1.0)
    loss = path_loss_db(distance, kind, prop, shadow_sample, crosses_wall=crosses)
    return LinkGain(gain_db=-loss, crosses_wall=crosses)


def received_power_dbm(p_max_dbm: float, gain: LinkGain | float) -> float:
    gain_db = gain.gain_db if isinstance(gain, LinkGain) else gain
    return p_max_dbm + gain_db


def noise_power_dbm(radio: RadioConfig) -> float:
    """Thermal noise over the system bandwidth plus the receiver noise figure."""
    if not radio.bandwidth_hz > 0:
        raise ValueError("bandwidth_hz must be positive")
    return radio.noise_density_dbm_per_hz + 10.0 * math.log10(radio.bandwidth_hz) + radio.noise_figure_db
