"""UE roles, P/P* classification, the FAP power gate and the mute count D."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .channel import LinkGain, link_gain, noise_power_dbm, received_power_dbm
from .model import Position, RadioConfig, ScenarioConfig

MBS_POSITION = Position(0.0, 0.0)


class Category(Enum):
    SUBSCRIBER = "subscriber"
    INDOOR_NONSUB = "indoor_nonsub"
    OUTDOOR_NONSUB = "outdoor_nonsub"

    @property
    def indoor(self) -> bool:
        return self is not Category.OUTDOOR_NONSUB


class Role(Enum):
    SUBSCRIBER = "subscriber"
    PLAYER = "player"
    INDEPENDENT = "independent"


class Gate(Enum):
    TRANSMIT_FULL = "transmit_full"
    MUTE = "mute"


@dataclass(frozen=True)
class UeRecord:
    id: int
    category: Category
    position: Position
    gain_macro: LinkGain
    gain_fap: LinkGain
    rsp_macro_dbm: float
    rsp_fap_dbm: float
    in_p_set: bool
    role: Role


@dataclass(frozen=True)
class Drop:
    ues: tuple[UeRecord, ...]
    x_count: int
    z_count: int
    q_count: int
    d_count: int
    noise_dbm: float
    scenario: ScenarioConfig
    fap_position: Position

    @property
    def subscribers(self) -> list[UeRecord]:
        return [u for u in self.ues if u.role is Role.SUBSCRIBER]

    @property
    def players(self) -> list[UeRecord]:
        """Players in id order; index in this list is the player id."""
        return [u for u in self.ues if u.role is Role.PLAYER]

    @property
    def independents(self) -> list[UeRecord]:
        return [u for u in self.ues if u.role is Role.INDEPENDENT]


def in_p_set(rsp_fap_dbm: float, rsp_macro_dbm: float) -> bool:
    # Ties go to P*.
    return rsp_fap_dbm > rsp_macro_dbm


def role_for(category: Category, rsp_fap_dbm: float, rsp_macro_dbm: float) -> tuple[bool, Role]:
    if category is Category.SUBSCRIBER:
        return True, Role.SUBSCRIBER
    if in_p_set(rsp_fap_dbm, rsp_macro_dbm):
        return True, Role.PLAYER
    return False, Role.INDEPENDENT


def classify(ues: Iterable[UeRecord]) -> tuple[list[UeRecord], list[UeRecord]]:
    """Split UEs into (P, P*) by received power; subscribers always land in P."""
    p_set, p_star = [], []
    for ue in ues:
        member, _ = role_for(ue.category, ue.rsp_fap_dbm, ue.rsp_macro_dbm)
        (p_set if member else p_star).append(ue)
    return p_set, p_star


def fap_gate(ue: UeRecord, radio: RadioConfig) -> Gate:
    """FAP power level in the slot of a macro-connected UE.

    Full power only if the FAP signal at the UE sits at least
    gamma + psi dB below the macro signal.
    """
    if ue.rsp_fap_dbm + radio.gate_margin_db <= ue.rsp_macro_dbm:
        return Gate.TRANSMIT_FULL
    return Gate.MUTE


def mute_count(drop: Drop) -> int:
    radio = drop.scenario.radio
    return sum(1 for ue in drop.independents if fap_gate(ue, radio) is Gate.MUTE)


def make_ue(
    ue_id: int,
    category: Category,
    position: Position,
    scenario: ScenarioConfig,
    fap_position: Position,
    shadow_macro_db: float = 0.0,
    shadow_fap_db: float = 0.0,
) -> UeRecord:
    prop, radio = scenario.propagation, scenario.radio
    g0 = link_gain(MBS_POSITION, position, False, category.indoor, prop, shadow_macro_db)
    g1 = link_gain(fap_position, position, True, category.indoor, prop, shadow_fap_db)
    s0 = received_power_dbm(radio.p_max_macro_dbm, g0)
    s1 = received_power_dbm(radio.p_max_fap_dbm, g1)
    member, role = role_for(category, s1, s0)
    return UeRecord(ue_id, category, position, g0, g1, s0, s1, member, role)


def build_drop(
    scenario: ScenarioConfig,
    placements: Sequence[tuple[Category, Position]],
    shadows: Sequence[tuple[float, float]] | None = None,
) -> Drop:
    """Assemble a Drop from explicit UE placements.

    ``shadows`` holds one (macro link, FAP link) shadowing pair in dB per
    UE; omitted means no shadowing. MBS sits at the origin and the FAP at
    (d, 0).
    """
    fap = Position(scenario.geometry.mbs_fap_distance_m, 0.0)
    if shadows is None:
        shadows = [(0.0, 0.0)] * len(placements)
    if len(shadows) != len(placements):
        raise ValueError("need one shadowing pair per placement")
    ues = tuple(
        make_ue(i, cat, pos, scenario, fap, s0, s1)
        for i, ((cat, pos), (s0, s1)) in enumerate(zip(placements, shadows))
    )
    return drop_from_ues(scenario, ues, fap)


def drop_from_ues(scenario: ScenarioConfig, ues: tuple[UeRecord, ...], fap: Position) -> Drop:
    x = sum(1 for u in ues if u.role is Role.INDEPENDENT)
    z = sum(1 for u in ues if u.role is Role.PLAYER)
    q = sum(1 for u in ues if u.role is Role.SUBSCRIBER)
    radio = scenario.radio
    d = sum(1 for u in ues if u.role is Role.INDEPENDENT and fap_gate(u, radio) is Gate.MUTE)
    return Drop(ues, x, z, q, d, noise_power_dbm(radio), scenario, fap)
