"""Round-robin rate formulas: FAP cell capacity, player utilities, per-UE rates.

All rates are in bps. Game utilities use worst-UE link terms so they
depend on the femto count m only; reported per-UE rates on the macro
side use each UE's own links.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .access import Drop, Gate, Role, UeRecord, fap_gate
from .channel import db_to_linear
from .model import GameConfig


class SlotError(ValueError):
    """A rate was requested for a state with no macro slots to share."""


@dataclass(frozen=True)
class RateBreakdown:
    per_player_bps: float
    per_subscriber_bps: float
    per_independent_bps: float
    system_avg_bps: float
    fap_cell_capacity_bps: float
    ue_rates_bps: tuple[float, ...]  # indexed by UE id
    m: int


def femto_sinr(drop: Drop, ue: UeRecord) -> float:
    """Downlink SINR from the FAP with the macro signal as interference (linear)."""
    noise = db_to_linear(drop.noise_dbm)
    return db_to_linear(ue.rsp_fap_dbm) / (noise + db_to_linear(ue.rsp_macro_dbm))


def macro_snr(drop: Drop, ue: UeRecord) -> float:
    return db_to_linear(ue.rsp_macro_dbm) / db_to_linear(drop.noise_dbm)


def worst_femto_sinr(drop: Drop, femto_set: Sequence[UeRecord] | None = None) -> tuple[float, int]:
    """(min SINR, UE id) over ``femto_set``; defaults to every UE in P."""
    if femto_set is None:
        femto_set = [u for u in drop.ues if u.in_p_set]
    if not femto_set:
        raise ValueError("worst_femto_sinr needs a non-empty femto set")
    return min((femto_sinr(drop, u), u.id) for u in femto_set)


def worst_macro_snr(drop: Drop, macro_set: Sequence[UeRecord] | None = None) -> tuple[float, int]:
    """(min SNR, UE id) over ``macro_set``; defaults to every nonsubscriber."""
    if macro_set is None:
        macro_set = [u for u in drop.ues if u.role is not Role.SUBSCRIBER]
    if not macro_set:
        raise ValueError("worst_macro_snr needs a non-empty macro set")
    return min((macro_snr(drop, u), u.id) for u in macro_set)


def _check_m(drop: Drop, m: int) -> int:
    if not 0 <= m <= drop.z_count:
        raise ValueError(f"m={m} outside [0, Z={drop.z_count}]")
    return drop.x_count + drop.z_count - m


def fap_capacity_ungated(drop: Drop, m: int) -> float:
    """FAP capacity if it could transmit in every macro slot.

    Every slot term uses the same worst-UE SINR, so the slot average
    collapses to W * log2(1 + SINR_worst).
    """
    if _check_m(drop, m) < 1:
        raise SlotError("no macro slots (X + Z - m = 0)")
    sinr, _ = worst_femto_sinr(drop)
    return drop.scenario.radio.bandwidth_hz * math.log2(1.0 + sinr)


def fap_capacity(drop: Drop, m: int) -> float:
    """FAP capacity over the X - D independent slots where it may transmit."""
    slots = _check_m(drop, m)
    active = drop.x_count - drop.d_count
    if active == 0:
        # FAP is silent in every slot; also covers X = 0 with m = Z.
        return 0.0
    sinr, _ = worst_femto_sinr(drop)
    return active * drop.scenario.radio.bandwidth_hz / slots * math.log2(1.0 + sinr)


def macro_utility(drop: Drop, m: int) -> float:
    """u0(m): one round-robin slot share at the worst macro SNR."""
    slots = _check_m(drop, m)
    if slots < 1:
        raise SlotError("no macro UEs (X + Z - m = 0)")
    snr, _ = worst_macro_snr(drop)
    return drop.scenario.radio.bandwidth_hz / slots * math.log2(1.0 + snr)


def femto_share(drop: Drop, m: int, beta: float) -> float:
    """Gross FAP rate of one femto player, before the access charge."""
    return (1.0 - beta) / (drop.q_count + m) * fap_capacity(drop, m)


def femto_utility(drop: Drop, m: int, game: GameConfig) -> float:
    """u1(m): femto player share of the FAP minus the access charge (may be negative)."""
    return femto_share(drop, m, game.beta) - game.charge_bps


def subscriber_rate(drop: Drop, m: int, beta: float) -> float:
    """Reserved beta/Q share plus the open (1-beta)/(Q+m) share of the FAP."""
    q = drop.q_count
    return (beta / q + (1.0 - beta) / (q + m)) * fap_capacity(drop, m)


def macro_ue_rate(drop: Drop, ue: UeRecord, m: int) -> float:
    """Own-link rate of a macro-connected UE in its round-robin slot.

    The FAP interferes only in slots where the gate lets it transmit.
    """
    slots = drop.x_count + drop.z_count - m
    signal = db_to_linear(ue.rsp_macro_dbm)
    interference = 0.0
    if fap_gate(ue, drop.scenario.radio) is Gate.TRANSMIT_FULL:
        interference = db_to_linear(ue.rsp_fap_dbm)
    sinr = signal / (db_to_linear(drop.noise_dbm) + interference)
    return drop.scenario.radio.bandwidth_hz / slots * math.log2(1.0 + sinr)


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else 0.0


def rate_breakdown(drop: Drop, choices: Sequence[int], game: GameConfig) -> RateBreakdown:
    """Per-category average rates for a strategy profile.

    ``choices[k]`` is the action of the k-th player (1 = femto).
    """
    players = drop.players
    if len(choices) != len(players):
        raise ValueError(f"profile length {len(choices)} != Z={len(players)}")
    m = int(sum(choices))
    rates = [0.0] * len(drop.ues)
    sub = subscriber_rate(drop, m, game.beta)
    share = femto_share(drop, m, game.beta) if m else 0.0
    for ue in drop.subscribers:
        rates[ue.id] = sub
    player_rates = []
    for ue, c in zip(players, choices):
        rates[ue.id] = share if c else macro_ue_rate(drop, ue, m)
        player_rates.append(rates[ue.id])
    indep_rates = []
    for ue in drop.independents:
        rates[ue.id] = macro_ue_rate(drop, ue, m)
        indep_rates.append(rates[ue.id])
    return RateBreakdown(
        per_player_bps=_mean(player_rates),
        per_subscriber_bps=sub,
        per_independent_bps=_mean(indep_rates),
        system_avg_bps=_mean(rates),
        fap_cell_capacity_bps=fap_capacity(drop, m),
        ue_rates_bps=tuple(rates),
        m=m,
    )
