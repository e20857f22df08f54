"""Cell-selection game: pure Nash equilibria, best-response dynamics, revenue.

Each player's payoff depends only on its own action and on how many
other players chose the femtocell, so equilibria are characterized by
the femto count m. ``ne_scan`` uses that; ``exhaustive_ne`` enumerates
all 2^Z profiles as an independent check.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .access import Drop
from .capacity import RateBreakdown, femto_utility, macro_utility, rate_breakdown
from .model import GameConfig


MACRO, FEMTO = 0, 1
MAX_EXHAUSTIVE_PLAYERS = 20


class NoPureEquilibrium(RuntimeError):
    pass


class NonConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class StrategyProfile:
    choices: tuple[int, ...]

    @property
    def m(self) -> int:
        return sum(self.choices)

    @classmethod
    def first_m(cls, z: int, m: int) -> "StrategyProfile":
        """Lowest-id players on femto."""
        return cls(tuple([FEMTO] * m + [MACRO] * (z - m)))


@dataclass(frozen=True)
class EquilibriumReport:
    ne_counts: tuple[int, ...]
    selected_m: int
    selected_profile: StrategyProfile
    u0_at_ne: float | None  # None when no UE is left on the macro cell
    u1_at_ne: float | None  # None when nobody is on femto
    revenue: float
    rates: RateBreakdown


@dataclass(frozen=True)
class UtilityTable:
    """u0[m] and u1[m] for m = 0..Z; u0[Z] is None when X = 0."""

    u0: tuple[float | None, ...]
    u1: tuple[float, ...]

    @property
    def z(self) -> int:
        return len(self.u1) - 1


def utility_table(drop: Drop, game: GameConfig) -> UtilityTable:
    z = drop.z_count
    u0 = tuple(
        macro_utility(drop, m) if drop.x_count + z - m >= 1 else None for m in range(z + 1)
    )
    u1 = tuple(femto_utility(drop, m, game) for m in range(z + 1))
    return UtilityTable(u0, u1)


def _is_ne_count(t: UtilityTable, m: int) -> bool:
    # A femto player leaving faces u0 at count m-1; a macro player joining gets u1(m+1).
    stay_femto = m == 0 or t.u1[m] >= t.u0[m - 1]
    stay_macro = m == t.z or t.u0[m] >= t.u1[m + 1]
    return stay_femto and stay_macro


def ne_scan(drop: Drop, game: GameConfig, table: UtilityTable | None = None) -> list[int]:
    """Every femto count m in [0, Z] that is a pure Nash equilibrium."""
    t = table or utility_table(drop, game)
    counts = [m for m in range(t.z + 1) if _is_ne_count(t, m)]
    if not counts:
        warnings.warn(f"no pure NE count on drop with Z={t.z}", RuntimeWarning, stacklevel=2)
    return counts


def exhaustive_ne(drop: Drop, game: GameConfig) -> list[StrategyProfile]:
    """Brute-force every profile and keep those with no strictly improving deviation."""
    z = drop.z_count
    if z > MAX_EXHAUSTIVE_PLAYERS:
        raise ValueError(f"Z={z} too large for exhaustive enumeration (max {MAX_EXHAUSTIVE_PLAYERS})")
    n_macro_slots = drop.x_count + z
    # Payoffs indexed by the post-action femto count; nan where no macro slot exists.
    u0 = np.array([macro_utility(drop, k) if n_macro_slots - k >= 1 else np.nan for k in range(z + 1)])
    u1 = np.array([femto_utility(drop, k, game) for k in range(z + 1)])

    profiles = (np.arange(2**z)[:, None] >> np.arange(z)) & 1
    m = profiles.sum(axis=1)
    on_femto = profiles.astype(bool)
    # Payoff now and payoff after a unilateral switch, per (profile, player).
    now = np.where(on_femto, u1[m][:, None], u0[np.minimum(m, z)][:, None])
    alt_count = np.where(on_femto, m[:, None] - 1, m[:, None] + 1)
    alt_count = np.clip(alt_count, 0, z)
    after = np.where(on_femto, u0[alt_count], u1[alt_count])
    improves = after > now
    stable = ~improves.any(axis=1)
    return [StrategyProfile(tuple(int(b) for b in row)) for row in profiles[stable]]


def best_response(
    drop: Drop,
    game: GameConfig,
    initial: StrategyProfile,
    table: UtilityTable | None = None,
) -> StrategyProfile:
    """Sequential best-response in player-id order; switches only on strict gain."""
    t = table or utility_table(drop, game)
    z = t.z
    if len(initial.choices) != z:
        raise ValueError(f"profile length {len(initial.choices)} != Z={z}")
    choices = list(initial.choices)
    m = sum(choices)
    history = [m]
    for _ in range(50 * (z + 1)):
        changed = False
        for i in range(z):
            if choices[i] == FEMTO:
                if t.u0[m - 1] > t.u1[m]:
                    choices[i], m, changed = MACRO, m - 1, True
            elif t.u1[m + 1] > t.u0[m]:
                choices[i], m, changed = FEMTO, m + 1, True
        history.append(m)
        if not changed:
            if not _is_ne_count(t, m):
                raise AssertionError(f"best-response fixpoint m={m} violates NE conditions")
            return StrategyProfile(tuple(choices))
    raise NonConvergence(f"best response did not converge; recent m values {history[-10:]}")


def revenue(m: int, game: GameConfig) -> float:
    """Operator income chi * price * adjustor * m (chi in Mbps)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return game.chi_mbps * game.price * game.periodic_adjustor * m


def _drop_dump(drop: Drop) -> str:
    return "; ".join(
        f"ue{u.id} {u.category.value} ({u.position.x:.1f},{u.position.y:.1f}) "
        f"S0={u.rsp_macro_dbm:.2f} S1={u.rsp_fap_dbm:.2f}"
        for u in drop.ues
    )


def solve(drop: Drop, game: GameConfig) -> EquilibriumReport:
    """Equilibrium reached by best response from the all-macro profile."""
    t = utility_table(drop, game)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        counts = ne_scan(drop, game, t)
    if not counts:
        raise NoPureEquilibrium(f"no pure NE; drop: {_drop_dump(drop)}")
    profile = best_response(drop, game, StrategyProfile.first_m(t.z, 0), t)
    m = profile.m
    if m not in counts:
        raise AssertionError(f"selected m={m} not in NE set {counts}")
    return EquilibriumReport(
        ne_counts=tuple(counts),
        selected_m=m,
        selected_profile=profile,
        u0_at_ne=t.u0[m],
        u1_at_ne=t.u1[m] if m else None,
        revenue=revenue(m, game),
        rates=rate_breakdown(drop, profile.choices, game),
    )


def optimal_price(drop: Drop, game: GameConfig, price_grid: Sequence[float]) -> tuple[float, float]:
    """First grid price maximizing operator revenue on this drop."""
    if len(price_grid) == 0:
        raise ValueError("price grid is empty")
    best_price, best_rev = None, -np.inf
    for phi in price_grid:
        if phi < 0:
            raise ValueError(f"negative price {phi}")
        g = GameConfig(game.beta, phi, game.chi_mbps, game.periodic_adjustor)
        rev = solve(drop, g).revenue
        if rev > best_rev:
            best_price, best_rev = phi, rev
    return best_price, best_rev
