"""Voice/data sub-channel pool with recall-before-lend borrowing."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Iterator


@dataclass(frozen=True)
class ChannelPool:
    total: int = 30
    voice_owned: int = 15
    data_owned: int = 15
    voice_lent_to_data: int = 0
    data_lent_to_voice: int = 0
    voice_demand: int = 0
    data_demand: int = 0

    def __post_init__(self):
        if self.voice_owned < 0 or self.data_owned < 0:
            raise ValueError("owned counts must be >= 0")
        if self.voice_owned + self.data_owned != self.total:
            raise ValueError("voice_owned + data_owned must equal total")
        if not 0 <= self.voice_lent_to_data <= self.voice_owned:
            raise ValueError("voice loan exceeds voice ownership")
        if not 0 <= self.data_lent_to_voice <= self.data_owned:
            raise ValueError("data loan exceeds data ownership")
        if self.voice_lent_to_data and self.data_lent_to_voice:
            raise ValueError("loans in both directions")

    @classmethod
    def split(cls, total: int = 30, voice_owned: int | None = None) -> "ChannelPool":
        if voice_owned is None:
            voice_owned = total // 2
        return cls(total=total, voice_owned=voice_owned, data_owned=total - voice_owned)

    @property
    def effective_voice(self) -> int:
        return self.voice_owned - self.voice_lent_to_data + self.data_lent_to_voice

    @property
    def effective_data(self) -> int:
        return self.data_owned - self.data_lent_to_voice + self.voice_lent_to_data


def rebalance(pool: ChannelPool, voice_demand: int, data_demand: int) -> ChannelPool:
    """Recall loans the lender now needs, then let a short category borrow idle channels."""
    if voice_demand < 0 or data_demand < 0:
        raise ValueError("demands must be >= 0")
    v_loan, d_loan = pool.voice_lent_to_data, pool.data_lent_to_voice

    voice_deficit = max(0, voice_demand - (pool.voice_owned - v_loan))
    v_loan = max(0, v_loan - voice_deficit)
    data_deficit = max(0, data_demand - (pool.data_owned - d_loan))
    d_loan = max(0, d_loan - data_deficit)

    eff_v = pool.voice_owned - v_loan + d_loan
    eff_d = pool.data_owned - d_loan + v_loan
    if voice_demand > eff_v:
        idle = max(0, eff_d - data_demand)
        moved = min(voice_demand - eff_v, idle)
        # Pay back what voice lent before borrowing in the other direction.
        back = min(moved, v_loan)
        v_loan -= back
        d_loan += moved - back
    elif data_demand > eff_d:
        idle = max(0, eff_v - voice_demand)
        moved = min(data_demand - eff_d, idle)
        back = min(moved, d_loan)
        d_loan -= back
        v_loan += moved - back

    return replace(
        pool,
        voice_lent_to_data=v_loan,
        data_lent_to_voice=d_loan,
        voice_demand=voice_demand,
        data_demand=data_demand,
    )


def blocked(pool: ChannelPool) -> tuple[int, int]:
    """Unserved demand per category: (voice, data)."""
    return (
        max(0, pool.voice_demand - pool.effective_voice),
        max(0, pool.data_demand - pool.effective_data),
    )


def run_trace(pool: ChannelPool, demands: Iterable[tuple[int, int]]) -> Iterator[ChannelPool]:
    for v, d in demands:
        pool = rebalance(pool, v, d)
        yield pool
