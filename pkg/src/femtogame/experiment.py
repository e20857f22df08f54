"""Monte Carlo drop generation and the beta / distance / price sweeps.

Random numbers come from numpy's ``SeedSequence`` feeding a PCG64
``Generator``. Every UE owns a substream keyed by
``(drop_index, category, index_within_category)``, so adding UEs never
perturbs the draws of existing ones, and the draws are independent of the
swept parameter (common random numbers across grid values).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Sequence

import numpy as np

from .access import Category, Drop, build_drop
from .game import NoPureEquilibrium, solve
from .model import Position, ScenarioConfig, validate

KINDS = ("beta", "distance", "price")
_CATEGORY_CODE = {Category.SUBSCRIBER: 0, Category.INDOOR_NONSUB: 1, Category.OUTDOOR_NONSUB: 2}
_CANDIDATES = 8  # pre-drawn outdoor positions; one lands in the room with p ~ 1e-4

DEFAULT_GRIDS = {
    "beta": [i / 10 for i in range(11)],
    "distance": [100.0 * i for i in range(1, 10)],
    "price": [i / 2 for i in range(17)],
}


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class UeDraws:
    category: Category
    shadow_macro: float  # standard normal, scaled by sigma at realization
    shadow_fap: float
    uniforms: tuple[float, ...]  # 2 per candidate position


@dataclass(frozen=True)
class SweepSpec:
    kind: str
    grid: tuple[float, ...]
    n_drops: int = 1000
    seed: int = 0

    def check(self, scenario: ScenarioConfig) -> "SweepSpec":
        if self.kind not in KINDS:
            raise ValueError(f"unknown sweep kind {self.kind!r}")
        if not self.grid:
            raise ValueError("grid must be non-empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if any(not math.isfinite(v) for v in self.grid):
            raise ValueError("grid values must be finite")
        if self.kind == "beta" and not all(0.0 <= v <= 1.0 for v in self.grid):
            raise ValueError("beta grid must lie in [0, 1]")
        if self.kind == "distance" and not all(
            0.0 < v <= scenario.geometry.macro_radius_m for v in self.grid
        ):
            raise ValueError("distance grid must lie in (0, macro_radius_m]")
        if self.kind == "price" and not all(v >= 0 for v in self.grid):
            raise ValueError("price grid must be >= 0")
        if self.n_drops < 1:
            raise ValueError("n_drops must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        return self


@dataclass(frozen=True)
class SweepRow:
    grid_value: float
    avg_player_bps: float
    avg_subscriber_bps: float
    avg_independent_bps: float
    avg_system_bps: float
    avg_m: float
    avg_revenue: float
    ne_multiplicity_rate: float


COLUMNS = tuple(f.name for f in fields(SweepRow))


def _ue_categories(scenario: ScenarioConfig) -> list[tuple[Category, int]]:
    g = scenario.geometry
    out = [(Category.SUBSCRIBER, k) for k in range(g.n_subscribers)]
    out += [(Category.INDOOR_NONSUB, k) for k in range(g.n_indoor_nonsub)]
    out += [(Category.OUTDOOR_NONSUB, k) for k in range(g.n_outdoor_nonsub)]
    return out


def _substream(seed: int, drop_index: int, category: Category, k: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(drop_index, _CATEGORY_CODE[category], k))
    return np.random.Generator(np.random.PCG64(ss))


def draw_randoms(scenario: ScenarioConfig, seed: int, drop_index: int) -> tuple[UeDraws, ...]:
    """All random inputs of one drop; they do not depend on d, beta or price."""
    out = []
    for category, k in _ue_categories(scenario):
        rng = _substream(seed, drop_index, category, k)
        normals = rng.standard_normal(2)
        n_uniform = 2 if category.indoor else 2 * _CANDIDATES
        out.append(UeDraws(category, float(normals[0]), float(normals[1]), tuple(rng.random(n_uniform))))
    return tuple(out)


def _in_room(x: float, y: float, fap: Position, half: float) -> bool:
    return abs(x - fap.x) <= half and abs(y - fap.y) <= half


def _outdoor_position(u: Sequence[float], fap: Position, half: float, radius: float, rng_key) -> Position:
    pairs = [(u[i], u[i + 1]) for i in range(0, len(u), 2)]
    for a, b in pairs:
        r, theta = radius * math.sqrt(a), 2.0 * math.pi * b
        x, y = r * math.cos(theta), r * math.sin(theta)
        if not _in_room(x, y, fap, half):
            return Position(x, y)
    # Every candidate fell in the room: keep drawing from a dedicated stream.
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(rng_key[0], spawn_key=rng_key[1:])))
    while True:
        a, b = rng.random(2)
        r, theta = radius * math.sqrt(a), 2.0 * math.pi * b
        x, y = r * math.cos(theta), r * math.sin(theta)
        if not _in_room(x, y, fap, half):
            return Position(x, y)


def realize_drop(scenario: ScenarioConfig, draws: Sequence[UeDraws], seed: int = 0, drop_index: int = 0) -> Drop:
    """Place UEs and apply shadowing for the scenario's geometry."""
    g, sigma = scenario.geometry, scenario.propagation.shadowing_sigma_db
    fap = Position(g.mbs_fap_distance_m, 0.0)
    half = g.room_side_m / 2.0
    placements, shadows = [], []
    counters = {c: 0 for c in Category}
    for d in draws:
        k = counters[d.category]
        counters[d.category] += 1
        if d.category.indoor:
            pos = Position(fap.x + (d.uniforms[0] - 0.5) * g.room_side_m, fap.y + (d.uniforms[1] - 0.5) * g.room_side_m)
        else:
            key = (seed, drop_index, _CATEGORY_CODE[d.category], k, 1)
            pos = _outdoor_position(d.uniforms, fap, half, g.macro_radius_m, key)
        placements.append((d.category, pos))
        shadows.append((sigma * d.shadow_macro, sigma * d.shadow_fap))
    return build_drop(scenario, placements, shadows)


def generate_drop(scenario: ScenarioConfig, seed: int, drop_index: int) -> Drop:
    """One network realization, fully determined by (seed, drop_index)."""
    validate(scenario)
    return realize_drop(scenario, draw_randoms(scenario, seed, drop_index), seed, drop_index)


def _override(scenario: ScenarioConfig, kind: str, value: float) -> ScenarioConfig:
    if kind == "beta":
        return scenario.with_beta(value)
    if kind == "distance":
        return scenario.with_distance(value)
    return scenario.with_price(value)


# Per (drop, grid value): sums and counts needed for pooled averages.
_Stats = tuple[float, int, float, int, float, int, float, int, int, float, bool]


def _evaluate_drop(args) -> list[_Stats]:
    scenario, kind, grid, seed, index = args
    draws = draw_randoms(scenario, seed, index)
    base_drop = realize_drop(scenario, draws, seed, index) if kind != "distance" else None
    out = []
    for value in grid:
        sc = _override(scenario, kind, value)
        drop = realize_drop(sc, draws, seed, index) if base_drop is None else base_drop
        try:
            rep = solve(drop, sc.game)
        except NoPureEquilibrium as exc:
            raise SweepError(f"empty NE set at seed={seed} drop_index={index} {kind}={value}: {exc}") from exc
        rates = rep.rates.ue_rates_bps
        z, x, q = drop.z_count, drop.x_count, drop.q_count
        out.append((
            rep.rates.per_player_bps * z, z,
            rep.rates.per_subscriber_bps * q, q,
            rep.rates.per_independent_bps * x, x,
            math.fsum(rates), len(rates),
            rep.selected_m, rep.revenue, len(rep.ne_counts) > 1,
        ))
    return out


def _ratio(num: float, den: int) -> float:
    return num / den if den else 0.0


def run_sweep(scenario: ScenarioConfig, spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Average equilibrium outcomes over drops 0..n_drops-1 at each grid value."""
    validate(scenario)
    spec.check(scenario)
    for value in spec.grid:
        validate(_override(scenario, spec.kind, value))
    jobs = [(scenario, spec.kind, spec.grid, spec.seed, i) for i in range(spec.n_drops)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_drop = list(pool.map(_evaluate_drop, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        per_drop = [_evaluate_drop(j) for j in jobs]

    n = spec.n_drops
    rows = []
    for g_idx, value in enumerate(spec.grid):
        stats = [d[g_idx] for d in per_drop]  # drop-index order
        col = list(zip(*stats))
        rows.append(SweepRow(
            grid_value=float(value),
            avg_player_bps=_ratio(math.fsum(col[0]), sum(col[1])),
            avg_subscriber_bps=_ratio(math.fsum(col[2]), sum(col[3])),
            avg_independent_bps=_ratio(math.fsum(col[4]), sum(col[5])),
            avg_system_bps=_ratio(math.fsum(col[6]), sum(col[7])),
            avg_m=sum(col[8]) / n,
            avg_revenue=math.fsum(col[9]) / n,
            ne_multiplicity_rate=sum(col[10]) / n,
        ))
    return rows


def summarize(rows: Sequence[SweepRow]) -> dict:
    """Peak locations for subscriber capacity and revenue, plus column ranges."""
    if not rows:
        raise ValueError("no rows to summarize")

    def argmax(col: str) -> float:
        best = max(rows, key=lambda r: getattr(r, col))  # first maximizer
        return best.grid_value

    return {
        "argmax_subscriber": argmax("avg_subscriber_bps"),
        "argmax_revenue": argmax("avg_revenue"),
        "min": {c: min(getattr(r, c) for r in rows) for c in COLUMNS[1:]},
        "max": {c: max(getattr(r, c) for r in rows) for c in COLUMNS[1:]},
    }
