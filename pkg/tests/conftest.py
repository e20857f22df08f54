from __future__ import annotations

from dataclasses import replace

import pytest

from femtogame.access import Category, UeRecord, drop_from_ues, role_for
from femtogame.channel import LinkGain
from femtogame.model import Position, default_scenario

_ACCEPTANCE_LINES: list[str] = []


def synthetic_drop(rows, scenario=None, noise_dbm=None):
    """Drop from explicit received powers.

    ``rows`` holds (category, S0 dBm, S1 dBm) per UE. Link gains are
    back-derived from the scenario's transmit powers.
    """
    sc = scenario or default_scenario()
    ues = []
    for i, (cat, s0, s1) in enumerate(rows):
        member, role = role_for(cat, s1, s0)
        g0 = LinkGain(s0 - sc.radio.p_max_macro_dbm, cat.indoor)
        g1 = LinkGain(s1 - sc.radio.p_max_fap_dbm, not cat.indoor)
        ues.append(UeRecord(i, cat, Position(float(i), 0.0), g0, g1, s0, s1, member, role))
    drop = drop_from_ues(sc, tuple(ues), Position(sc.geometry.mbs_fap_distance_m, 0.0))
    if noise_dbm is not None:
        drop = replace(drop, noise_dbm=noise_dbm)
    return drop


SUB, INDOOR, OUTDOOR = Category.SUBSCRIBER, Category.INDOOR_NONSUB, Category.OUTDOOR_NONSUB


@pytest.fixture
def scenario():
    return default_scenario()


@pytest.fixture
def acceptance_report():
    """Collects one PASS/FAIL line per acceptance criterion."""

    def record(criterion: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
