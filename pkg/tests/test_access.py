from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import INDOOR, OUTDOOR, SUB, synthetic_drop
from femtogame.access import Gate, Role, classify, fap_gate, mute_count
from femtogame.experiment import generate_drop
from femtogame.model import RadioConfig, default_scenario


def _one(cat, s0, s1):
    return synthetic_drop([(cat, s0, s1)]).ues[0]


@pytest.mark.parametrize(
    "cat, s0, s1, in_p, role",
    [
        (INDOOR, -80.0, -20.0, True, Role.PLAYER),
        (OUTDOOR, -70.0, -90.0, False, Role.INDEPENDENT),
        (OUTDOOR, -70.0, -70.0, False, Role.INDEPENDENT),  # tie goes to P*
        (SUB, -20.0, -90.0, True, Role.SUBSCRIBER),  # subscribers forced into P
    ],
)
def test_classification(cat, s0, s1, in_p, role):
    ue = _one(cat, s0, s1)
    assert ue.in_p_set is in_p
    assert ue.role is role
    p_set, p_star = classify([ue])
    assert (ue in p_set) is in_p and (ue in p_star) is not in_p


@pytest.mark.parametrize(
    "s1, s0, gamma, psi, expected",
    [
        (-60.0, -45.0, 10.0, 0.0, Gate.TRANSMIT_FULL),
        (-40.0, -45.0, 10.0, 0.0, Gate.MUTE),
        (-50.0, -50.0, 0.0, 0.0, Gate.TRANSMIT_FULL),
        (-55.0, -45.0, 6.0, 4.0, Gate.TRANSMIT_FULL),
        (-55.0, -45.0, 6.0, 4.1, Gate.MUTE),
    ],
)
def test_fap_gate(s1, s0, gamma, psi, expected):
    ue = _one(OUTDOOR, s0, s1)
    assert fap_gate(ue, RadioConfig(gamma_db=gamma, psi_db=psi)) is expected


def test_mute_count_hand_table():
    # Five P* UEs; the 2nd and 4th have the FAP within 10 dB of the macro signal.
    rows = [
        (OUTDOOR, -60.0, -90.0),
        (OUTDOOR, -60.0, -65.0),
        (OUTDOOR, -60.0, -70.0),  # exactly 10 dB below: passes
        (OUTDOOR, -60.0, -61.0),
        (OUTDOOR, -60.0, -120.0),
        (SUB, -80.0, -20.0),
    ]
    drop = synthetic_drop(rows)
    assert drop.x_count == 5
    assert drop.d_count == mute_count(drop) == 2


def test_mute_count_empty_and_far():
    assert synthetic_drop([(SUB, -80.0, -20.0)]).d_count == 0
    far = [(OUTDOOR, -60.0, -60.0 - 10.0 - k) for k in range(6)] + [(SUB, -80.0, -20.0)]
    assert synthetic_drop(far).d_count == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=0, max_value=50))
def test_drop_partition_and_roles(seed, index):
    drop = generate_drop(default_scenario(), seed, index)
    p_set, p_star = classify(drop.ues)
    assert len(p_set) + len(p_star) == len(drop.ues)
    assert not {u.id for u in p_set} & {u.id for u in p_star}
    assert drop.x_count + drop.z_count == 22
    assert 0 <= drop.d_count <= drop.x_count
    assert sorted(u.id for u in drop.ues) == list(range(len(drop.ues)))
    for ue in drop.ues:
        if ue.role is Role.PLAYER:
            assert ue.rsp_fap_dbm > ue.rsp_macro_dbm
            # Macro players can never pass the gate when gamma, psi >= 0.
            assert fap_gate(ue, drop.scenario.radio) is Gate.MUTE


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=1000), st.floats(min_value=0, max_value=40), st.floats(min_value=0, max_value=40))
def test_mute_count_monotone_in_margin(index, lo, hi):
    lo, hi = sorted((lo, hi))
    base = default_scenario()
    counts = []
    for gamma in (lo, hi):
        sc = replace(base, radio=replace(base.radio, gamma_db=gamma))
        counts.append(generate_drop(sc, 3, index).d_count)
    assert counts[0] <= counts[1]


def test_mute_count_all_at_huge_margin():
    base = default_scenario()
    sc = replace(base, radio=replace(base.radio, gamma_db=1e6))
    drop = generate_drop(sc, 11, 0)
    assert drop.d_count == drop.x_count


def test_mute_count_ignores_game_parameters():
    base = default_scenario()
    ref = generate_drop(base, 5, 2).d_count
    for beta, price in [(0.0, 0.0), (1.0, 3.0), (0.3, 8.0)]:
        assert generate_drop(base.with_beta(beta).with_price(price), 5, 2).d_count == ref
