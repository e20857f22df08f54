import pytest
from hypothesis import given
from hypothesis import strategies as st

from femtogame.dynalloc import ChannelPool, blocked, rebalance, run_trace


def test_data_borrows_idle_voice_channels():
    pool = rebalance(ChannelPool.split(30), 10, 20)
    assert pool.voice_lent_to_data == 5 and pool.data_lent_to_voice == 0
    assert (pool.effective_voice, pool.effective_data) == (10, 20)
    assert blocked(pool) == (0, 0)


def test_no_lending_within_ownership():
    pool = rebalance(ChannelPool.split(30), 12, 14)
    assert (pool.voice_lent_to_data, pool.data_lent_to_voice) == (0, 0)
    assert (pool.effective_voice, pool.effective_data) == (15, 15)


def test_loan_recalled_when_lender_needs_it():
    pool = rebalance(ChannelPool.split(30), 10, 20)
    pool = rebalance(pool, 15, 15)
    assert (pool.voice_lent_to_data, pool.data_lent_to_voice) == (0, 0)
    assert (pool.effective_voice, pool.effective_data) == (15, 15)


def test_partial_recall():
    pool = rebalance(ChannelPool.split(30), 5, 25)  # voice lends 10
    assert pool.voice_lent_to_data == 10
    pool = rebalance(pool, 8, 25)  # voice needs 3 back
    assert pool.voice_lent_to_data == 7
    assert blocked(pool) == (0, 3)


def test_lender_becomes_borrower():
    pool = rebalance(ChannelPool.split(30), 5, 25)
    pool = rebalance(pool, 22, 4)
    assert pool.voice_lent_to_data == 0 and pool.data_lent_to_voice == 7
    assert blocked(pool) == (0, 0)


def test_overload_blocking():
    pool = rebalance(ChannelPool.split(30), 20, 20)
    vb, db = blocked(pool)
    assert vb + db == 10
    assert blocked(rebalance(ChannelPool.split(30), 0, 0)) == (0, 0)


def test_invalid_pools_rejected():
    with pytest.raises(ValueError):
        ChannelPool(total=30, voice_owned=10, data_owned=10)
    with pytest.raises(ValueError):
        ChannelPool(voice_lent_to_data=3, data_lent_to_voice=2)
    with pytest.raises(ValueError):
        rebalance(ChannelPool(), -1, 0)


demand = st.integers(min_value=0, max_value=45)


@given(st.integers(1, 60).flatmap(lambda t: st.tuples(st.just(t), st.integers(0, t))), st.lists(st.tuples(demand, demand), max_size=60))
def test_invariants_over_random_traces(split, trace):
    total, voice = split
    for pool in run_trace(ChannelPool.split(total, voice), trace):
        assert pool.effective_voice + pool.effective_data == total
        assert pool.effective_voice >= 0 and pool.effective_data >= 0
        assert not (pool.voice_lent_to_data and pool.data_lent_to_voice)
        assert sum(blocked(pool)) == max(0, pool.voice_demand + pool.data_demand - total)
        # Idempotent for fixed demands.
        assert rebalance(pool, pool.voice_demand, pool.data_demand) == pool
