import pytest
from hypothesis import given, strategies as st

from ugsim.kernel import Simulator, SchedulingInPastError, seconds_to_us


def test_event_at_zero_fires_before_later_events():
    sim = Simulator()
    order = []
    sim.schedule(10, lambda: order.append("later"))
    sim.schedule(0, lambda: order.append("first"))
    sim.run_until(100)
    assert order == ["first", "later"]


def test_same_time_events_fire_in_insertion_order():
    sim = Simulator()
    order = []
    sim.schedule(5000, lambda: order.append("A"))
    sim.schedule(5000, lambda: order.append("B"))
    sim.run_until(5000)
    assert order == ["A", "B"]


def test_scheduling_in_the_past_aborts():
    sim = Simulator()
    sim.schedule(1000, lambda: None)
    sim.run_until(1000)
    with pytest.raises(SchedulingInPastError):
        sim.schedule(999, lambda: None)


def test_empty_queue_run_returns_zero_and_advances_clock():
    sim = Simulator()
    assert sim.run_until(seconds_to_us(200)) == 0
    assert sim.now == 200_000_000


def test_single_event_processed_once():
    sim = Simulator()
    fired = []
    sim.schedule(seconds_to_us(100), lambda: fired.append(sim.now))
    assert sim.run_until(seconds_to_us(200)) == 1
    assert fired == [100_000_000]


def test_events_after_end_are_left_pending():
    sim = Simulator()
    fired = []
    sim.schedule(10, lambda: fired.append(10))
    sim.schedule(30, lambda: fired.append(30))
    assert sim.run_until(20) == 1
    assert fired == [10]
    assert sim.pending() == 1
    assert sim.run_until(40) == 1
    assert fired == [10, 30]


def test_handler_can_schedule_followups():
    sim = Simulator()
    seen = []

    def tick():
        seen.append(sim.now)
        if sim.now < 50:
            sim.schedule(sim.now + 10, tick)

    sim.schedule(0, tick)
    sim.run_until(100)
    assert seen == [0, 10, 20, 30, 40, 50]


@given(st.lists(st.integers(min_value=0, max_value=1000), max_size=50))
def test_identical_insertions_replay_identically(times):
    def run():
        sim = Simulator()
        order = []
        for i, t in enumerate(times):
            sim.schedule(t, lambda i=i: order.append((sim.now, i)))
        sim.run_until(2000)
        return order

    first, second = run(), run()
    assert first == second
    # clock observed by handlers never decreases
    assert all(a[0] <= b[0] for a, b in zip(first, first[1:]))
    # every event processed exactly once
    assert sorted(i for _, i in first) == list(range(len(times)))
