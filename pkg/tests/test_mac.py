import pytest
from hypothesis import given, strategies as st

from ugsim.mac import (ConnectionQueue, FrameConfig, allocate_grants,
                       allocation_quantum, frame_demand_packets)
from ugsim.traffic import Fate, Packet

from oracles import brute_force_grants


def make_packet(pid, flow=1, size=200, gen=0):
    return Packet(pid, flow, size, gen)


class TestEnqueue:
    def test_accepts_below_limit(self):
        q = ConnectionQueue(1, limit=50)
        for i in range(49):
            assert q.enqueue(make_packet(i))
        assert q.enqueue(make_packet(49))
        assert len(q.queued) == 50

    def test_drops_at_limit(self):
        q = ConnectionQueue(1, limit=50)
        for i in range(50):
            q.enqueue(make_packet(i))
        overflow = make_packet(50)
        assert not q.enqueue(overflow)
        assert overflow.fate is Fate.DROPPED
        assert q.dropped_count == 1

    def test_limit_one_accepts_into_empty(self):
        q = ConnectionQueue(1, limit=1)
        assert q.enqueue(make_packet(0))

    def test_flow_mismatch_is_programming_error(self):
        q = ConnectionQueue(1, limit=10)
        with pytest.raises(ValueError):
            q.enqueue(make_packet(0, flow=2))


class TestServe:
    def fill(self, q, n):
        for i in range(n):
            q.enqueue(make_packet(i))

    def test_whole_packets_within_grant(self):
        q = ConnectionQueue(1, limit=50)
        self.fill(q, 5)
        delivered = q.serve(600, frame_end=5000)
        assert len(delivered) == 3
        assert len(q.queued) == 2
        assert all(p.fate is Fate.DELIVERED and p.deliver_time == 5000
                   for p in delivered)

    def test_no_fragmentation(self):
        q = ConnectionQueue(1, limit=50)
        self.fill(q, 3)
        assert q.serve(199, frame_end=5000) == []

    def test_grant_exceeding_backlog(self):
        q = ConnectionQueue(1, limit=50)
        self.fill(q, 2)
        assert len(q.serve(10_000, frame_end=5000)) == 2
        assert not q.queued

    def test_fifo_delivery_order(self):
        q = ConnectionQueue(1, limit=50)
        self.fill(q, 4)
        delivered = q.serve(800, frame_end=5000)
        assert [p.packet_id for p in delivered] == [0, 1, 2, 3]


class TestAllocateGrants:
    def test_no_contention_grants_equal_demands(self):
        demands = {f: 1000 for f in range(1, 6)}
        grants = allocate_grants(demands, 10_000)
        assert {g.flow_id: g.granted_bytes for g in grants} == demands

    def test_zero_capacity(self):
        grants = allocate_grants({1: 500, 2: 700}, 0)
        assert all(g.granted_bytes == 0 for g in grants)

    def test_reference_contended_split(self):
        demands = {1: 667, 2: 1000, 3: 1000, 4: 1000, 5: 667}
        grants = {g.flow_id: g.granted_bytes
                  for g in allocate_grants(demands, 3600)}
        assert grants == brute_force_grants(demands, 3600)
        assert sum(grants.values()) == 3600
        assert all(grants[f] <= demands[f] for f in demands)

    def test_remainder_tie_goes_to_lowest_flow_id(self):
        # equal demands, capacity leaves 1 unit over equal remainders
        grants = {g.flow_id: g.granted_bytes
                  for g in allocate_grants({3: 10, 1: 10, 2: 10}, 7)}
        assert grants == brute_force_grants({1: 10, 2: 10, 3: 10}, 7)
        assert grants[1] == 3 and grants[2] == 2 and grants[3] == 2

    def test_negative_demand_rejected(self):
        with pytest.raises(ValueError):
            allocate_grants({1: -1}, 100)

    @given(demands=st.dictionaries(st.integers(min_value=1, max_value=8),
                                   st.integers(min_value=0, max_value=5000),
                                   min_size=1, max_size=6),
           capacity=st.integers(min_value=0, max_value=8000))
    def test_matches_brute_force_oracle(self, demands, capacity):
        grants = {g.flow_id: g.granted_bytes
                  for g in allocate_grants(demands, capacity)}
        assert grants == brute_force_grants(demands, capacity)
        assert sum(grants.values()) <= max(capacity, sum(demands.values()))
        assert all(0 <= grants[f] <= demands[f] or sum(demands.values()) <= capacity
                   for f in demands)

    @given(demands=st.dictionaries(st.integers(min_value=1, max_value=8),
                                   st.integers(min_value=0, max_value=5000),
                                   min_size=1, max_size=6),
           capacity=st.integers(min_value=0, max_value=8000))
    def test_scale_consistency(self, demands, capacity):
        base = {g.flow_id: g.granted_bytes
                for g in allocate_grants(demands, capacity)}
        doubled = {g.flow_id: g.granted_bytes
                   for g in allocate_grants({f: 2 * d for f, d in demands.items()},
                                            2 * capacity)}
        for f in demands:
            assert abs(doubled[f] - 2 * base[f]) <= 1


class TestFrameHelpers:
    def test_demand_rounds_up_to_whole_packets(self):
        # 133,333 B/s over a 5 ms frame is 3.33 packets -> must request 4
        assert frame_demand_packets(133_333, 5000, 200) == 4
        assert frame_demand_packets(200_000, 5000, 200) == 5
        assert frame_demand_packets(120_000, 5000, 200) == 3

    def test_allocation_quantum_is_gcd(self):
        assert allocation_quantum([200, 200]) == 200
        assert allocation_quantum([200, 300]) == 100
        assert allocation_quantum([]) == 1


def test_frame_config_validation():
    with pytest.raises(ValueError):
        FrameConfig(frame_duration_us=0)
    with pytest.raises(ValueError):
        FrameConfig(per_flow_queue_limit=0)
