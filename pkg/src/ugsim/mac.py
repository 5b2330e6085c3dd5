# Frame-based uplink MAC: per-connection drop-tail queues, equal-priority
# proportional grant allocation per frame, whole-packet service.

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, List

from .traffic import Fate, Packet


@dataclass(frozen=True)
class FrameConfig:
    frame_duration_us: int = 5000       # 5 ms WiMAX OFDM frame
    uplink_capacity: int = 3600         # bytes per frame (720,000 B/s)
    per_flow_queue_limit: int = 50      # packets

    def __post_init__(self) -> None:
        if self.frame_duration_us <= 0:
            raise ValueError("frame_duration_us must be positive")
        if self.uplink_capacity < 0:
            raise ValueError("uplink_capacity must be non-negative")
        if self.per_flow_queue_limit < 1:
            raise ValueError("per_flow_queue_limit must be >= 1")


@dataclass(frozen=True)
class FrameGrant:
    flow_id: int
    granted_bytes: int


@dataclass
class ConnectionQueue:
    """Drop-tail FIFO for one connection."""
    flow_id: int
    limit: int
    queued: Deque[Packet] = field(default_factory=deque)
    enqueued_count: int = 0
    dropped_count: int = 0
    delivered_count: int = 0

    def enqueue(self, packet: Packet) -> bool:
        """Append the packet, or drop it when the queue is full.

        Returns True when accepted.
        """
        if packet.flow_id != self.flow_id:
            raise ValueError(
                f"packet of flow {packet.flow_id} offered to queue {self.flow_id}"
            )
        self.enqueued_count += 1
        if len(self.queued) < self.limit:
            self.queued.append(packet)
            return True
        packet.fate = Fate.DROPPED
        self.dropped_count += 1
        return False

    def serve(self, granted_bytes: int, frame_end: int) -> List[Packet]:
        """Dequeue whole head packets while their cumulative size fits the grant.

        Delivered packets are stamped with the frame end; leftover grant bytes
        are discarded (no carry-over between frames).
        """
        delivered: List[Packet] = []
        budget = granted_bytes
        queued = self.queued
        while queued and queued[0].size <= budget:
            pkt = queued.popleft()
            budget -= pkt.size
            pkt.deliver_time = frame_end
            pkt.fate = Fate.DELIVERED
            delivered.append(pkt)
        self.delivered_count += len(delivered)
        return delivered


def allocate_grants(demands: Dict[int, int], capacity: int) -> List[FrameGrant]:
    """Split frame capacity across flows in proportion to their demands.

    Fully satisfies every demand when capacity allows; otherwise scales each
    demand by capacity/total, rounds down, and hands the leftover bytes one
    each to the flows with the largest fractional remainders (ties broken by
    ascending flow_id). Pure integer arithmetic, so grants are exact.
    """
    for flow_id, demand in demands.items():
        if demand < 0:
            raise ValueError(f"flow {flow_id}: negative demand")
    if capacity < 0:
        raise ValueError("negative capacity")

    total = sum(demands.values())
    if total <= capacity:
        grants = dict(demands)
    else:
        grants = {f: d * capacity // total for f, d in demands.items()}
        remainders = {f: d * capacity % total for f, d in demands.items()}
        leftover = capacity - sum(grants.values())
        for f in sorted(demands, key=lambda f: (-remainders[f], f))[:leftover]:
            grants[f] += 1
    return [FrameGrant(f, grants[f]) for f in sorted(grants)]


def frame_demand_packets(rate: float, frame_duration_us: int, packet_size: int) -> int:
    """Whole packets a flow at `rate` needs served per frame to keep pace.

    Rounded up: a fractional per-frame arrival count must still drain on
    average, otherwise an uncontended flow would build queue forever.
    """
    return math.ceil(rate * frame_duration_us / (packet_size * 1_000_000))


def allocation_quantum(packet_sizes: List[int]) -> int:
    """Byte quantum for grant allocation: gcd of the active packet sizes.

    Allocating in whole-packet quanta keeps grants usable by whole-packet
    service; byte-grained grants would strand sub-packet residues every frame.
    """
    return math.gcd(*packet_sizes) if packet_sizes else 1
