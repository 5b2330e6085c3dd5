# CBR traffic sources: fixed-size packets at fixed intervals, with the
# emission rate steerable between packets.

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .kernel import MICROS_PER_SECOND, Simulator

_packet_ids = itertools.count()


class Fate(enum.Enum):
    IN_QUEUE = "in_queue"
    DELIVERED = "delivered"
    DROPPED = "dropped"


@dataclass(frozen=True)
class UserProfile:
    user_id: int
    packet_size: int          # bytes
    initial_rate: float       # bytes per second
    min_subjective_rate: float  # bytes per second
    loss_threshold: float     # fraction in [0, 1]

    def __post_init__(self) -> None:
        if self.packet_size <= 0:
            raise ValueError(f"user {self.user_id}: packet_size must be positive")
        if self.initial_rate <= 0:
            raise ValueError(f"user {self.user_id}: initial_rate must be positive")
        if self.min_subjective_rate <= 0:
            raise ValueError(f"user {self.user_id}: min_subjective_rate must be positive")
        if not 0.0 <= self.loss_threshold <= 1.0:
            raise ValueError(f"user {self.user_id}: loss_threshold out of range")


@dataclass(slots=True)
class Packet:
    packet_id: int
    flow_id: int
    size: int
    gen_time: int                     # microseconds
    deliver_time: Optional[int] = None
    fate: Fate = Fate.IN_QUEUE


def emission_interval(rate: float, packet_size: int) -> int:
    """Gap between packet emissions, in whole microseconds (minimum 1)."""
    if rate <= 0:
        raise ValueError("invalid rate")
    if packet_size <= 0:
        raise ValueError("invalid packet size")
    return max(1, round(packet_size / rate * MICROS_PER_SECOND))


def generate(profile: UserProfile,
             rate_at: Callable[[int], float],
             horizon_us: int) -> Iterator[Packet]:
    """Emit packets at t=0, then t += interval(rate in force at last emission).

    rate_at(t) is sampled once per emission, so a rate change takes effect at
    the next packet. All gen_time values are strictly below the horizon.
    """
    t = 0
    while t < horizon_us:
        yield Packet(next(_packet_ids), profile.user_id, profile.packet_size, t)
        t += emission_interval(rate_at(t), profile.packet_size)


@dataclass
class CbrSource:
    """Live CBR source driving a kernel; `rate` may be rewritten between packets."""
    sim: Simulator
    profile: UserProfile
    horizon_us: int
    on_packet: Callable[[Packet], None]
    rate: float = field(init=False)
    generated: int = field(init=False, default=0)

    def __post_init__(self) -> None:
        self.rate = float(self.profile.initial_rate)

    def start(self) -> None:
        if self.horizon_us > 0:
            self.sim.schedule(0, self._emit)

    def _emit(self) -> None:
        now = self.sim.now
        pkt = Packet(next(_packet_ids), self.profile.user_id,
                     self.profile.packet_size, now)
        self.generated += 1
        self.on_packet(pkt)
        nxt = now + emission_interval(self.rate, self.profile.packet_size)
        if nxt < self.horizon_us:
            self.sim.schedule(nxt, self._emit)
