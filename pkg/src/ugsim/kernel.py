# Deterministic discrete-event engine: integer-microsecond clock and a
# time-ordered event queue with FIFO tie-breaking.

from __future__ import annotations

import heapq
from typing import Callable, List, Tuple

MICROS_PER_SECOND = 1_000_000


def seconds_to_us(seconds: float) -> int:
    return round(seconds * MICROS_PER_SECOND)


def us_to_seconds(us: int) -> float:
    return us / MICROS_PER_SECOND


class SchedulingInPastError(RuntimeError):
    """Raised when an event is scheduled before the current clock."""


class Simulator:
    """Single-threaded event loop over an integer-microsecond virtual clock.

    Events at equal fire times run in insertion order (strictly increasing
    sequence numbers), so identical insertions always replay identically.
    """

    def __init__(self) -> None:
        self.now: int = 0  # microseconds
        self._queue: List[Tuple[int, int, Callable[[], None]]] = []
        self._seq: int = 0

    def schedule(self, fire_time: int, action: Callable[[], None]) -> None:
        if fire_time < self.now:
            raise SchedulingInPastError(
                f"cannot schedule event at t={fire_time}us, clock is {self.now}us"
            )
        self._seq += 1
        heapq.heappush(self._queue, (fire_time, self._seq, action))

    def run_until(self, end: int) -> int:
        """Process every event with fire_time <= end; leave the clock at end.

        Returns the number of events processed.
        """
        count = 0
        queue = self._queue
        while queue and queue[0][0] <= end:
            fire_time, _, action = heapq.heappop(queue)
            self.now = fire_time
            action()
            count += 1
        if end > self.now:
            self.now = end
        return count

    def pending(self) -> int:
        return len(self._queue)
