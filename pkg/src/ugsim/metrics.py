# Per-flow QoS statistics: average throughput, packet loss rate, average
# delay, average jitter; per-epoch series plus whole-run summaries, and the
# CSV schema used by every report.

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, TextIO

from .kernel import MICROS_PER_SECOND
from .traffic import Packet

SERIES_COLUMNS = [
    "scheduler", "threshold_pct", "flow_id", "epoch",
    "generated", "delivered", "dropped", "bytes_delivered",
    "throughput_bps", "loss_rate", "mean_delay_s", "mean_jitter_s",
]
SUMMARY_COLUMNS = [c for c in SERIES_COLUMNS if c != "epoch"]


@dataclass(frozen=True)
class FlowMetrics:
    flow_id: int
    window_start_us: int
    window_end_us: int
    generated: int
    delivered: int
    dropped: int
    bytes_delivered: int
    throughput: float     # bytes per second over the window wall-time
    loss_rate: float
    mean_delay_s: float
    mean_jitter_s: float


def mean_jitter(delays: Sequence[float]) -> float:
    """Mean absolute difference of consecutive delays; 0 below two samples."""
    if len(delays) < 2:
        return 0.0
    total = sum(abs(b - a) for a, b in zip(delays, delays[1:]))
    return total / (len(delays) - 1)


class DoubleRecordError(RuntimeError):
    """A packet id was recorded twice for the same event type."""


class _FlowAccumulator:
    __slots__ = ("generated", "delivered", "dropped", "bytes_delivered",
                 "delay_sum_us", "jitter_sum_us", "jitter_pairs", "last_delay_us")

    def __init__(self, n_epochs: int) -> None:
        self.generated = [0] * n_epochs
        self.delivered = [0] * n_epochs
        self.dropped = [0] * n_epochs
        self.bytes_delivered = [0] * n_epochs
        self.delay_sum_us = [0] * n_epochs
        self.jitter_sum_us = [0] * n_epochs
        self.jitter_pairs = [0] * n_epochs
        self.last_delay_us: Optional[int] = None


class MetricsCollector:
    """Streams per-packet events into per-epoch accumulators for each flow.

    Epoch index is fire-time // epoch length, clamped so deliveries at the
    exact end of the run fall into the last epoch. Jitter differences are
    attributed to the epoch of the later delivery of each consecutive pair.
    """

    def __init__(self, flow_ids: Iterable[int], end_us: int, epoch_us: int) -> None:
        if end_us <= 0 or epoch_us <= 0:
            raise ValueError("end and epoch must be positive")
        self.end_us = end_us
        self.epoch_us = epoch_us
        self.n_epochs = max(1, -(-end_us // epoch_us))
        self._flows: Dict[int, _FlowAccumulator] = {
            f: _FlowAccumulator(self.n_epochs) for f in flow_ids
        }
        self._seen_gen: set[int] = set()
        self._seen_drop: set[int] = set()
        self._seen_deliver: set[int] = set()

    def _epoch(self, t_us: int) -> int:
        return min(t_us // self.epoch_us, self.n_epochs - 1)

    def record_generation(self, packet: Packet) -> None:
        if packet.packet_id in self._seen_gen:
            raise DoubleRecordError(f"generation of packet {packet.packet_id} recorded twice")
        self._seen_gen.add(packet.packet_id)
        self._flows[packet.flow_id].generated[self._epoch(packet.gen_time)] += 1

    def record_drop(self, packet: Packet) -> None:
        if packet.packet_id in self._seen_drop:
            raise DoubleRecordError(f"drop of packet {packet.packet_id} recorded twice")
        self._seen_drop.add(packet.packet_id)
        self._flows[packet.flow_id].dropped[self._epoch(packet.gen_time)] += 1

    def record_delivery(self, packet: Packet) -> None:
        if packet.packet_id in self._seen_deliver:
            raise DoubleRecordError(f"delivery of packet {packet.packet_id} recorded twice")
        if packet.deliver_time is None:
            raise ValueError(f"packet {packet.packet_id} has no deliver_time")
        self._seen_deliver.add(packet.packet_id)
        acc = self._flows[packet.flow_id]
        e = self._epoch(packet.deliver_time)
        acc.delivered[e] += 1
        acc.bytes_delivered[e] += packet.size
        delay = packet.deliver_time - packet.gen_time
        acc.delay_sum_us[e] += delay
        if acc.last_delay_us is not None:
            acc.jitter_sum_us[e] += abs(delay - acc.last_delay_us)
            acc.jitter_pairs[e] += 1
        acc.last_delay_us = delay

    # ---- summaries ----

    def _window_metrics(self, flow_id: int, start_us: int, end_us: int,
                        epochs: range) -> FlowMetrics:
        acc = self._flows[flow_id]
        generated = sum(acc.generated[e] for e in epochs)
        delivered = sum(acc.delivered[e] for e in epochs)
        dropped = sum(acc.dropped[e] for e in epochs)
        bytes_delivered = sum(acc.bytes_delivered[e] for e in epochs)
        delay_sum = sum(acc.delay_sum_us[e] for e in epochs)
        jitter_sum = sum(acc.jitter_sum_us[e] for e in epochs)
        pairs = sum(acc.jitter_pairs[e] for e in epochs)
        window_s = (end_us - start_us) / MICROS_PER_SECOND
        return FlowMetrics(
            flow_id=flow_id,
            window_start_us=start_us,
            window_end_us=end_us,
            generated=generated,
            delivered=delivered,
            dropped=dropped,
            bytes_delivered=bytes_delivered,
            throughput=bytes_delivered / window_s if window_s > 0 else 0.0,
            loss_rate=dropped / generated if generated > 0 else 0.0,
            mean_delay_s=(delay_sum / delivered) / MICROS_PER_SECOND if delivered else 0.0,
            mean_jitter_s=(jitter_sum / pairs) / MICROS_PER_SECOND if pairs else 0.0,
        )

    def epoch_metrics(self, flow_id: int, epoch: int) -> FlowMetrics:
        start = epoch * self.epoch_us
        end = min((epoch + 1) * self.epoch_us, self.end_us)
        return self._window_metrics(flow_id, start, end, range(epoch, epoch + 1))

    def run_metrics(self, flow_id: int) -> FlowMetrics:
        return self._window_metrics(flow_id, 0, self.end_us, range(self.n_epochs))

    def summarize(self) -> tuple[List[FlowMetrics], List[FlowMetrics]]:
        """Whole-run summary per flow plus the full per-epoch series."""
        flows = sorted(self._flows)
        summary = [self.run_metrics(f) for f in flows]
        series = [self.epoch_metrics(f, e)
                  for f in flows for e in range(self.n_epochs)]
        return summary, series


def _format_row(scheduler: str, threshold: float, m: FlowMetrics,
                epoch: Optional[int]) -> List[str]:
    row = [
        scheduler,
        f"{threshold * 100:.1f}",
        str(m.flow_id),
    ]
    if epoch is not None:
        row.append(str(epoch))
    row += [
        str(m.generated),
        str(m.delivered),
        str(m.dropped),
        str(m.bytes_delivered),
        f"{m.throughput:.3f}",
        f"{m.loss_rate:.6f}",
        f"{m.mean_delay_s:.9f}",
        f"{m.mean_jitter_s:.9f}",
    ]
    return row


def write_summary_csv(out: TextIO,
                      rows: Iterable[tuple[str, float, FlowMetrics]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for scheduler, threshold, m in rows:
        writer.writerow(_format_row(scheduler, threshold, m, None))


def write_series_csv(out: TextIO,
                     rows: Iterable[tuple[str, float, int, FlowMetrics]]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SERIES_COLUMNS)
    for scheduler, threshold, epoch, m in rows:
        writer.writerow(_format_row(scheduler, threshold, m, epoch))
