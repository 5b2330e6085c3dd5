# Scenario assembly and execution: wires sources, MAC, controller and
# metrics onto one kernel per run; baseline-vs-QoE threshold sweeps; CSV output.

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .config import ScenarioConfig, users_with_threshold
from .controller import RateController
from .kernel import Simulator, seconds_to_us
from .mac import (ConnectionQueue, FrameConfig, allocate_grants,
                  allocation_quantum, frame_demand_packets)
from .metrics import (FlowMetrics, MetricsCollector, write_series_csv,
                      write_summary_csv)
from .traffic import CbrSource, Packet, UserProfile


@dataclass
class RunResult:
    scheduler: str
    threshold: float                      # fraction; 0.0 for baseline
    summary: List[FlowMetrics]
    series: List[FlowMetrics]
    final_rates: Dict[int, float]
    in_queue: Dict[int, int]              # packets left queued at run end
    rate_history: Dict[int, List[float]]  # installed rate after each epoch
    n_epochs: int

    @property
    def variant(self) -> str:
        return "baseline" if self.scheduler == "baseline" \
            else f"qoe-{round(self.threshold * 100)}"


class CellSimulation:
    """One point-to-multipoint cell: CBR uplink flows through drop-tail
    queues, frame-scoped proportional UGS grants, optional QoE controller."""

    def __init__(self, users: List[UserProfile], frame: FrameConfig,
                 end_us: int, epoch_us: int,
                 controller: Optional[RateController] = None) -> None:
        self.users = users
        self.frame = frame
        self.end_us = end_us
        self.epoch_us = epoch_us
        self.controller = controller
        self.sim = Simulator()
        self.metrics = MetricsCollector([u.user_id for u in users], end_us, epoch_us)
        self.queues = {u.user_id: ConnectionQueue(u.user_id, frame.per_flow_queue_limit)
                       for u in users}
        self.sources = {u.user_id: CbrSource(self.sim, u, end_us, self._on_packet)
                        for u in users}
        self._quantum = allocation_quantum([u.packet_size for u in users])
        self._sizes = {u.user_id: u.packet_size for u in users}
        self.rate_history: Dict[int, List[float]] = {u.user_id: [] for u in users}

    def _on_packet(self, pkt: Packet) -> None:
        self.metrics.record_generation(pkt)
        if self.controller is not None:
            self.controller.note_sent(pkt.flow_id)
        if not self.queues[pkt.flow_id].enqueue(pkt):
            self.metrics.record_drop(pkt)
            if self.controller is not None:
                self.controller.note_lost(pkt.flow_id)

    def _on_frame(self) -> None:
        now = self.sim.now
        quantum = self._quantum
        demands = {}
        for uid, src in self.sources.items():
            size = self._sizes[uid]
            pkts = frame_demand_packets(src.rate, self.frame.frame_duration_us, size)
            demands[uid] = pkts * size // quantum
        grants = allocate_grants(demands, self.frame.uplink_capacity // quantum)
        record = self.metrics.record_delivery
        for grant in grants:
            for pkt in self.queues[grant.flow_id].serve(grant.granted_bytes * quantum, now):
                record(pkt)
        nxt = now + self.frame.frame_duration_us
        if nxt <= self.end_us:
            self.sim.schedule(nxt, self._on_frame)

    def _on_epoch(self) -> None:
        assert self.controller is not None
        for flow_id, rate in self.controller.on_epoch().items():
            self.sources[flow_id].rate = rate
            self.rate_history[flow_id].append(rate)
        nxt = self.sim.now + self.epoch_us
        if nxt <= self.end_us:
            self.sim.schedule(nxt, self._on_epoch)

    def run(self) -> None:
        for src in self.sources.values():
            src.start()
        if self.frame.frame_duration_us <= self.end_us:
            self.sim.schedule(self.frame.frame_duration_us, self._on_frame)
        if self.controller is not None and self.epoch_us <= self.end_us:
            self.sim.schedule(self.epoch_us, self._on_epoch)
        self.sim.run_until(self.end_us)


def run_single(config: ScenarioConfig, scheduler: str,
               threshold: float) -> RunResult:
    """Run one fully-assembled scenario. The baseline never instantiates the
    controller, so its results are invariant under the threshold."""
    users = users_with_threshold(config.users, threshold)
    end_us = seconds_to_us(config.sim_time)
    epoch_us = seconds_to_us(config.epoch)
    controller = None
    if scheduler == "qoe":
        controller = RateController(users,
                                    decrease_factor=config.decrease_factor,
                                    increase_step=config.increase_step)
    cell = CellSimulation(users, config.frame, end_us, epoch_us, controller)
    cell.run()
    summary, series = cell.metrics.summarize()
    final_rates = {uid: src.rate for uid, src in cell.sources.items()}
    in_queue = {uid: len(q.queued) for uid, q in cell.queues.items()}
    return RunResult(
        scheduler=scheduler,
        threshold=threshold if scheduler == "qoe" else 0.0,
        summary=summary,
        series=series,
        final_rates=final_rates,
        in_queue=in_queue,
        rate_history=cell.rate_history,
        n_epochs=cell.metrics.n_epochs,
    )


def _write_results(results: List[RunResult], out_dir: str,
                   summary_name: str, series_name: str) -> Tuple[str, str]:
    os.makedirs(out_dir, exist_ok=True)
    summary_path = os.path.join(out_dir, summary_name)
    series_path = os.path.join(out_dir, series_name)
    with open(summary_path, "w", encoding="utf-8", newline="") as fh:
        write_summary_csv(fh, ((r.scheduler, r.threshold, m)
                               for r in results for m in r.summary))
    with open(series_path, "w", encoding="utf-8", newline="") as fh:
        write_series_csv(fh, ((r.scheduler, r.threshold, i % r.n_epochs, m)
                              for r in results
                              for i, m in enumerate(r.series)))
    return summary_path, series_path


def run_scenario(config: ScenarioConfig, out_dir: str,
                 scheduler: Optional[str] = None,
                 threshold: Optional[float] = None) -> RunResult:
    """Single run; writes summary.csv and series.csv into out_dir."""
    sched = scheduler or config.scheduler
    thr = threshold if threshold is not None else config.thresholds[0]
    result = run_single(config, sched, thr)
    _write_results([result], out_dir, "summary.csv", "series.csv")
    return result


def run_sweep(config: ScenarioConfig, out_dir: str) -> List[RunResult]:
    """Baseline plus one QoE run per threshold; writes sweep_summary.csv and
    sweep_series.csv in deterministic variant order."""
    variants = [("baseline", 0.0)] + [("qoe", t) for t in config.thresholds]
    results = [run_single(config, sched, thr) for sched, thr in variants]
    _write_results(results, out_dir, "sweep_summary.csv", "sweep_series.csv")
    return results
