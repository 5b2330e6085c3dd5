# Grouped-bar figures from a sweep summary CSV: one chart per QoS metric,
# flows on the x-axis, one bar per scheduler variant.

from __future__ import annotations

import csv
import os
from typing import Dict, List, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

REQUIRED_COLUMNS = [
    "scheduler", "threshold_pct", "flow_id",
    "generated", "delivered", "dropped", "bytes_delivered",
    "throughput_bps", "loss_rate", "mean_delay_s", "mean_jitter_s",
]

FIGURES = [
    ("throughput_bps", "throughput.png", "Average throughput (bytes/s)"),
    ("loss_rate", "loss_rate.png", "Packet loss rate"),
    ("mean_jitter_s", "jitter.png", "Average jitter (s)"),
    ("mean_delay_s", "delay.png", "Average delay (s)"),
]

FIGSIZE = (8.0, 4.5)
DPI = 120


class SchemaError(ValueError):
    """Input CSV does not match the sweep summary schema."""


def variant_label(scheduler: str, threshold_pct: float) -> str:
    if scheduler == "baseline":
        return "baseline"
    return f"qoe {threshold_pct:g}%"


def load_sweep(csv_path: str) -> Dict[Tuple[str, int], Dict[str, float]]:
    """Rows keyed by (variant label, flow id); validates schema up front."""
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise SchemaError(f"missing column: {column}")
        rows: Dict[Tuple[str, int], Dict[str, float]] = {}
        for row in reader:
            try:
                threshold = float(row["threshold_pct"])
                flow = int(row["flow_id"])
                values = {col: float(row[col]) for col, _, _ in FIGURES}
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"bad row {reader.line_num}: {exc}") from None
            key = (variant_label(row["scheduler"], threshold), flow)
            if key in rows:
                raise SchemaError(
                    f"duplicate row for variant {key[0]!r} flow {flow}")
            rows[key] = values
            rows[key]["_order"] = (0.0 if row["scheduler"] == "baseline" else 1.0,
                                   threshold)
    if not rows:
        raise SchemaError("no data rows")
    return rows


def render(csv_path: str, out_dir: str) -> List[str]:
    """Write the four metric charts; returns the created file paths.

    Output is deterministic for identical input: fixed figure geometry,
    fixed variant ordering, no timestamps.
    """
    rows = load_sweep(csv_path)
    orders = {v: rows[(v, f)]["_order"] for v, f in rows}
    variants = sorted(orders, key=orders.get)
    flows = sorted({f for _, f in rows})
    for variant in variants:
        missing = [f for f in flows if (variant, f) not in rows]
        if missing:
            raise SchemaError(
                f"variant {variant!r} missing flows {missing}")

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for column, filename, title in FIGURES:
        fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
        width = 0.8 / len(variants)
        for i, variant in enumerate(variants):
            xs = [f + (i - (len(variants) - 1) / 2) * width for f in flows]
            ys = [rows[(variant, f)][column] for f in flows]
            ax.bar(xs, ys, width=width, label=variant)
        ax.set_xticks(flows)
        ax.set_xticklabels([f"flow {f}" for f in flows])
        ax.set_title(title)
        ax.set_ylabel(title)
        ax.legend(fontsize="small", ncol=2)
        if column == "throughput_bps":
            secondary = ax.secondary_yaxis(
                "right", functions=(lambda v: v / 1000, lambda v: v * 1000))
            secondary.set_ylabel("paper units (KB/s)")
        fig.tight_layout()
        path = os.path.join(out_dir, filename)
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written
