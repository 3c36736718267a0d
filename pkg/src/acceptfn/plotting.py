"""Per-event report: a delimited table plus a bar chart of the measure.

Each event is tagged ``accepted`` (f(A) > f(not A)), ``rejected``
(f(A) < f(not A)) or ``undecided`` (tie).  For an acceptance function the
undecided bars all sit at the indifference level.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import SetFunction, popcount  # noqa: E402

STATUS_COLORS = {"accepted": "#2b8cbe", "undecided": "#bdbdbd", "rejected": "#e34a33"}


def event_rows(f: SetFunction) -> list[dict]:
    u = f.universe
    rows = []
    for ev in sorted(u.events(), key=lambda e: (popcount(e), e)):
        v, vc = f(ev), f(u.full ^ ev)
        status = "accepted" if v > vc else "rejected" if v < vc else "undecided"
        rows.append(
            {
                "event": u.format(ev),
                "size": popcount(ev),
                "value": v,
                "complement_value": vc,
                "status": status,
            }
        )
    return rows


def write_event_table(f: SetFunction, path: str | Path, delimiter: str = ",") -> Path:
    path = Path(path)
    rows = event_rows(f)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter=delimiter)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: str(v) for k, v in row.items()})
    return path


def plot_events(
    f: SetFunction,
    path: str | Path,
    title: str | None = None,
    indifference_level=None,
) -> Path:
    """Bar per event, grouped by cardinality, colored by acceptance status."""
    path = Path(path)
    rows = event_rows(f)
    n = len(rows)
    width = min(max(6.0, 0.28 * n), 40.0)
    fig, ax = plt.subplots(figsize=(width, 3.6))
    xs = range(n)
    ax.bar(
        xs,
        [float(r["value"]) for r in rows],
        color=[STATUS_COLORS[r["status"]] for r in rows],
        edgecolor="black",
        linewidth=0.4,
    )
    if indifference_level is not None:
        ax.axhline(float(indifference_level), color="black", linestyle="--", linewidth=0.8,
                   label=f"indifference level {indifference_level}")
    if n <= 64:
        ax.set_xticks(list(xs))
        ax.set_xticklabels([r["event"] for r in rows], rotation=90, fontsize=7)
    else:
        ax.set_xticks([])
        ax.set_xlabel("events, by cardinality")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("confidence")
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in STATUS_COLORS.values()]
    labels = list(STATUS_COLORS)
    if indifference_level is not None:
        handles.append(plt.Line2D([0], [0], color="black", linestyle="--"))
        labels.append(f"k = {indifference_level}")
    ax.legend(handles, labels, fontsize=7, loc="upper left", frameon=False)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

