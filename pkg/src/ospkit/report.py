"""Machine-readable reports: JSON documents, delimited summaries and figures."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

TOOL_VERSION = "0.1.0"


@dataclass
class InvariantReport:
    """One verification entry: dimensions, ranks and a verdict."""

    params: dict
    dim_lie_invariants: int | None = None
    dim_group_invariants: int | None = None
    diagram_image_rank: int | None = None
    verdict: bool = True
    millis: float = 0.0
    note: str = ""
    error: str | None = None

    def to_dict(self) -> dict:
        out = {
            "params": dict(self.params),
            "dims": {
                "lie": self.dim_lie_invariants,
                "group": self.dim_group_invariants,
            },
            "ranks": {"diagram": self.diagram_image_rank},
            "verdict": self.verdict,
            "millis": round(self.millis, 3),
        }
        if self.note:
            out["note"] = self.note
        if self.error:
            out["error"] = self.error
        return out


def assemble(params: dict, results: list[InvariantReport]) -> dict:
    return {
        "tool_version": TOOL_VERSION,
        "params": dict(params),
        "results": [r.to_dict() for r in results],
        "verdict": all(r.verdict for r in results),
    }


def strip_timings(report: dict) -> dict:
    """Copy of a report without wall-clock fields, for byte-identity checks."""
    out = json.loads(json.dumps(report))
    for entry in out.get("results", []):
        entry.pop("millis", None)
    return out


def write_json(report: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_csv(report: dict, path) -> None:
    """One delimited row per result entry."""
    rows = report.get("results", [])
    fields = ["params", "dim_lie", "dim_group", "diagram_rank", "verdict", "millis"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fields)
        for entry in rows:
            writer.writerow([
                json.dumps(entry["params"], sort_keys=True),
                entry["dims"]["lie"],
                entry["dims"]["group"],
                entry["ranks"]["diagram"],
                entry["verdict"],
                entry["millis"],
            ])


def render_figure(report: dict, path) -> None:
    """Bar chart of dimensions vs diagram ranks, one group per entry."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    entries = report.get("results", [])
    labels = []
    series = {"lie": [], "group": [], "diagram rank": []}
    for entry in entries:
        labels.append(",".join(f"{k}={v}" for k, v in sorted(entry["params"].items())))
        series["lie"].append(entry["dims"]["lie"])
        series["group"].append(entry["dims"]["group"])
        series["diagram rank"].append(entry["ranks"]["diagram"])
    fig, ax = plt.subplots(figsize=(max(6, 1.2 * len(labels)), 4))
    width = 0.25
    xs = range(len(labels))
    any_bars = False
    for offset, (name, vals) in enumerate(series.items()):
        plotted = [(x, v) for x, v in zip(xs, vals) if v is not None]
        if not plotted:
            continue
        any_bars = True
        ax.bar([x + (offset - 1) * width for x, _ in plotted],
               [v for _, v in plotted], width=width, label=name)
    if not any_bars:
        verdicts = [1 if e["verdict"] else 0 for e in entries]
        ax.bar(list(xs), verdicts, width=0.5, label="verdict")
        ax.set_ylim(0, 1.2)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("dimension")
    ax.set_title(f"ospkit verification ({report.get('params', {})})")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
