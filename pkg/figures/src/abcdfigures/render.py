"""Render experiment CSVs into the standard diagnostic figures.

This package is a read-only consumer of the harness CSV schema

    row,metric,x,seed,measured,predicted,n,gamma,delta,zeta,beta,s,tau,xi,variant

and never recomputes statistics: ``data`` rows are the per-seed
measurements, ``mean``/``std`` rows (written by the harness) drive the
lines and the shaded one-standard-deviation bands.  Prediction overlays
come from the ``predicted`` column and are drawn dashed.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGURE_KINDS = ("ccdf-overlay", "ratio-band", "q-vs-xi", "scatter-volumes")

REQUIRED_COLUMNS = ("row", "metric", "x", "seed", "measured", "predicted", "xi")


class FigureError(Exception):
    """Raised for unusable specs or malformed CSV inputs."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    figure_kind: str
    output_path: str
    metrics: tuple[str, ...] = ()
    xscale: str = ""
    yscale: str = ""
    title: str = ""

    def __post_init__(self):
        if self.figure_kind not in FIGURE_KINDS:
            raise FigureError(f"unknown figure kind {self.figure_kind!r}; choices: {FIGURE_KINDS}")


def load_figure_spec(path) -> FigureSpec:
    """Spec file: flat key=value lines with keys csv, kind, out, and
    optionally metric (comma list), xscale, yscale, title."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise FigureError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    for key in ("csv", "kind", "out"):
        if key not in values:
            raise FigureError(f"{path}: missing key {key!r}")
    metrics = tuple(m for m in values.get("metric", "").split(",") if m)
    return FigureSpec(
        csv_path=values["csv"],
        figure_kind=values["kind"],
        output_path=values["out"],
        metrics=metrics,
        xscale=values.get("xscale", ""),
        yscale=values.get("yscale", ""),
        title=values.get("title", ""),
    )


@dataclass
class Table:
    """Parsed CSV: per-metric data, mean, and std rows."""

    rows: list[dict]
    metrics: list[str] = field(default_factory=list)

    @staticmethod
    def read(path) -> "Table":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for column in REQUIRED_COLUMNS:
                if column not in header:
                    raise FigureError(f"{path}: missing required column {column!r}")
            rows = list(reader)
        if not any(r["row"] == "data" for r in rows):
            raise FigureError(f"{path}: no data rows")
        metrics = sorted({r["metric"] for r in rows if r["row"] == "data"})
        return Table(rows=rows, metrics=metrics)

    def select(self, metric: str, kind: str) -> list[dict]:
        return [r for r in self.rows if r["metric"] == metric and r["row"] == kind]

    def series(self, metric: str, kind: str) -> tuple[np.ndarray, np.ndarray]:
        """(x, value) pairs of one row kind, sorted by x."""
        rows = self.select(metric, kind)
        pairs = sorted((float(r["x"]), float(r["measured"])) for r in rows if r["x"] != "")
        if not pairs:
            return np.array([]), np.array([])
        xs, ys = zip(*pairs)
        return np.array(xs), np.array(ys)

    def predictions(self, metric: str) -> tuple[np.ndarray, np.ndarray]:
        rows = self.select(metric, "data")
        pairs = sorted(
            {(float(r["x"]), float(r["predicted"])) for r in rows if r["x"] and r["predicted"]}
        )
        if not pairs:
            return np.array([]), np.array([])
        xs, ys = zip(*pairs)
        return np.array(xs), np.array(ys)

    def has_multi_seed(self, metric: str) -> bool:
        seeds = {r["seed"] for r in self.select(metric, "data")}
        return len(seeds) > 1


def _pick_metrics(spec: FigureSpec, table: Table) -> list[str]:
    if spec.metrics:
        missing = [m for m in spec.metrics if m not in table.metrics]
        if missing:
            raise FigureError(f"metrics {missing} not present; CSV has {table.metrics}")
        return list(spec.metrics)
    preferred = [m for m in table.metrics if not m.endswith("_sup_gap")]
    return preferred or table.metrics


def _mean_std_or_data(table: Table, metric: str):
    """Line and optional band: mean/std rows when present, else raw data."""
    xs, mean = table.series(metric, "mean")
    if len(xs):
        _, std = table.series(metric, "std")
        return xs, mean, (std if len(std) == len(xs) else None)
    xs, ys = table.series(metric, "data")
    return xs, ys, None


def _render_ccdf_overlay(table: Table, metrics, ax):
    for metric in metrics:
        xs, ys, _ = _mean_std_or_data(table, metric)
        keep = ys > 0
        ax.plot(xs[keep], ys[keep], drawstyle="steps-post", label=f"{metric} (measured)")
        px, py = table.predictions(metric)
        if len(px):
            keep = py > 0
            ax.plot(px[keep], py[keep], "k--", label=f"{metric} (theory)")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("value")
    ax.set_ylabel("tail fraction")


def _render_ratio_band(table: Table, metrics, ax):
    reference = None
    for metric in metrics:
        xs, mean, std = _mean_std_or_data(table, metric)
        if not len(xs):
            continue
        ax.plot(xs, mean, marker="o", label=metric)
        if std is not None and table.has_multi_seed(metric):
            ax.fill_between(xs, mean - std, mean + std, alpha=0.25)
        px, py = table.predictions(metric)
        if len(py):
            reference = py[0]
    if reference is not None:
        ax.axhline(reference, color="k", linestyle="--", label="prediction")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("measured / predicted")


def _render_q_vs_xi(table: Table, metrics, ax):
    drew_prediction = False
    for metric in metrics:
        xs, mean, std = _mean_std_or_data(table, metric)
        if not len(xs):
            continue
        ax.plot(xs, mean, marker="o", label=metric)
        if std is not None and table.has_multi_seed(metric):
            ax.fill_between(xs, mean - std, mean + std, alpha=0.25)
        if not drew_prediction:
            px, py = table.predictions(metric)
            if len(px):
                ax.plot(px, py, "k--", label="prediction")
                drew_prediction = True
    ax.set_xlabel("noise level")
    ax.set_ylabel("modularity")


def _render_scatter_volumes(table: Table, metrics, ax):
    for metric in metrics:
        xs, ys = table.series(metric, "data")
        ax.scatter(xs, ys, s=8, alpha=0.6, label=metric)
        px, py = table.predictions(metric)
        if len(py):
            ax.axhline(py[0], color="k", linestyle="--", label="prediction")
    ax.set_xscale("log")
    ax.set_xlabel("community size")
    ax.set_ylabel("volume / prediction")


_RENDERERS = {
    "ccdf-overlay": _render_ccdf_overlay,
    "ratio-band": _render_ratio_band,
    "q-vs-xi": _render_q_vs_xi,
    "scatter-volumes": _render_scatter_volumes,
}


def render(spec: FigureSpec) -> str:
    """Draw the figure described by ``spec``; returns the output path."""
    table = Table.read(spec.csv_path)
    metrics = _pick_metrics(spec, table)
    fig, ax = plt.subplots(figsize=(7, 5))
    try:
        _RENDERERS[spec.figure_kind](table, metrics, ax)
        if spec.xscale:
            ax.set_xscale(spec.xscale)
        if spec.yscale:
            ax.set_yscale(spec.yscale)
        if spec.title:
            ax.set_title(spec.title)
        ax.legend(loc="best", fontsize=8)
        fig.tight_layout()
        fig.savefig(spec.output_path, dpi=150)
    finally:
        plt.close(fig)
    return spec.output_path
