"""Self-contained SVG figures from sweep records.

Rendered straight through matplotlib's SVG canvas; no display backend or
global pyplot state involved.
"""

import io
import math

import numpy as np
from matplotlib.figure import Figure

__all__ = ["EmptyPlotError", "PLOT_KINDS", "emit_plot"]

PLOT_KINDS = (
    "snr_vs_axis",
    "scatter_diff_vs_support",
    "histogram_violations",
    "pv_support",
)


class EmptyPlotError(ValueError):
    """The record selection left nothing to draw."""


def _axis_of(records):
    """Infer the swept quantity from how the dims vary across records."""
    svals = sorted({r.s_true for r in records})
    nvals = sorted({r.n for r in records})
    mvals = sorted({r.m for r in records})
    if len(svals) > 1:
        return "sparsity", lambda r: r.s_true
    if len(nvals) > 1:
        return "signal dimension n", lambda r: r.n
    if len(mvals) > 1:
        return "m/n", lambda r: r.m / r.n
    return "m/n", lambda r: r.m / r.n


def _methods_of(records):
    seen = []
    for record in records:
        if record.method not in seen:
            seen.append(record.method)
    return seen


def _render(fig):
    buffer = io.StringIO()
    fig.savefig(buffer, format="svg")
    return buffer.getvalue()


def _snr_vs_axis(ax, records):
    label, key = _axis_of(records)
    for method in _methods_of(records):
        points = {}
        for r in records:
            if r.method == method and r.snr_db is not None:
                points.setdefault(key(r), []).append(r.snr_db)
        if not points:
            continue
        xs = sorted(points)
        ys = [float(np.mean(points[x])) for x in xs]
        ax.plot(xs, ys, marker="o", label=method)
    ax.set_xlabel(label)
    ax.set_ylabel("mean SNR (dB), valid trials")
    ax.legend()


def _scatter_diff_vs_support(ax, records, method=None, baseline=None):
    methods = _methods_of(records)
    if method is None:
        method = next((m for m in methods if m.startswith("blind")), methods[0])
    if baseline is None:
        baseline = next(
            (m for m in methods if m.startswith("biht")),
            methods[-1],
        )
    by_trial = {}
    for r in records:
        by_trial.setdefault(r.trial_id, {})[r.method] = r
    xs, ys = [], []
    for trial in sorted(by_trial):
        pair = by_trial[trial]
        if method not in pair or baseline not in pair:
            continue
        a, b = pair[method], pair[baseline]
        if a.snr_db is None or b.snr_db is None:
            continue
        if math.isinf(a.snr_db) or math.isinf(b.snr_db):
            continue
        xs.append(a.support_size)
        ys.append(a.snr_db - b.snr_db)
    if not xs:
        raise EmptyPlotError("no valid trial pairs to plot")
    ax.scatter(xs, ys, marker="o", facecolors="none", edgecolors="C0",
               label=f"{method} - {baseline}")
    ax.axhline(0.0, color="black", linestyle="--", linewidth=1.0)
    ax.set_xlabel(f"support size of {method}")
    ax.set_ylabel("SNR difference (dB)")
    ax.legend()


def _histogram_violations(ax, records):
    methods = _methods_of(records)
    top = max(r.violations for r in records)
    edges = np.arange(-0.5, max(top, 0) + 1.5)
    for method in methods:
        counts = [r.violations for r in records if r.method == method]
        ax.hist(counts, bins=edges, alpha=0.6, label=method)
    ax.set_xlabel("unsatisfied sign constraints")
    ax.set_ylabel("trials")
    ax.legend()


def _pv_support(ax, records):
    rows = [r for r in records if r.method == "pv-lp"] or list(records)
    xs = list(range(1, len(rows) + 1))
    ys = [r.support_size for r in rows]
    ax.scatter(xs, ys, marker="o", facecolors="none", edgecolors="C0",
               label="reconstruction support")
    s_true = rows[0].s_true
    ax.axhline(s_true, color="red", linestyle="-", linewidth=1.2,
               label=f"true sparsity {s_true}")
    ax.set_xlabel("trial")
    ax.set_ylabel("support size")
    ax.legend()


def emit_plot(records, kind, path=None, method=None, baseline=None):
    """Render one figure kind to an SVG string (optionally a file too).

    ``scatter_diff_vs_support`` compares ``method`` against ``baseline``
    (defaulting to the first blind method and first BIHT variant found).
    """
    records = list(records)
    if not records:
        raise EmptyPlotError("no records selected")
    if kind not in PLOT_KINDS:
        raise ValueError(f"kind must be one of {PLOT_KINDS}, got {kind!r}")

    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.subplots()
    if kind == "snr_vs_axis":
        _snr_vs_axis(ax, records)
    elif kind == "scatter_diff_vs_support":
        _scatter_diff_vs_support(ax, records, method, baseline)
    elif kind == "histogram_violations":
        _histogram_violations(ax, records)
    else:
        _pv_support(ax, records)
    fig.tight_layout()
    svg = _render(fig)
    if path is not None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(svg)
    return svg
