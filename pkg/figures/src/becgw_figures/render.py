"""Render figures from sweep-table CSVs.

This layer is a strict viewer: every plotted quantity is a CSV column,
optionally passed through an axis-level transform (log scaling, or the
inverse-Fisher presentation of the cfi-vs-qfi kind).  No physics is
recomputed here.
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .csvio import FigureError, read_overlay_csv, read_sweep_csv  # noqa: E402
from .figspec import load_spec  # noqa: E402

FIGSIZE = (6.0, 4.0)
DPI = 150


def _finite_pairs(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    mask = np.isfinite(xs) & np.isfinite(ys)
    return xs[mask], ys[mask]


def _consistency_warning(tables):
    hashes = {t.metadata.get("config_sha256") for t in tables}
    if len(hashes) > 1:
        return ("warning: curves come from differing run configurations "
                f"({len(hashes)} distinct hashes)")
    return None


def _plot_standard(ax, spec, tables):
    for curve, table in zip(spec.curves, tables):
        xs, ys = _finite_pairs(table.column(spec.x_column),
                               table.column(spec.y_column))
        ax.plot(xs, ys, label=curve.label, color=curve.color,
                linestyle=curve.linestyle)


def _plot_cfi_vs_qfi(ax, spec, tables):
    # inverse-Fisher presentation: both Fisher columns are read from the
    # CSV and shown as 1/value, matching the error-variance axis
    for curve, table in zip(spec.curves, tables):
        xs = table.column(spec.x_column)
        for column, suffix, style in (("h_eps", "1/QFI", "-"),
                                      ("cfi", "1/CFI", "--")):
            x, y = _finite_pairs(xs, table.column(column))
            if not len(x):
                raise FigureError(
                    f"{table.path}: column {column!r} has no finite values")
            ax.plot(x, 1.0 / y, label=f"{curve.label} {suffix}".strip(),
                    color=curve.color, linestyle=style)


def _plot_overlays(ax, spec):
    for path, label in spec.overlays:
        points = read_overlay_csv(path)
        if not points:
            continue
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        ax.plot(xs, ys, label=label, color="gray", linestyle="-",
                linewidth=1.0, alpha=0.8)


def build_figure(spec):
    tables = [read_sweep_csv(c.path) for c in spec.curves]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if spec.kind == "cfi-vs-qfi":
        _plot_cfi_vs_qfi(ax, spec, tables)
    else:
        _plot_standard(ax, spec, tables)
    if spec.kind == "overlay":
        _plot_overlays(ax, spec)
    ax.set_xscale(spec.x_scale)
    ax.set_yscale(spec.y_scale)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="best")
    warning = _consistency_warning(tables)
    if warning:
        ax.annotate(warning, xy=(0.02, 0.02), xycoords="axes fraction",
                    fontsize=7, color="darkred")
    return fig


def layout_summary(fig):
    """JSON-serializable description of the figure layout.

    Captures everything the golden-layout comparison cares about: axis
    scales and labels, and per-line style plus plotted data.
    """
    axes = []
    for ax in fig.axes:
        lines = []
        for line in ax.get_lines():
            lines.append({
                "label": line.get_label(),
                "color": str(line.get_color()),
                "linestyle": line.get_linestyle(),
                "xdata": [float(f"{v:.12g}") for v in line.get_xdata()],
                "ydata": [float(f"{v:.12g}") for v in line.get_ydata()],
            })
        axes.append({
            "xscale": ax.get_xscale(),
            "yscale": ax.get_yscale(),
            "xlabel": ax.get_xlabel(),
            "ylabel": ax.get_ylabel(),
            "title": ax.get_title(),
            "annotations": [t.get_text() for t in ax.texts],
            "lines": lines,
        })
    return {"axes": axes}


def render(spec):
    fig = build_figure(spec)
    fig.savefig(spec.output, dpi=DPI)
    plt.close(fig)
    return spec.output


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="becgw-figures",
        description="Render a figure from sweep-table CSVs")
    parser.add_argument("spec", help="path to a JSON figure-spec file")
    parser.add_argument("--output", default=None,
                        help="override the output image path")
    args = parser.parse_args(argv)
    try:
        spec = load_spec(args.spec)
        if args.output:
            import dataclasses
            spec = dataclasses.replace(spec, output=args.output)
        path = render(spec)
    except (FigureError, OSError) as exc:
        print(f"figure error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
