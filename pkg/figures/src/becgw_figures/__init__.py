"""Figure rendering for becgw sweep-table CSVs."""

from .csvio import FigureError, read_overlay_csv, read_sweep_csv
from .figspec import CurveSpec, FigureSpec, load_spec, spec_from_dict
from .render import build_figure, layout_summary, render

__version__ = "0.1.0"

__all__ = [
    "FigureError", "read_overlay_csv", "read_sweep_csv",
    "CurveSpec", "FigureSpec", "load_spec", "spec_from_dict",
    "build_figure", "layout_summary", "render", "__version__",
]
