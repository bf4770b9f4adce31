"""Figure specifications loaded from JSON files."""

import json
from dataclasses import dataclass, field

from .csvio import FigureError

KINDS = ("time-sweep", "frequency-sweep", "cfi-vs-qfi", "overlay")

# four-curve style convention: blue solid, red dashed, green dotted,
# black dash-dotted
DEFAULT_STYLES = (
    {"color": "tab:blue", "linestyle": "-"},
    {"color": "tab:red", "linestyle": "--"},
    {"color": "tab:green", "linestyle": ":"},
    {"color": "black", "linestyle": "-."},
)


@dataclass(frozen=True)
class CurveSpec:
    path: str
    label: str
    color: str
    linestyle: str


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    curves: tuple
    output: str
    x_column: str = "axis_value"
    y_column: str = "delta_eps_bound"
    x_scale: str = "log"
    y_scale: str = "log"
    x_label: str = ""
    y_label: str = ""
    title: str = ""
    overlays: tuple = ()              # (path, label) pairs


def _curves_from(entries):
    curves = []
    for idx, entry in enumerate(entries):
        if isinstance(entry, str):
            entry = {"path": entry}
        style = DEFAULT_STYLES[idx % len(DEFAULT_STYLES)]
        curves.append(CurveSpec(
            path=entry["path"],
            label=entry.get("label", entry["path"]),
            color=entry.get("color", style["color"]),
            linestyle=entry.get("linestyle", style["linestyle"])))
    return tuple(curves)


def spec_from_dict(data):
    kind = data.get("kind")
    if kind not in KINDS:
        raise FigureError(
            f"unknown figure kind {kind!r}; expected one of {KINDS}")
    entries = data.get("inputs", [])
    if not entries:
        raise FigureError("figure spec needs at least one input CSV")
    overlays = tuple(
        (o["path"], o.get("label", o["path"])) if isinstance(o, dict)
        else (o, o)
        for o in data.get("overlay_inputs", []))
    if overlays and kind != "overlay":
        raise FigureError(
            f"overlay_inputs are only valid for kind 'overlay', not {kind!r}")
    defaults = {
        "time-sweep": ("axis_value", "delta_eps_bound",
                       "time t [s]", "strain bound"),
        "frequency-sweep": ("axis_value", "delta_eps_bound",
                            "frequency [rad/s]", "strain bound"),
        "cfi-vs-qfi": ("axis_value", "h_eps",
                       "time t [s]", "inverse Fisher information"),
        "overlay": ("axis_value", "sensitivity_density",
                    "frequency [Hz]", "strain density [Hz^-1/2]"),
    }
    x_col, y_col, x_lab, y_lab = defaults[kind]
    return FigureSpec(
        kind=kind,
        curves=_curves_from(entries),
        output=data.get("output", "figure.png"),
        x_column=data.get("x_column", x_col),
        y_column=data.get("y_column", y_col),
        x_scale=data.get("x_scale", "log"),
        y_scale=data.get("y_scale", "log"),
        x_label=data.get("x_label", x_lab),
        y_label=data.get("y_label", y_lab),
        title=data.get("title", ""),
        overlays=overlays)


def load_spec(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FigureError(f"{path}: invalid JSON: {exc}") from exc
    return spec_from_dict(data)
