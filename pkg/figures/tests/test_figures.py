import json
import pathlib

import pytest

from becgw_figures import (FigureError, build_figure, layout_summary,
                           render, spec_from_dict)
from becgw_figures.render import main

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"

HEADER = ("axis_value,h_eps,delta_eps_bound,sensitivity_density,"
          "cfi,bulk_qfi_max,flags\n")


def sweep_csv(tmp_path, name, rows, sha="a" * 64):
    lines = [f"# becgw_version: 0.1.0\n", f"# config_sha256: {sha}\n",
             HEADER]
    for row in rows:
        lines.append(",".join(f"{v:.17g}" if not isinstance(v, str) else v
                              for v in row) + "\n")
    path = tmp_path / name
    path.write_text("".join(lines))
    return str(path)


def basic_rows(scale=1.0):
    rows = []
    for i, t in enumerate((1e-3, 3e-3, 1e-2, 3e-2, 1e-1)):
        h = scale * 1e6 * t * t
        rows.append((t, h, h ** -0.5, h ** -0.5 * t ** 0.5,
                     0.9 * h, 1.46e-3, "ok"))
    return rows


def test_single_curve_time_sweep(tmp_path):
    csv = sweep_csv(tmp_path, "run.csv", basic_rows())
    out = tmp_path / "fig.png"
    spec = spec_from_dict({"kind": "time-sweep", "inputs": [csv],
                           "output": str(out)})
    render(spec)
    assert out.exists() and out.stat().st_size > 0


def test_four_curve_style_convention(tmp_path):
    csvs = [sweep_csv(tmp_path, f"run{i}.csv", basic_rows(scale=1.0 + i))
            for i in range(4)]
    spec = spec_from_dict({
        "kind": "time-sweep",
        "inputs": [{"path": p, "label": f"curve {i}"}
                   for i, p in enumerate(csvs)],
        "output": str(tmp_path / "fig.png")})
    fig = build_figure(spec)
    lines = fig.axes[0].get_lines()
    styles = [(l.get_color(), l.get_linestyle()) for l in lines]
    assert styles == [("tab:blue", "-"), ("tab:red", "--"),
                      ("tab:green", ":"), ("black", "-.")]
    assert fig.axes[0].get_xscale() == "log"
    assert fig.axes[0].get_yscale() == "log"


def test_cfi_vs_qfi_two_curves_inverse_axis(tmp_path):
    rows = basic_rows()
    csv = sweep_csv(tmp_path, "run.csv", rows)
    spec = spec_from_dict({"kind": "cfi-vs-qfi", "inputs": [csv],
                           "output": str(tmp_path / "fig.png")})
    fig = build_figure(spec)
    lines = fig.axes[0].get_lines()
    assert len(lines) == 2
    inv_qfi = lines[0].get_ydata()
    inv_cfi = lines[1].get_ydata()
    for row, q, c in zip(rows, inv_qfi, inv_cfi):
        assert q == pytest.approx(1.0 / row[1])
        assert c == pytest.approx(1.0 / row[4])
    assert "inverse" in fig.axes[0].get_ylabel().lower()


def test_missing_column_names_it(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("axis_value,h_eps\n1.0,2.0\n")
    spec = spec_from_dict({"kind": "time-sweep", "inputs": [str(path)],
                           "output": str(tmp_path / "fig.png")})
    with pytest.raises(FigureError, match="delta_eps_bound"):
        build_figure(spec)


def test_inconsistent_configs_warn_annotation(tmp_path):
    a = sweep_csv(tmp_path, "a.csv", basic_rows(), sha="a" * 64)
    b = sweep_csv(tmp_path, "b.csv", basic_rows(2.0), sha="b" * 64)
    spec = spec_from_dict({"kind": "time-sweep", "inputs": [a, b],
                           "output": str(tmp_path / "fig.png")})
    fig = build_figure(spec)
    notes = [t.get_text() for t in fig.axes[0].texts]
    assert any("differing run configurations" in n for n in notes)


def test_overlay_curves_drawn(tmp_path):
    csv = sweep_csv(tmp_path, "run.csv", basic_rows())
    overlay = tmp_path / "detector.csv"
    overlay.write_text("frequency_hz,characteristic_strain\n"
                       "1e3,1e-20\n1e4,3e-21\n1e5,1e-21\n")
    spec = spec_from_dict({
        "kind": "overlay", "inputs": [csv],
        "overlay_inputs": [{"path": str(overlay), "label": "detector"}],
        "output": str(tmp_path / "fig.png")})
    fig = build_figure(spec)
    labels = [l.get_label() for l in fig.axes[0].get_lines()]
    assert "detector" in labels
    assert len(labels) == 2


def test_overlay_inputs_rejected_elsewhere(tmp_path):
    with pytest.raises(FigureError, match="overlay"):
        spec_from_dict({"kind": "time-sweep", "inputs": ["x.csv"],
                        "overlay_inputs": ["y.csv"]})


def test_unknown_kind_rejected():
    with pytest.raises(FigureError, match="kind"):
        spec_from_dict({"kind": "pie-chart", "inputs": ["x.csv"]})


def _golden_spec(tmp_path):
    csvs = [sweep_csv(tmp_path, f"run{i}.csv", basic_rows(scale=1.0 + i))
            for i in range(4)]
    return spec_from_dict({
        "kind": "time-sweep",
        "inputs": [{"path": p, "label": f"curve {i}"}
                   for i, p in enumerate(csvs)],
        "output": str(tmp_path / "fig.png")})


def test_golden_layout(tmp_path):
    spec = _golden_spec(tmp_path)
    summary = layout_summary(build_figure(spec))
    golden = json.loads((GOLDEN_DIR / "four_curve_layout.json").read_text())
    assert summary == golden


def test_layout_deterministic(tmp_path):
    spec = _golden_spec(tmp_path)
    first = layout_summary(build_figure(spec))
    second = layout_summary(build_figure(spec))
    assert first == second


def test_script_entry_point(tmp_path):
    csv = sweep_csv(tmp_path, "run.csv", basic_rows())
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({
        "kind": "time-sweep", "inputs": [csv],
        "output": str(tmp_path / "fig.png")}))
    assert main([str(spec_path)]) == 0
    assert (tmp_path / "fig.png").exists()
    assert main([str(tmp_path / "absent.json")]) == 2
