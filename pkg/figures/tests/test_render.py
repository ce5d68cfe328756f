import numpy as np
import pytest

from qecorr_figures.render import FigureSpec, render_fig1, render_timeline

FIG1_HEADER = "c0,t_normalized,concurrence"
TIMELINE_HEADER = (
    "t,coherence,sep_residual,separable,env_discord_residual,"
    "env_zero_discord,qubit_discord_residual,qubit_zero_discord"
)


def write_fig1_csv(path, c0_values=(0.5, 0.7, 0.9), samples=9):
    lines = [FIG1_HEADER]
    for c0 in c0_values:
        for k in range(samples):
            x = k / (samples - 1)
            conc = abs(c0 + (1 - c0) * np.exp(2j * np.pi * x))
            lines.append(f"{c0:.17g},{x:.17g},{conc:.17g}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_timeline_csv(path, steps=11):
    lines = [TIMELINE_HEADER]
    for k in range(steps):
        t = 0.6 * k
        coherence = 0.5 * abs(np.cos(t / 2))
        qubit_zero = "true" if k in (0, steps - 1) else "false"
        lines.append(f"{t:.17g},{coherence:.17g},0,true,0,true,0.1,{qubit_zero}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_render_fig1_reproduces_csv_exactly(tmp_path):
    csv_path = write_fig1_csv(tmp_path / "fig1.csv")
    out = tmp_path / "fig1.pdf"
    fig = render_fig1(FigureSpec(csv_path, out))
    assert out.exists() and out.stat().st_size > 0
    lines = fig.axes[0].get_lines()
    curves = [ln for ln in lines if ln.get_label().startswith("$c_0$")]
    assert len(curves) == 3
    styles = {ln.get_label(): ln.get_linestyle() for ln in curves}
    assert styles["$c_0$ = 0.5"] == "-"
    assert styles["$c_0$ = 0.7"] == "--"
    assert styles["$c_0$ = 0.9"] == ":"
    for c0, line in zip((0.5, 0.7, 0.9), curves):
        x, y = line.get_data()
        expect_y = [abs(c0 + (1 - c0) * np.exp(2j * np.pi * xi)) for xi in x]
        assert np.array_equal(x, np.linspace(0, 1, 9))
        assert np.array_equal(y, expect_y)


def test_render_fig1_single_curve(tmp_path):
    csv_path = write_fig1_csv(tmp_path / "one.csv", c0_values=(0.7,))
    fig = render_fig1(FigureSpec(csv_path, tmp_path / "one.svg"))
    curves = [ln for ln in fig.axes[0].get_lines() if ln.get_label().startswith("$c_0$")]
    assert len(curves) == 1
    assert (tmp_path / "one.svg").exists()


def test_render_fig1_defaults_to_vector_output(tmp_path):
    csv_path = write_fig1_csv(tmp_path / "fig1.csv")
    spec = FigureSpec(csv_path, tmp_path / "noext")
    assert spec.output.suffix == ".pdf"
    render_fig1(spec)
    assert (tmp_path / "noext.pdf").exists()


def test_render_fig1_missing_column_named(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("c0,concurrence\n0.5,1.0\n", encoding="utf-8")
    with pytest.raises(ValueError, match="t_normalized"):
        render_fig1(FigureSpec(bad, tmp_path / "x.pdf"))
    assert not (tmp_path / "x.pdf").exists()


def test_render_fig1_empty_csv_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text(FIG1_HEADER + "\n", encoding="utf-8")
    with pytest.raises(ValueError, match="no data rows"):
        render_fig1(FigureSpec(empty, tmp_path / "x.pdf"))
    assert not (tmp_path / "x.pdf").exists()


def test_render_timeline(tmp_path):
    csv_path = write_timeline_csv(tmp_path / "run.csv")
    out = tmp_path / "timeline.pdf"
    fig = render_timeline(FigureSpec(csv_path, out, kind="timeline"))
    assert out.exists() and out.stat().st_size > 0
    top, strips = fig.axes
    x, y = top.get_lines()[0].get_data()
    assert np.array_equal(x, [0.6 * k for k in range(11)])
    assert np.array_equal(y, [0.5 * abs(np.cos(0.3 * k)) for k in range(11)])
    labels = [tick.get_text() for tick in strips.get_yticklabels()]
    assert labels == ["separable", "env zero discord", "qubit zero discord"]
    image = strips.get_images()[0].get_array()
    assert image.shape == (3, 11)
    assert image[2, 0] == 1.0 and image[2, 5] == 0.0


def test_spec_rejects_unknown_kind(tmp_path):
    with pytest.raises(ValueError):
        FigureSpec(tmp_path / "x.csv", tmp_path / "y.pdf", kind="surface")
