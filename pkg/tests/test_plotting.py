from sharpebound import plotting
from sharpebound.anomaly import IidSpec, simulate_iid
from sharpebound.frontier import frontier_curve
from sharpebound.tables import reproduce


def test_curves_to_svg(tmp_path):
    panels = [frontier_curve(0.01, 0.9, 20), frontier_curve(0.9, 0.999, 20)]
    path = plotting.plot_curves(panels, tmp_path / "f1.svg", title="F1")
    text = path.read_text()
    assert "<svg" in text and text.count("<svg") == 1
    assert plotting.curve_label(panels[0]) == "F1(B)"


def test_svg_output_is_stable(tmp_path):
    curve = [frontier_curve(0.1, 0.5, 5, "sortino", "two_sided")]
    a = plotting.plot_curves(curve, tmp_path / "a.svg").read_bytes()
    b = plotting.plot_curves(curve, tmp_path / "b.svg").read_bytes()
    assert a == b


def test_table_and_trajectory_png(tmp_path):
    p = plotting.plot_table_check(reproduce("G"), tmp_path / "g.png")
    assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    traj = simulate_iid(IidSpec(k=100, N=10_000, seed=1))
    p = plotting.plot_trajectory(traj, tmp_path / "t.pdf", population=0.5)
    assert p.read_bytes()[:4] == b"%PDF"
