import hashlib
from pathlib import Path

import pytest

from bellfigures.render import FigureSpec, RenderError, read_sweep_csv, render, render_figure_set

FIXTURES = Path(__file__).parent.parent / "fixtures"

FIGURE_CSVS = {
    "fig1": FIXTURES / "fig1.csv",
    "fig2": FIXTURES / "fig2.csv",
    "fig3": FIXTURES / "fig3.csv",
    "fig4": FIXTURES / "fig4.csv",
}


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def test_fixtures_present_and_well_formed():
    for name, path in FIGURE_CSVS.items():
        meta, columns = read_sweep_csv(path)
        assert "sweep_value" in columns
        assert any(m.startswith("config =") for m in meta)


@pytest.mark.parametrize("name", sorted(FIGURE_CSVS))
def test_render_figure_sets(name, tmp_path):
    written = render_figure_set(name, FIGURE_CSVS[name], tmp_path / name)
    expected = 1 if name == "fig3" else 3
    assert len(written) == expected
    for path in written:
        assert Path(path).stat().st_size > 2000


def test_rerender_is_pixel_identical(tmp_path):
    a = render_figure_set("fig1", FIGURE_CSVS["fig1"], tmp_path / "a")
    b = render_figure_set("fig1", FIGURE_CSVS["fig1"], tmp_path / "b")
    assert [sha256(p) for p in a] == [sha256(p) for p in b]


def test_strong_coupling_fidelity_rises_toward_one():
    # the fidelity panel data should climb toward 1 with oscillations
    _, columns = read_sweep_csv(FIGURE_CSVS["fig1"])
    fopt = columns["f_opt"]
    xs = columns["sweep_value"]
    late = [f for x, f in zip(xs, fopt) if x >= 5.0]
    assert max(late) > 0.99
    assert min(late) > 0.8


def test_missing_column_is_named(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("# config = {}\nsweep_value,other\n0.0,1.0\n")
    spec = FigureSpec(csv_path=str(bad), panel="f_opt", out_path=str(tmp_path / "x.png"))
    with pytest.raises(RenderError, match="f_opt"):
        render(spec)
    assert not (tmp_path / "x.png").exists()


def test_empty_csv_writes_nothing(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("# config = {}\nsweep_value,p_bell,e_min,f_opt\n")
    with pytest.raises(RenderError):
        render_figure_set("fig1", empty, tmp_path / "out")
    out = tmp_path / "out"
    assert not out.exists() or not list(out.glob("*.png"))


def test_bad_panel_rejected(tmp_path):
    with pytest.raises(RenderError):
        FigureSpec(csv_path="x.csv", panel="nope", out_path="y.png")


def test_cli_round_trip(tmp_path):
    from bellfigures.cli import main

    out = tmp_path / "cli"
    code = main(["render", "--csv", str(FIGURE_CSVS["fig4"]), "--figure", "fig4",
                 "--out-dir", str(out)])
    assert code == 0
    assert len(list(out.glob("*.png"))) == 3

    code = main(["render", "--csv", str(tmp_path / "missing.csv"), "--figure", "fig1",
                 "--out-dir", str(out)])
    assert code == 2
