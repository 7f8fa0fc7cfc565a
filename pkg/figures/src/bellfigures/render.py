"""Render sweep CSVs into static figure panels.

Input files are the CSVs written by the bellherald command line tool: a block
of '#'-prefixed metadata lines, one header row, then numeric rows.  Rendering
is read-only and uses the pinned style sheet shipped with this package, so a
rerun on the same CSV reproduces the image byte for byte.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

STYLE_PATH = Path(__file__).parent / "styles" / "bellherald.mplstyle"

PANELS = ("p_bell", "e_min", "f_opt")

PANEL_LABELS = {
    "p_bell": "heralding success probability",
    "e_min": "minimum discrimination error",
    "f_opt": "postselected Bell fidelity",
}

# figure set -> (panels, x-axis label)
FIGURE_SETS = {
    "fig1": (("p_bell", "e_min", "f_opt"), "interaction time  (Rabi periods)"),
    "fig2": (("p_bell", "e_min", "f_opt"), "interaction time  (Rabi periods)"),
    "fig3": (("f_opt",), "interaction time  (Rabi periods)"),
    "fig4": (("p_bell", "e_min", "f_opt"), "damping  (gamma T)"),
}


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    panel: str
    out_path: str
    x_label: str = "sweep value"
    y_label: str = None

    def __post_init__(self):
        if self.panel not in PANELS:
            raise RenderError(f"panel must be one of {PANELS}, got {self.panel!r}")


def read_sweep_csv(path):
    """Return (metadata_lines, column -> float list)."""
    meta, header, columns = [], None, {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                meta.append(line.lstrip("# "))
                continue
            cells = next(csv.reader([line]))
            if header is None:
                header = cells
                columns = {name: [] for name in header}
                continue
            for name, cell in zip(header, cells):
                columns[name].append(float(cell))
    if header is None or not columns or not columns[header[0]]:
        raise RenderError(f"no data rows in {path}")
    return meta, columns


def render(spec: FigureSpec):
    """Render one panel; returns the written path."""
    meta, columns = read_sweep_csv(spec.csv_path)
    for needed in ("sweep_value", spec.panel):
        if needed not in columns:
            raise RenderError(f"column {needed!r} missing from {spec.csv_path}")
    caption = next((m for m in meta if m.startswith("config =")), "")

    with plt.style.context(str(STYLE_PATH)):
        fig, ax = plt.subplots()
        ax.plot(columns["sweep_value"], columns[spec.panel])
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label or PANEL_LABELS[spec.panel])
        if caption:
            fig.text(0.01, 0.005, caption[:110], fontsize=4, alpha=0.6)
        fig.savefig(spec.out_path, metadata={"Software": None})
        plt.close(fig)
    return spec.out_path


def render_figure_set(name, csv_path, out_dir):
    """Render all panels of one figure set; returns the written paths."""
    if name not in FIGURE_SETS:
        raise RenderError(f"unknown figure set {name!r}; choose from {sorted(FIGURE_SETS)}")
    panels, x_label = FIGURE_SETS[name]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for panel in panels:
        spec = FigureSpec(
            csv_path=str(csv_path),
            panel=panel,
            out_path=str(out_dir / f"{name}_{panel}.png"),
            x_label=x_label,
        )
        written.append(render(spec))
    return written
