"""Static figure rendering for bellherald sweep CSVs."""

__version__ = "0.1.0"

from .render import FigureSpec, RenderError, render, render_figure_set  # noqa: F401
