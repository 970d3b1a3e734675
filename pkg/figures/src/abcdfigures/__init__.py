"""Figure renderer for abcdgraph experiment CSVs."""

from .render import FigureError, FigureSpec, load_figure_spec, render

__all__ = ["FigureError", "FigureSpec", "load_figure_spec", "render"]
