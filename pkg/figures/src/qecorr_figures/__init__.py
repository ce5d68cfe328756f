"""Publication-style figures from qecorr CSV outputs.

Rendering is strictly read-only over the input files: every number in
a figure comes from the CSV, nothing is recomputed.
"""

from qecorr_figures.render import FigureSpec, render_fig1, render_timeline

__version__ = "0.1.0"

__all__ = ["FigureSpec", "render_fig1", "render_timeline"]
