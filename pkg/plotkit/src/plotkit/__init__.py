"""Figure rendering for eubsim sweep CSV files."""

from .reader import EXPECTED_COLUMNS, SchemaError, SweepData, read_sweep_csv
from .render import FIGURE_PANELS, FigureSpec, plotted_arrays, render

__version__ = "0.1.0"
