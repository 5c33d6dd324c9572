"""Plotting front end for the chain simulator's CSV outputs.

Display only: this package never computes physics quantities, it renders
the CSV files written by the simulation CLI into line figures and
phase-diagram heatmaps.
"""

__version__ = "0.1.0"

from .schema import NoDataError, SchemaError, load_table
from .render import PlotSpec, render

__all__ = ["PlotSpec", "render", "load_table", "SchemaError", "NoDataError"]
