"""Lattice, crystal and character computations around metaplectic dual data."""

from .rootdata import RootDatum, Weight, build

__all__ = ["RootDatum", "Weight", "build"]
__version__ = "0.1.0"
