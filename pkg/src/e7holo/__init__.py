"""Exact-arithmetic workbench for E7 curvature spaces, Bott-Borel-Weil
cohomology and deformed Poisson structures."""

__version__ = "0.1.0"
