"""Numerical verification toolkit for cohomogeneity-one actions on rank-two symmetric spaces."""

__version__ = "0.1.0"
