"""Numerical verification of Turan-type inequalities for special functions."""
__version__ = "0.1.0"
