"""High-precision estimation of the Laurent coefficients of the secondary zeta function."""

__version__ = "0.1.0"
