"""qgauss: moments, certified norm bounds and spectra of q-Gaussian polynomials."""

__all__ = ["__version__"]
__version__ = "0.1.0"
