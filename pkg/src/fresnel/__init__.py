"""Numerical toolkit for the contact geometry of Fresnel surfaces.

Computes contact-order indices of unit level sets of 1-homogeneous phases,
evaluates oscillatory integrals and Fourier-integral model operators, builds
phases for hyperbolic evolution models with time-dependent coefficients, and
fits the resulting sup-norm decay against the predicted rates.
"""

__version__ = "0.1.0"

from . import decay, evolution, oscint, phase, surface  # noqa: F401

__all__ = ["phase", "surface", "oscint", "evolution", "decay", "__version__"]
