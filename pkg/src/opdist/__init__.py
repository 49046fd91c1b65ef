"""Distances between operators acting in different Hilbert spaces.

Finite-dimensional realizations of the unitary, isometric and
quasi-unitary distances, crude multiplicity functions with their
Hausdorff and Lévy-Prokhorov distances, and convergence checks for
operator sequences.
"""

from .cmf import Cmf, RealSet, validate_cmf
from .errors import OpDistError

__version__ = "0.1.0"

__all__ = ["Cmf", "RealSet", "validate_cmf", "OpDistError", "__version__"]
