"""Exact verification toolkit for lines on cubic fourfolds with a node or a cyclic cusp."""
from __future__ import annotations

__version__ = "0.1.0"

from .fourfold import SingularCubicFourfold, load, make_fixture, validate
from .fanomaps import phi, phi_inverse
from .lines import Nonreduced, ProjectiveLine, Reduced

__all__ = [
    "SingularCubicFourfold", "load", "make_fixture", "validate", "phi", "phi_inverse",
    "Nonreduced", "ProjectiveLine", "Reduced", "__version__",
]
