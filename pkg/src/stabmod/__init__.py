"""stabmod: exact cohomology computations for a catalog of finite
multigraded exterior DGAs over prime fields, with filtration spectral
sequences, cobar cocycle checks, and a generating-function rank conjecture."""

__version__ = "0.1.0"

from .dga import (DgaPresentation, Element, GeneratorSpec, MultiDegree,
                  apply_action, associated_graded, check_presentation,
                  differential, multiply)

__all__ = [
    "DgaPresentation", "Element", "GeneratorSpec", "MultiDegree",
    "apply_action", "associated_graded", "check_presentation",
    "differential", "multiply", "__version__",
]
