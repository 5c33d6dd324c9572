"""Long-range Kitaev chain quench simulator.

Stationary-state entanglement measures (mutual information, tripartite
mutual information, Gaussian log-negativity bound) and finite-size scaling
of effective central charges for sudden quenches of the long-range Kitaev
chain with power-law p-wave pairing.
"""

__version__ = "0.1.0"

from .model import ModelParams, QuenchProtocol
from .errors import (
    DegenerateModeError,
    NonPhysicalSpectrumError,
    NonRealResultError,
    SingularMatrixError,
    ValidationError,
)

__all__ = [
    "ModelParams",
    "QuenchProtocol",
    "ValidationError",
    "DegenerateModeError",
    "NonPhysicalSpectrumError",
    "SingularMatrixError",
    "NonRealResultError",
    "__version__",
]
