"""Exact computations with solvable linear groups over finite fields.

Finite fields and matrices, enumerated groups with their Fitting and Sylow
data, standard group families, orbit computations on modules, structural
decompositions of quasi-primitive modules, orbit-counting inequalities,
character tables with p-blocks, and verifiers that replay their witnesses.
"""

__version__ = "0.1.0"

from .errors import Alarm, DomainError, ResourceError, SolvlinError, StructuralError, UsageError  # noqa: E402

__all__ = [
    "Alarm",
    "DomainError",
    "ResourceError",
    "SolvlinError",
    "StructuralError",
    "UsageError",
    "__version__",
]
