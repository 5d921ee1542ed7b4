"""
kitebilliards: outer billiards on kites in exact rational arithmetic.

The package computes the square map and first return map of K(A), the
master picture and arithmetic graph, hexagrids and pivot arcs, and the
renormalization data behind the fundamental orbit, the Cantor set and
the odometer.
"""
from kitebilliards.config import Settings, get_settings, reload_settings
from kitebilliards.dynamics import Kite, first_return_direct, pinwheel, square_orbit
from kitebilliards.exceptions import (
    BudgetExceededError,
    DomainError,
    KiteBilliardsError,
    UndefinedOrbitError,
    VerificationError,
)
from kitebilliards.models import LatticePoint, PlanePoint, Report, SequenceChain, parse_rational

__version__ = "1.0.0"

__all__ = [
    "BudgetExceededError",
    "DomainError",
    "Kite",
    "KiteBilliardsError",
    "LatticePoint",
    "PlanePoint",
    "Report",
    "SequenceChain",
    "Settings",
    "UndefinedOrbitError",
    "VerificationError",
    "first_return_direct",
    "get_settings",
    "parse_rational",
    "pinwheel",
    "reload_settings",
    "square_orbit",
]
