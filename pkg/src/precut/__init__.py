"""Exact combinatorics of bimonoid species from preorder cuts."""

__version__ = "0.1.0"

from .errors import PrecutError
from .preorder import Preorder
from .species import SpeciesInstance, VerificationReport

__all__ = ["Preorder", "PrecutError", "SpeciesInstance", "VerificationReport", "__version__"]
