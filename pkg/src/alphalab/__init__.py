"""Independence-number estimates from split-graph degree sequences and matrix
nilpotency, measured against an exact oracle."""

from .errors import InputError, ParseError
from .graphcore import Graph

__version__ = "0.1.0"
__all__ = ["Graph", "InputError", "ParseError"]
