"""Exact ordinal notations, sigma normal forms, canonical kappa-functions and finite topology."""

from ._pibase import *  # noqa: F401,F403
from ._pibase import DomainError, FiniteSpace, Ordinal, ParseError, Pattern, run_cli

__version__ = "0.1.0"
