"""Exact tools for finding rational functions with rational critical and inflexion points."""

__version__ = "0.1.0"

from .exact import Poly, RatFunc, deriv_numerator, parse_poly, ratfunc_new, second_deriv_numerator  # noqa: E402
from .families import FamilyParams, analyze, build, check, search  # noqa: E402

__all__ = [
    "Poly",
    "RatFunc",
    "FamilyParams",
    "analyze",
    "build",
    "check",
    "deriv_numerator",
    "parse_poly",
    "ratfunc_new",
    "search",
    "second_deriv_numerator",
    "__version__",
]
