"""Figure rendering for hexcc result files; consumes only the documented
CSV/JSON schemas, never the primary package."""

from .render import FigureSpec, KINDS, render
from . import schemas

__version__ = "0.1.0"

__all__ = ["FigureSpec", "KINDS", "render", "schemas", "__version__"]
