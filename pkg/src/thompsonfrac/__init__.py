"""Exact computations in Thompson-like fraction groups ``LΓ ⋊ V``."""

from .kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
