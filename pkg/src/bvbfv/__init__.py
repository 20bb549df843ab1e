"""Verification engine for Chern-Simons theory with Wilson lines in the BV-BFV formalism."""
from .lie import ConfigError

__version__ = "0.1.0"
__all__ = ["ConfigError", "__version__"]
