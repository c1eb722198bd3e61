"""Rotating 2D fluid equilibria perturbed by a small point mass."""
from ._core import *  # noqa: F401,F403
from ._core import Error, ConfigError, ResonanceError, DivergenceError, QuadratureError  # noqa: F401

__version__ = "0.1.0"
