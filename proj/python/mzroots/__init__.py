"""Perturbed roots of unity: MZ constants, A_p weights and threshold sweeps."""

from ._mzroots import *  # noqa: F401,F403
from ._mzroots import Error, CollisionError, GridTooCoarse, DegreeMismatch, SingularError  # noqa: F401

__version__ = "0.1.0"
