"""Random dynamical systems: shift-invariant noise drivers, cocycles,
pullback omega-limit sets and strong/weak attractor constructions."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
