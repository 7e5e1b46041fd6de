"""Quaternion offset linear canonical transforms and their Wigner-Ville distributions.

Signals are sampled on uniform 2D grids and stored as ``(..., 4)`` float
arrays of quaternion components ``(q0, q1, q2, q3)``.
"""
from .errors import *  # noqa: F401,F403
from .quaternion import *  # noqa: F401,F403
from .grid import *  # noqa: F401,F403
from .qft import *  # noqa: F401,F403
from .qolct import *  # noqa: F401,F403
from .wvd import *  # noqa: F401,F403
from .theorems import *  # noqa: F401,F403
from .generators import *  # noqa: F401,F403

__version__ = "0.1.0"
