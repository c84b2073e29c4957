"""Goal-oriented semantic communication simulator.

C++ core exposed through pybind11: relative representations, the synthetic
stitching study, the per-slot system model, and the drift-plus-penalty
controller with its closed-form rate/frequency allocation.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
