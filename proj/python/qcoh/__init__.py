"""Convex-roof coherence measures of single qubits.

Thin re-export of the compiled ``_qcoh`` extension.
"""

from ._qcoh import *  # noqa: F401,F403
from ._qcoh import __doc__  # noqa: F401

__version__ = "0.1.0"
