"""Single-excitation dynamics of a cavity-magnomechanical quantum battery.

Thin re-export of the compiled ``_core`` extension. ``lambda`` is a Python
keyword, so the atom-cavity coupling is spelled ``lambda_``.
"""

from ._core import *  # noqa: F401,F403
from ._core import AccountingMode, SweepParameter  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
