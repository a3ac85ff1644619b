"""Kernel selection.

The compiled extension is preferred when it was built and the modulus fits
in machine words; otherwise the pure-Python module is used.  Setting
``REGSYS_PURE_PYTHON=1`` forces the fallback everywhere.
"""

import os

from . import _kernels_py as python

try:
    from . import _kernels as compiled
except ImportError:
    compiled = None

if os.environ.get("REGSYS_PURE_PYTHON") == "1":
    compiled = None

WORD_LIMIT = 1 << 31


def for_modulus(mod):
    if compiled is not None and mod < WORD_LIMIT:
        return compiled
    return python


def backend_name():
    return "compiled" if compiled is not None else "python"
