"""Coupled interior/boundary wave simulations.

Thin veneer over the C++ core: 1D strings and multi-transmission lines with
structured (massive, sprung, memory-carrying) boundaries, the circular
membrane with a ring frame, memory-kernel reduced models, energy ledgers and
Laplace-domain response extraction.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __doc__ as _core_doc  # noqa: F401
except ImportError:  # build-tree layout: _core sits on PYTHONPATH
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
