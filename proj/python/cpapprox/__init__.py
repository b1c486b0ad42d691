"""Compound Poisson approximation toolkit.

Exact laws of sums of 1-dependent window statistics over i.i.d. drivers,
compound Poisson targets, exponentially weighted total-variation and
Wasserstein distances, and the explicit error bound with its verification
instruments (product representation, inversion inequality, moment
diagnostics).
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree test runs put the extension on sys.path
    from _core import *  # type: ignore # noqa: F401,F403

__version__ = "0.1.0"
