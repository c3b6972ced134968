"""Dynamics of singularly perturbed Blaschke products.

Thin wrapper around the compiled extension; run `pip install .` for the
packaged layout or point PYTHONPATH at a CMake build tree.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed wheel layout)
    from ._core import __doc__ as _doc
except ImportError:  # pragma: no cover - in-tree build layout
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"
