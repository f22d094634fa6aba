"""Square-function estimates on Ahlfors-regular point clouds.

The heavy lifting lives in the compiled extension `_sqfn`; this package
re-exports its surface.
"""

from ._sqfn import *  # noqa: F401,F403
from ._sqfn import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
