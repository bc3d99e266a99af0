"""Backend selection for the hot kernels.

The compiled extension ``rgc._ckernels`` is used when it imports; otherwise the
pure-Python reference ``rgc._pykernels`` is used.  Set ``RGC_PURE_PYTHON=1``
to force the fallback.  Both backends expose the same functions and produce
bit-identical results.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    if os.environ.get("RGC_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from . import _ckernels as _active
except ImportError:
    _active = _pykernels
    compiled_backend = None
else:
    compiled_backend = _active

BACKEND = _active.BACKEND

canonical = _active.canonical
canonical_labels = _active.canonical_labels
code_only = _active.code_only
expand = _active.expand
relabel_sign = _active.relabel_sign

# Not hot; always from the reference module.
vertex_cycles = _pykernels.vertex_cycles
splittings = _pykernels.splittings
