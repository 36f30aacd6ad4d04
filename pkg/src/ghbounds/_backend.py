"""Select the numerical kernel: compiled if importable, else pure Python.

Set ``GHBOUNDS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

kernel = _pykernels
NAME = "python"

if os.environ.get("GHBOUNDS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernel = _ckernels
        NAME = "cython"

KIND_GH = _pykernels.KIND_GH
KIND_VG = _pykernels.KIND_VG
KIND_MCKAY = _pykernels.KIND_MCKAY
KIND_GAMMA = _pykernels.KIND_GAMMA
