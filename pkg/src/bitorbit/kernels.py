"""Hot GF(2) kernels with a compiled backend and a pure-Python fallback.

The compiled extension is picked at import when it was built; otherwise the
pure-Python module is used. Call sites must go through this module's
attributes (``kernels.clmul(...)``) so that :func:`use_backend` takes effect.
"""

import sys

from bitorbit import _kernels_py

try:
    from bitorbit import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if sys.byteorder != "little":
    _ckernels = None

BACKENDS = {"python": _kernels_py}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

backend = "cython" if _ckernels is not None else "python"


def use_backend(name):
    """Switch every kernel to backend ``name`` ("python" or "cython")."""
    global backend, clmul, clsquare, prefix_xor, _fst_run
    try:
        impl = BACKENDS[name]
    except KeyError:
        raise ValueError("backend %r is not available (have: %s)"
                         % (name, ", ".join(sorted(BACKENDS)))) from None
    backend = name
    clmul = impl.clmul
    clsquare = impl.clsquare
    prefix_xor = impl.prefix_xor
    _fst_run = impl.fst_run


def fst_run(next_state, out_value, out_len, initial, value, nbits):
    if max(out_len, default=0) > 64:
        # compiled path packs each output into one machine word
        return _kernels_py.fst_run(next_state, out_value, out_len, initial, value, nbits)
    return _fst_run(next_state, out_value, out_len, initial, value, nbits)


use_backend(backend)
