"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension runs the transfer integrator when it was
built; setting ``EITENGINE_PURE_PYTHON=1`` forces the pure-Python version.
The elementwise cross-section kernels always use the numpy implementation,
which vectorizes better than the scalar compiled loop (see
``benchmarks/bench_kernels.py``); both produce identical bits.
"""
import os

from . import _pykernels

if os.environ.get("EITENGINE_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

cross_sections = _pykernels.cross_sections
spectrum = _pykernels.spectrum
integrate_linear = _impl.integrate_linear
