"""Kernel backend selection.

The compiled ``_kernels`` extension is used when importable; setting
``CONFIGPROB_PURE_PYTHON=1`` forces the pure-Python reference kernels.
"""
import os

from . import _kernels_py as python_kernels

try:
    from . import _kernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and not os.environ.get("CONFIGPROB_PURE_PYTHON"):
    kernels = compiled_kernels
else:
    kernels = python_kernels

BACKEND = kernels.BACKEND


def oracle_pair(stubs, m, n):
    if kernels is compiled_kernels and len(stubs) <= compiled_kernels.MAX_PAIR_STUBS:
        return kernels.oracle_pair(stubs, m, n)
    return python_kernels.oracle_pair(stubs, m, n)


def oracle_directed(out_stubs, in_stubs, m, n):
    if kernels is compiled_kernels and len(out_stubs) <= compiled_kernels.MAX_DIRECTED_STUBS:
        return kernels.oracle_directed(out_stubs, in_stubs, m, n)
    return python_kernels.oracle_directed(out_stubs, in_stubs, m, n)
