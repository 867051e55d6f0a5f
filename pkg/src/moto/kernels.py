"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. ``MOTO_KERNELS=python`` forces the fallback.
"""
import os

if os.environ.get("MOTO_KERNELS", "").lower() == "python":
    from moto import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from moto import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from moto import _kernels_py as _impl

        BACKEND = "python"

chain_fk = _impl.chain_fk
vote_counts = _impl.vote_counts
hinge_sum = _impl.hinge_sum

__all__ = ["BACKEND", "chain_fk", "vote_counts", "hinge_sum"]
