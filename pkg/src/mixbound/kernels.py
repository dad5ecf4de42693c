"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
fallback. Set ``MIXBOUND_BACKEND=python`` to force the fallback.
"""
import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("MIXBOUND_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
max_clique = _active.max_clique
pairwise_hamming = _active.pairwise_hamming
csr_matvec = _active.csr_matvec
greedy_clique = _active.greedy_clique
distance_at_least = _active.distance_at_least


def backends():
    """The importable backends, compiled first."""
    return [b for b in (compiled_backend, python_backend) if b is not None]
