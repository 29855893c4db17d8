"""Hot loops with two interchangeable backends.

``MODLAT_BACKEND`` selects ``numba`` (compiled, the default when numba is
importable) or ``numpy`` (the same loop kernels run by the interpreter, plus
a matmul path for adjacency).  Every public function also takes an explicit
``backend=`` override, which the tests and the benchmark use.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import _loops
from ._loops import MAX_BITS

BACKENDS = ("numba", "numpy")
_KERNELS = ("adjacency_packed", "max_clique", "chromatic", "dominating")


@lru_cache(maxsize=None)
def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def active_backend() -> str:
    raw = os.environ.get("MODLAT_BACKEND", "").strip().lower()
    if not raw:
        return "numba" if numba_available() else "numpy"
    if raw not in BACKENDS:
        raise ValueError(f"MODLAT_BACKEND={raw!r}; expected one of {BACKENDS}")
    if raw == "numba" and not numba_available():
        raise ValueError("MODLAT_BACKEND=numba but numba is not installed")
    return raw


@lru_cache(maxsize=None)
def _compiled() -> dict:
    from numba import njit

    return {name: njit(cache=True)(getattr(_loops, name)) for name in _KERNELS}


def _impl(name: str, which: str | None):
    which = which or active_backend()
    if which == "numba":
        return _compiled()[name]
    if which == "numpy":
        return getattr(_loops, name)
    raise ValueError(f"unknown backend {which!r}")


def adjacency(masks: np.ndarray, backend: str | None = None) -> np.ndarray:
    """``adj[i, j]`` iff rows ``i != j`` share an element other than element 0."""
    masks = np.asarray(masks, dtype=bool)
    if masks.shape[0] == 0:
        return np.zeros((0, 0), dtype=bool)
    nz = masks[:, 1:]
    which = backend or active_backend()
    if which == "numpy":
        M = nz.astype(np.float32)
        adj = (M @ M.T) > 0.5
        np.fill_diagonal(adj, False)
        return adj
    packed = np.packbits(nz, axis=1)
    return _impl("adjacency_packed", which)(packed)


def to_bits(adj: np.ndarray, closed: bool = False) -> np.ndarray:
    n = adj.shape[0]
    if n > MAX_BITS:
        raise ValueError(f"{n} vertices exceed the {MAX_BITS}-vertex bitmask kernels")
    weights = np.array([1 << i for i in range(n)], dtype=np.int64)
    a = adj.astype(bool)
    if closed:
        a = a | np.eye(n, dtype=bool)
    return (a.astype(np.int64) * weights[None, :]).sum(axis=1).astype(np.int64)


def _members(mask: int, n: int) -> list[int]:
    return [v for v in range(n) if (int(mask) >> v) & 1]


def max_clique(adj: np.ndarray, backend: str | None = None) -> list[int]:
    n = adj.shape[0]
    if n == 0:
        return []
    _, mask = _impl("max_clique", backend)(to_bits(adj), n)
    return _members(mask, n)


def chromatic(adj: np.ndarray, lower: int = 1, backend: str | None = None) -> tuple[int, list[int]]:
    n = adj.shape[0]
    if n == 0:
        return 0, []
    k, colors = _impl("chromatic", backend)(to_bits(adj), n, int(lower))
    return int(k), [int(c) for c in colors]


def dominating(adj: np.ndarray, backend: str | None = None) -> list[int]:
    n = adj.shape[0]
    if n == 0:
        return []
    _, mask = _impl("dominating", backend)(to_bits(adj, closed=True), n)
    return _members(mask, n)
