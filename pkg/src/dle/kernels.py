"""Backend selection for modular elimination.

The compiled core ``_kernels_c`` is used when it was built; otherwise the
numpy fallback ``_kernels_py`` is imported.  ``DLE_KERNELS=python`` forces the
fallback.  Both expose ``rref_mod_p`` and ``rank_mod_p`` on C-contiguous int64
arrays.  Primes at or above ``2**31``
bypass both and use plain Python integers.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BIG_PRIME = 2 ** 31

_backend = _kernels_c if _kernels_c is not None and os.environ.get("DLE_KERNELS") != "python" else _kernels_py


def backend_name() -> str:
    return "cython" if _backend is _kernels_c else "python"


def available_backends():
    return ["cython", "python"] if _kernels_c is not None else ["python"]


def use_backend(name: str):
    """Force a backend (``"cython"`` or ``"python"``); returns the previous name."""
    global _backend
    prev = backend_name()
    if name == "cython":
        if _kernels_c is None:
            raise RuntimeError("compiled kernels are not built")
        _backend = _kernels_c
    elif name == "python":
        _backend = _kernels_py
    else:
        raise ValueError(name)
    return prev


def _array(rows, nrows, ncols, p):
    if not (nrows and ncols):
        return np.zeros((nrows, ncols), dtype=np.int64)
    return np.ascontiguousarray(np.array(rows, dtype=np.int64).reshape(nrows, ncols) % p)


def _rref_bigint(rows, ncols, p):
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(a)) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank_mod_p(rows, p, nrows=None, ncols=None):
    nrows = len(rows) if nrows is None else nrows
    ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
    if nrows == 0 or ncols == 0:
        return 0
    if p >= BIG_PRIME:
        return len(_rref_bigint(rows, ncols, p)[1])
    return int(_backend.rank_mod_p(_array(rows, nrows, ncols, p), p))


def rank_array(a, p):
    """Rank of an int64 array with entries in ``[0, p)``; the array is consumed."""
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return int(_backend.rank_mod_p(np.ascontiguousarray(a, dtype=np.int64), p))


def rref_mod_p(rows, nrows, ncols, p):
    """``(reduced rows, pivot columns)`` as Python lists."""
    if nrows == 0 or ncols == 0:
        return [list(r) for r in rows], []
    if p >= BIG_PRIME:
        return _rref_bigint(rows, ncols, p)
    a = _array(rows, nrows, ncols, p)
    pivots = _backend.rref_mod_p(a, p)
    return a.tolist(), list(pivots)


def nullspace_mod_p(rows, nrows, ncols, p):
    """Reduced basis of the right kernel, one vector per free column."""
    red, pivots = rref_mod_p(rows, nrows, ncols, p)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][free]) % p
        basis.append(v)
    return basis


def solve_mod_p(rows, nrows, ncols, b, p):
    """Some ``x`` with ``A x = b`` mod ``p`` (free variables zero), or ``None``."""
    if ncols == 0:
        return [] if not any(x % p for x in b) else None
    aug = [list(r) + [b[i]] for i, r in enumerate(rows)]
    red, pivots = rref_mod_p(aug, nrows, ncols + 1, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols] % p
    return x
