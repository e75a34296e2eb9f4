"""Hot aggregation kernels for the float-mode distribution dynamic program.

Two interchangeable backends:

* compiled (numba ``@njit``), the default;
* pure numpy, selected by setting the environment variable
  ``SPCIRCUITS_NO_NUMBA`` to a non-empty value before import.

Both operate on parallel int64 arrays ``(keys, values)`` where keys are
quantized resistances and values are multiplicities.  ``ACTIVE_BACKEND``
reports which one is in use.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "ACTIVE_BACKEND",
    "dedupe_sorted",
    "merge_aggregate",
    "sort_aggregate",
]


def _dedupe_sorted_np(keys: np.ndarray, vals: np.ndarray):
    """Collapse equal adjacent keys of a sorted run, summing values."""
    if keys.size == 0:
        return keys, vals
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    out_k = keys[starts]
    out_v = np.add.reduceat(vals, starts)
    return out_k, out_v


def _merge_aggregate_np(ak, av, bk, bv):
    """Merge two sorted deduplicated runs, summing values on equal keys."""
    if ak.size == 0:
        return bk.copy(), bv.copy()
    if bk.size == 0:
        return ak.copy(), av.copy()
    keys = np.concatenate((ak, bk))
    vals = np.concatenate((av, bv))
    order = np.argsort(keys, kind="stable")
    return _dedupe_sorted_np(keys[order], vals[order])


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def _dedupe_inplace(keys, vals):
        n = 0
        for i in range(keys.size):
            if n > 0 and keys[n - 1] == keys[i]:
                vals[n - 1] += vals[i]
            else:
                keys[n] = keys[i]
                vals[n] = vals[i]
                n += 1
        return n

    @njit(cache=True)
    def _merge_count(ak, bk):
        i = j = n = 0
        while i < ak.size and j < bk.size:
            if ak[i] < bk[j]:
                i += 1
            elif ak[i] > bk[j]:
                j += 1
            else:
                i += 1
                j += 1
            n += 1
        return n + (ak.size - i) + (bk.size - j)

    @njit(cache=True)
    def _merge_fill(ak, av, bk, bv, out_k, out_v):
        i = j = n = 0
        while i < ak.size and j < bk.size:
            if ak[i] < bk[j]:
                out_k[n] = ak[i]
                out_v[n] = av[i]
                i += 1
            elif ak[i] > bk[j]:
                out_k[n] = bk[j]
                out_v[n] = bv[j]
                j += 1
            else:
                out_k[n] = ak[i]
                out_v[n] = av[i] + bv[j]
                i += 1
                j += 1
            n += 1
        while i < ak.size:
            out_k[n] = ak[i]
            out_v[n] = av[i]
            n += 1
            i += 1
        while j < bk.size:
            out_k[n] = bk[j]
            out_v[n] = bv[j]
            n += 1
            j += 1

    def dedupe_sorted(keys, vals):
        keys = keys.copy()
        vals = vals.copy()
        n = _dedupe_inplace(keys, vals)
        return keys[:n].copy(), vals[:n].copy()

    def merge_aggregate(ak, av, bk, bv):
        # Two passes: count first, then fill an exact-size output, so a
        # merge never allocates more than it returns (peak-memory matters
        # at the largest levels).
        n = _merge_count(ak, bk)
        out_k = np.empty(n, np.int64)
        out_v = np.empty(n, np.int64)
        _merge_fill(ak, av, bk, bv, out_k, out_v)
        return out_k, out_v

    return dedupe_sorted, merge_aggregate


if os.environ.get("SPCIRCUITS_NO_NUMBA"):
    ACTIVE_BACKEND = "numpy"
    dedupe_sorted = _dedupe_sorted_np
    merge_aggregate = _merge_aggregate_np
else:
    ACTIVE_BACKEND = "numba"
    dedupe_sorted, merge_aggregate = _build_numba()


def sort_aggregate(keys: np.ndarray, vals: np.ndarray):
    """Sort an arbitrary (keys, vals) batch and collapse duplicates."""
    order = np.argsort(keys, kind="stable")
    return dedupe_sorted(keys[order], vals[order])
