"""Deterministic work distribution for checker enumerations.

Workers share immutable ring/module data, so a thread pool is enough.  All
merge logic is order-based: results are consumed in enumeration order, hence
verdicts and reported witnesses are bit-identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

_BATCH = 256


def first_failure(items, fn, threads: int = 1):
    """Return (index, fn(item)) for the first item where fn is not None.

    ``items`` is a sequence; fn(item) returns None for "no finding" or a
    payload describing the failure.  Scanning is batched: each batch is
    evaluated (possibly concurrently) and then inspected in enumeration
    order, so the reported hit is always the one with the smallest index.
    """
    items = list(items)
    if threads <= 1:
        for i, it in enumerate(items):
            r = fn(it)
            if r is not None:
                return i, r
        return None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(items), _BATCH):
            chunk = items[start : start + _BATCH]
            for off, r in enumerate(pool.map(fn, chunk)):
                if r is not None:
                    return start + off, r
    return None


def ordered_map(items, fn, threads: int = 1) -> list:
    """Map preserving enumeration order (thread-count independent)."""
    items = list(items)
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
