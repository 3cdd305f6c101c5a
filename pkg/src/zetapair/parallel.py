"""Deterministic fan-out helpers.

Truncated sums may be farmed across worker threads, but the result must
be bit-identical for any worker count: workers only *compute* terms;
the reduction sorts (key, value) pairs by the canonical key and sums in
that fixed order with compensated accumulation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def deterministic_map(items, fn, threads=1):
    """Map fn over items, preserving input order, optionally threaded."""
    items = list(items)
    if threads <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    chunk = (len(items) + threads - 1) // threads
    pieces = [items[i:i + chunk] for i in range(0, len(items), chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda piece: [fn(x) for x in piece], pieces))
    out = []
    for part in parts:
        out.extend(part)
    return out


def _neumaier_sum(values):
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def sorted_complex_sum(pairs):
    """Sum complex values in canonical key order, compensated.

    pairs: iterable of (key, value); keys must be totally ordered.
    """
    pairs = sorted(pairs, key=lambda kv: kv[0])
    re = _neumaier_sum([complex(v).real for _, v in pairs])
    im = _neumaier_sum([complex(v).imag for _, v in pairs])
    return complex(re, im)
