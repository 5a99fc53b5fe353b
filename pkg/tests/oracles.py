"""Brute-force reference implementations shared by the unit and acceptance tests."""

import math

import numpy as np


def brute_pell(d, umax=10**4):
    """Smallest t^2 - d u^2 = 1 with 1 <= u <= umax, or None."""
    for u in range(1, umax + 1):
        t2 = 1 + d * u * u
        t = math.isqrt(t2)
        if t * t == t2:
            return t, u
    return None


_V = np.arange(0, 10**4 + 1, dtype=np.int64)


def _sweep(num, den):
    ok = (num >= 0) & (num % den == 0)
    q = num[ok] // den
    r = np.rint(np.sqrt(q)).astype(np.int64)
    return bool(np.any(r * r == q))


def direct_search(u, v, rhs):
    """u P^2 - v Q^2 = rhs with P <= 10^4 or Q <= 10^4."""
    return _sweep(u * _V * _V - rhs, v) or _sweep(rhs + v * _V * _V, u)


def brute_counts(form, limit):
    """Triple loop over the box each coefficient allows."""
    ca, cb, cc = form
    counts = np.zeros(limit + 1, dtype=np.int64)
    rx, ry, rz = (math.isqrt(limit // c) for c in form)
    for x in range(-rx, rx + 1):
        for y in range(-ry, ry + 1):
            base = ca * x * x + cb * y * y
            if base > limit:
                continue
            for z in range(-rz, rz + 1):
                v = base + cc * z * z
                if v <= limit:
                    counts[v] += 1
    return counts
