"""Exact integer helpers: factorization, squarefree parts and the sfp sieve."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

TRIAL_LIMIT = 10**6
# int32 entries; 10**8 needs ~400 MB, beyond that numpy raises MemoryError
MAX_TABLE_LIMIT = 2**31 - 3

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ResourceError(MemoryError):
    """A table could not be allocated at the requested size."""


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 0
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors do not multiply to {self.value}")


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), is_perfect_square)``."""
    if n < 0:
        raise ValueError("integer_sqrt of a negative number")
    r = math.isqrt(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    return n >= 0 and integer_sqrt(n)[1]


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's variant; n is odd, composite and not a prime power of a small prime
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r, exact = integer_sqrt(n)
    if exact:
        _split(r, out)
        _split(r, out)
        return
    d = _pollard_rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Factor ``n`` by trial division up to 10**6, then Pollard rho."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    found: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m and p <= TRIAL_LIMIT:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
        p += 1 if p == 2 else 2
    if m > 1:
        if m < p * p:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def sfp(n: int) -> int:
    """Squarefree part: the least divisor ``a`` of ``n`` with ``n // a`` square."""
    if n < 1:
        raise ValueError(f"sfp needs n >= 1, got {n}")
    out = 1
    for p, e in factorize(n).factors:
        if e % 2:
            out *= p
    return out


def is_squarefree(n: int) -> bool:
    return n >= 1 and sfp(n) == n


def squarefree_upto(bound: int) -> list[int]:
    """All squarefree integers in ``[1, bound]``."""
    if bound < 1:
        return []
    table = build_sfp_table(bound)
    return [k for k in range(1, bound + 1) if table[k] == k]


def _primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


class SfpTable:
    """``table[k] == sfp(k)`` for ``1 <= k <= limit``; index 0 is unused.

    Built by sieving prime squares, never by factoring entries. Entries are
    int32, so memory is ``4 * (limit + 1)`` bytes.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("limit must be >= 1")
        if limit > MAX_TABLE_LIMIT:
            raise ResourceError(f"limit {limit} exceeds int32 table capacity")
        self.limit = limit
        try:
            entries = np.arange(limit + 1, dtype=np.int32)
        except MemoryError as exc:
            raise ResourceError(f"cannot allocate sfp table of size {limit}") from exc
        for p in _primes_upto(math.isqrt(limit)):
            p = int(p)
            sq = p * p
            q = sq
            while q <= limit:
                entries[q::q] //= sq
                q *= sq
        entries.flags.writeable = False
        self.entries = entries

    def __getitem__(self, k):
        return self.entries[k]

    def __len__(self) -> int:
        return self.limit


def build_sfp_table(limit: int) -> SfpTable:
    return SfpTable(limit)
