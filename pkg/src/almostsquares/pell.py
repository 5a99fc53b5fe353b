"""Continued fractions of sqrt(d), Pell units and the norm equation x^2 - d y^2 = n.

Representability of ``n > 0`` is decided with the Lagrange-Matthews-Mollin
(LMM) reduction: every primitive solution class with ``x = P0 * y (mod n)``
shows up as a unit ``Q_i`` in the continued fraction of ``(P0 + sqrt(d)) / n``.
Non-primitive solutions are handled by stripping square factors of ``n``.
"""

from __future__ import annotations

import math
import os
import tempfile
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .arith import integer_sqrt


@dataclass(frozen=True)
class SqrtContinuedFraction:
    d: int
    a0: int
    period: tuple[int, ...]

    def convergents(self, count: int):
        """Yield the first ``count`` convergents ``(p_k, q_k)``."""
        p_prev, p = 1, self.a0
        q_prev, q = 0, 1
        yield p, q
        k = 1
        while k < count:
            a = self.period[(k - 1) % len(self.period)]
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
            yield p, q
            k += 1


@dataclass(frozen=True)
class PellFundamental:
    d: int
    t: int
    u: int


@dataclass(frozen=True)
class NormRepresentation:
    d: int
    n: int
    witness: tuple[int, int] | None

    def __post_init__(self):
        if self.witness is not None:
            x, y = self.witness
            if x * x - self.d * y * y != self.n:
                raise ArithmeticError(f"bad witness {self.witness} for x^2 - {self.d}y^2 = {self.n}")

    @property
    def solvable(self) -> bool:
        return self.witness is not None


def _check_nonsquare(d: int) -> int:
    if d <= 1:
        raise ValueError(f"d must be >= 2, got {d}")
    root, exact = integer_sqrt(d)
    if exact:
        raise ValueError(f"d = {d} is a perfect square")
    return root


def _floor_quadratic(p: int, q: int, d: int, root: int) -> int:
    # floor((p + sqrt(d)) / q) for nonsquare d, q != 0
    if q > 0:
        return (p + root) // q
    return -((p + root) // -q) - 1


@lru_cache(maxsize=None)
def cf_expand(d: int) -> SqrtContinuedFraction:
    a0 = _check_nonsquare(d)
    m, den, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        period.append(a)
    return SqrtContinuedFraction(d, a0, tuple(period))


def _period_end_unit(d: int) -> tuple[int, int, int]:
    """Convergent at the end of the first period and its norm (+1 or -1)."""
    cf = cf_expand(d)
    length = len(cf.period)
    for p, q in cf.convergents(length):
        pass
    return p, q, p * p - d * q * q


class PellCache:
    """Fundamental solutions keyed by ``d``, persisted as ``d t u`` lines.

    Reads are lock-free dict lookups; ``put`` and ``save`` serialize on a lock.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._data: dict[int, tuple[int, int]] = {}
        self._lock = threading.Lock()
        self._dirty = False
        if self.path is not None and self.path.exists():
            self.load()

    def load(self) -> None:
        with open(self.path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise ValueError(f"{self.path}:{lineno}: expected 'd t u'")
                d, t, u = map(int, parts)
                if t * t - d * u * u != 1:
                    raise ValueError(f"{self.path}:{lineno}: ({t}, {u}) is not a Pell solution for d={d}")
                self._data[d] = (t, u)

    def get(self, d: int) -> tuple[int, int] | None:
        return self._data.get(d)

    def put(self, d: int, t: int, u: int) -> None:
        with self._lock:
            if d not in self._data:
                self._data[d] = (t, u)
                self._dirty = True

    def __contains__(self, d: int) -> bool:
        return d in self._data

    def __len__(self) -> int:
        return len(self._data)

    def save(self, path: str | os.PathLike | None = None) -> None:
        """Rewrite the whole file atomically (tempfile + rename)."""
        target = Path(path) if path is not None else self.path
        if target is None:
            raise ValueError("no cache path configured")
        with self._lock:
            items = sorted(self._data.items())
            target.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as fh:
                    for d, (t, u) in items:
                        fh.write(f"{d} {t} {u}\n")
                os.replace(tmp, target)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
            self._dirty = False


_default_cache = PellCache()


def set_pell_cache(cache: PellCache) -> PellCache:
    """Install ``cache`` as the module-wide fundamental-solution cache."""
    global _default_cache
    previous, _default_cache = _default_cache, cache
    return previous


def pell_fundamental(d: int) -> PellFundamental:
    """Least positive ``(t, u)`` with ``t^2 - d u^2 = 1``."""
    _check_nonsquare(d)
    hit = _default_cache.get(d)
    if hit is not None:
        return PellFundamental(d, *hit)
    t, u, norm = _period_end_unit(d)
    if norm == -1:
        t, u = t * t + d * u * u, 2 * t * u
    _default_cache.put(d, t, u)
    return PellFundamental(d, t, u)


def negative_pell(d: int) -> tuple[int, int] | None:
    """Least positive solution of ``t^2 - d u^2 = -1``, or None."""
    t, u, norm = _period_end_unit(d)
    return (t, u) if norm == -1 else None


def _square_divisors(n: int):
    f = 1
    while f * f <= n:
        if n % (f * f) == 0:
            yield f
        f += 1


def _primitive_hits(d: int, n: int, root: int):
    """Yield ``(x, y, x^2 - d y^2)`` with the norm equal to +-n, one LMM pass per root P0."""
    for p0 in range(-((n - 1) // 2), n // 2 + 1):
        if (p0 * p0 - d) % n:
            continue
        p, q = p0, n
        a_prev2, a_prev = 0, 1
        b_prev2, b_prev = 1, 0
        seen = set()
        while (p, q) not in seen:
            seen.add((p, q))
            a = _floor_quadratic(p, q, d, root)
            a_prev2, a_prev = a_prev, a * a_prev + a_prev2
            b_prev2, b_prev = b_prev, a * b_prev + b_prev2
            p = a * q - p
            q = (d - p * p) // q
            if q in (1, -1):
                x = n * a_prev - p0 * b_prev
                y = b_prev
                norm = x * x - d * y * y
                if norm in (n, -n):
                    yield x, y, norm
                    if norm == n:
                        break


@lru_cache(maxsize=None)
def _solve_norm(d: int, n: int) -> tuple[int, int] | None:
    root = _check_nonsquare(d)
    neg = None
    for f in _square_divisors(n):
        m = n // (f * f)
        if m == 1:
            return f, 0
        for x, y, norm in _primitive_hits(d, m, root):
            if norm == m:
                return abs(x) * f, abs(y) * f
            if neg is None:
                neg = (x * f, y * f)
    if neg is not None:
        unit = negative_pell(d)
        if unit is not None:
            x, y = neg
            t, u = unit
            return abs(x * t + d * y * u), abs(x * u + y * t)
    return None


def reduce_by_unit(d: int, x: int, y: int) -> tuple[int, int]:
    """Shrink ``(x, y)`` within its class by dividing out powers of the fundamental unit."""
    fund = pell_fundamental(d)
    t, u = fund.t, fund.u
    x, y = abs(x), abs(y)
    while True:
        x2, y2 = abs(x * t - d * y * u), abs(y * t - x * u)
        if y2 >= y:
            return x, y
        x, y = x2, y2


def norm_represents(d: int, n: int) -> NormRepresentation:
    """Decide whether ``x^2 - d y^2 = n`` is solvable for nonsquare ``d`` and ``n >= 1``.

    The witness is reduced by the fundamental unit, so ``x <= sqrt((t + 1) n / 2)``.
    """
    _check_nonsquare(d)
    if n < 1:
        raise ValueError("only positive n is supported")
    hit = _solve_norm(d, n)
    if hit is not None:
        hit = reduce_by_unit(d, *hit)
    return NormRepresentation(d, n, hit)


def degenerate_norm(d: int, n: int) -> NormRepresentation:
    """Solve ``x^2 - k^2 y^2 = n`` for square ``d = k^2`` via divisor pairs of ``n``."""
    k, exact = integer_sqrt(d)
    if not exact:
        raise ValueError(f"d = {d} is not a perfect square")
    if n < 1:
        raise ValueError("only positive n is supported")
    if k == 0:
        x, ok = integer_sqrt(n)
        return NormRepresentation(d, n, (x, 0) if ok else None)
    for r in range(1, math.isqrt(n) + 1):
        if n % r:
            continue
        s = n // r
        # (x - k y)(x + k y) = r s with r <= s
        if (s - r) % (2 * k) == 0:
            return NormRepresentation(d, n, ((r + s) // 2, (s - r) // (2 * k)))
    return NormRepresentation(d, n, None)


def represents(d: int, n: int) -> NormRepresentation:
    """Dispatch to ``norm_represents`` or ``degenerate_norm`` depending on ``d``."""
    if integer_sqrt(d)[1]:
        return degenerate_norm(d, n)
    return norm_represents(d, n)


def _scaled_equation(u: int, v: int, rhs: int) -> bool:
    # u Y^2 - v X^2 = rhs with u squarefree  <=>  Z^2 - u v X^2 = u rhs, u | Z
    return represents(u * v, u * rhs).solvable


@lru_cache(maxsize=None)
def eq1_solvable(a: int, b: int) -> bool:
    """Is ``b y^2 - a x^2 = 1`` solvable in integers?"""
    return _scaled_equation(b, a, 1)


@lru_cache(maxsize=None)
def eq2_solvable(b: int, c: int) -> bool:
    """Is ``c z^2 - b y^2 = 1`` solvable in integers?"""
    return _scaled_equation(c, b, 1)


@lru_cache(maxsize=None)
def eq3_solvable(a: int, c: int) -> bool:
    """Is ``c z^2 - a x^2 = 2`` solvable in integers?

    With ``gcd(a, c) = 2`` both sides halve to ``(c/2) z^2 - (a/2) x^2 = 1``.
    """
    g = math.gcd(a, c)
    if g == 2:
        return _scaled_equation(c // 2, a // 2, 1)
    if g != 1:
        return False
    return _scaled_equation(c, a, 2)


def clear_caches() -> None:
    """Drop in-memory memoization so a fresh Pell cache sees every lookup."""
    for fn in (cf_expand, _solve_norm, eq1_solvable, eq2_solvable, eq3_solvable):
        fn.cache_clear()
