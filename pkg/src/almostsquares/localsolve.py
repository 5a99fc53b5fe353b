"""p-adic solvability of C: b y^2 - a x^2 = w^2, c z^2 - b y^2 = w^2.

Eliminating ``w`` and ``z`` turns the question into a one-parameter search:
C(Q_p) is non-empty iff some ``(x : y)`` in P^1(Q_p) makes both

    g1 = b y^2 - a x^2            (= w^2)
    g2 = c (2 b y^2 - a x^2)      (= (c z)^2)

squares in Q_p (zero counts as a square). P^1(Z_p) is covered by the charts
``(1 : t)`` and ``(p s : 1)`` with ``t, s`` in Z_p, and each chart is searched
ball by ball: on a ball where both square classes are constant the ball is
either accepted or dropped, otherwise it is split into ``p`` sub-balls.

Accepted points are turned into a primitive 4-tuple mod p^k satisfying the
multivariate Hensel criterion (some 2x2 Jacobian minor of valuation ``t``
with ``k > 2 t``), which is returned as a :class:`PadicWitness`.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .arith import factorize, is_probable_prime

MAX_BALL_DEPTH = 64
_WITNESS_PRECISION = 48


class IndeterminateError(RuntimeError):
    """Search hit its depth cap without deciding solvability."""

    def __init__(self, triple, p, message=""):
        self.triple = triple
        self.p = p
        super().__init__(message or f"local solvability of {triple} at p={p} is undecided")


@dataclass(frozen=True)
class QuadricIntersection:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("coefficients must be positive")

    def forms(self, x: int, y: int, z: int, w: int) -> tuple[int, int]:
        return (self.b * y * y - self.a * x * x - w * w, self.c * z * z - self.b * y * y - w * w)

    def jacobian(self, x: int, y: int, z: int, w: int):
        a, b, c = self.a, self.b, self.c
        return (
            (-2 * a * x, 2 * b * y, 0, -2 * w),
            (0, -2 * b * y, 2 * c * z, -2 * w),
        )

    def minors(self, point) -> list[int]:
        j0, j1 = self.jacobian(*point)
        return [j0[i] * j1[k] - j0[k] * j1[i] for i, k in itertools.combinations(range(4), 2)]

    def bad_primes(self) -> list[int]:
        return [p for p, _ in factorize(2 * self.a * self.b * self.c).factors]


@dataclass(frozen=True)
class PadicWitness:
    p: int
    depth: int
    point: tuple[int, int, int, int]
    liftable: bool

    def check(self, q: QuadricIntersection) -> bool:
        """Primitive, on both forms mod p^depth, and meets the minor criterion if ``liftable``."""
        mod = self.p**self.depth
        if all(v % self.p == 0 for v in self.point):
            return False
        if any(f % mod for f in q.forms(*self.point)):
            return False
        if not self.liftable:
            return True
        t = min_minor_valuation(q, self.point, self.p, self.depth)
        return self.depth > 2 * t


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _capped_valuation(n: int, p: int, cap: int) -> int:
    return cap if n % p**cap == 0 else valuation(n, p)


def min_minor_valuation(q: QuadricIntersection, point, p: int, cap: int) -> int:
    """Least valuation among the 2x2 Jacobian minors, capped at ``cap``."""
    return min(_capped_valuation(m, p, cap) for m in q.minors(point))


def legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def is_padic_square(n: int, p: int) -> bool:
    """Is the integer ``n`` a square in Q_p?"""
    if n == 0:
        return True
    v = valuation(n, p)
    if v % 2:
        return False
    u = n // p**v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def _sqrt_unit_mod(u: int, p: int, k: int) -> int:
    # square root of a p-adic unit square u, mod p^k
    if p == 2:
        r = 1
        for j in range(3, k):
            if (r * r - u) % 2 ** (j + 1):
                r += 2 ** (j - 1)
        return r % 2**k
    r = next(r for r in range(1, p) if (r * r - u) % p == 0)
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
    return r


def padic_sqrt(n: int, p: int, k: int) -> int:
    """An integer ``r`` with ``r^2 = n (mod p^k)`` for ``n`` a square in Q_p, ``v_p(n) >= 0``."""
    if n % p**k == 0:
        return 0
    v = valuation(n, p)
    half = v // 2
    return p**half * _sqrt_unit_mod(n // p**v, p, k) % p**k


def _chart_polys(q: QuadricIntersection, p: int):
    a, b, c = q.a, q.b, q.c
    # each poly is (alpha, beta) meaning alpha * t^2 + beta
    yield "x=1", ((b, -a), (2 * b * c, -a * c))
    yield "y=1", ((-a * p * p, b), (-a * c * p * p, 2 * b * c))


def _class_is_constant(alpha: int, beta: int, t0: int, k: int, p: int, e: int) -> bool:
    g0 = alpha * t0 * t0 + beta
    if g0 == 0:
        return False
    need = valuation(g0, p) + e
    lin = 2 * alpha * t0 * p**k
    quad = alpha * p ** (2 * k)
    return all(term == 0 or valuation(term, p) >= need for term in (lin, quad))


def _search_chart(polys, p: int, triple) -> int | None:
    e = 3 if p == 2 else 1
    queue = deque([(0, 0)])
    while queue:
        t0, k = queue.popleft()
        values = [al * t0 * t0 + be for al, be in polys]
        if all(is_padic_square(g, p) for g in values):
            return t0
        decided = [_class_is_constant(al, be, t0, k, p, e) for al, be in polys]
        if any(dec and not is_padic_square(g, p) for dec, g in zip(decided, values)):
            continue
        if all(decided):
            # both classes constant and square: the center already passed above
            return t0
        if k >= MAX_BALL_DEPTH:
            raise IndeterminateError(triple, p)
        step = p**k
        queue.extend((t0 + j * step, k + 1) for j in range(p))
    return None


def _witness(q: QuadricIntersection, p: int, x: int, y: int) -> PadicWitness:
    prec = _WITNESS_PRECISION
    g1 = q.b * y * y - q.a * x * x
    g2 = q.c * (2 * q.b * y * y - q.a * x * x)
    mod = p**prec
    w = padic_sqrt(g1, p, prec)
    cz = padic_sqrt(g2, p, prec)
    coords = [q.c * x, q.c * y, cz, q.c * w]
    shift = min(valuation(v, p) for v in coords if v % mod) if any(v % mod for v in coords) else 0
    point = tuple((v // p**shift) % p ** (prec - shift) for v in coords)
    t = min_minor_valuation(q, point, p, prec - shift - 1)
    depth = 2 * t + 1
    mod = p**depth
    wit = PadicWitness(p, depth, tuple(v % mod for v in point), True)
    if not wit.check(q):
        raise ArithmeticError(f"internal error: witness {wit} fails for {q}")
    return wit


def local_point(q: QuadricIntersection, p: int) -> PadicWitness | None:
    """A liftable p-adic point of ``q`` or None when C(Q_p) is empty."""
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    triple = (q.a, q.b, q.c)
    for name, polys in _chart_polys(q, p):
        t0 = _search_chart(polys, p, triple)
        if t0 is None:
            continue
        x, y = (1, t0) if name == "x=1" else (p * t0, 1)
        return _witness(q, p, x, y)
    return None


def is_locally_solvable(q: QuadricIntersection, p: int) -> tuple[bool, PadicWitness | None]:
    wit = local_point(q, p)
    return wit is not None, wit


def first_failing_prime(q: QuadricIntersection) -> int | None:
    for p in q.bad_primes():
        if local_point(q, p) is None:
            return p
    return None


def locally_solvable_everywhere(q: QuadricIntersection) -> bool:
    """Solvable over Q_p for every prime p dividing 2abc."""
    return first_failing_prime(q) is None


def hensel_lift_search(q: QuadricIntersection, p: int, depth_cap: int | None = None) -> bool:
    """Brute-force breadth-first lifting over all four coordinates.

    Independent of :func:`local_point`; only practical for small ``p``. A
    node mod p^k is accepted once some Jacobian minor has valuation ``t``
    with ``k > 2 t``.
    """
    if depth_cap is None:
        v = valuation(2 * q.a * q.b * q.c, p)
        depth_cap = 2 * (2 * v + 1) + 1
    level = []
    for lead in range(4):
        for rest in itertools.product(range(p), repeat=3 - lead):
            point = (0,) * lead + (1,) + rest
            if all(f % p == 0 for f in q.forms(*point)):
                level.append(point)
    k = 1
    while level:
        nxt = []
        for point in level:
            if k > 2 * min_minor_valuation(q, point, p, k):
                return True
            lead = next(i for i, v in enumerate(point) if v % p)
            free = [i for i in range(4) if i != lead]
            step = p**k
            mod = step * p
            for delta in itertools.product(range(p), repeat=3):
                child = list(point)
                for i, d in zip(free, delta):
                    child[i] += d * step
                if all(f % mod == 0 for f in q.forms(*child)):
                    nxt.append(tuple(child))
        k += 1
        if k > depth_cap and nxt:
            raise IndeterminateError((q.a, q.b, q.c), p, f"hensel search exceeded depth {depth_cap}")
        level = nxt
    return False
