"""An infinite family with max(sfp(n), sfp(n+1), sfp(n+2)) < n^(1/3).

``x_k + y_k sqrt(13) = (4 + sqrt(13)) (649 + 180 sqrt(13))^k`` solves
``x^2 - 13 y^2 = 3``. Every eighth term from ``k = 7`` has ``32 | x``; with
``a = x / 2`` the number ``n = 4a^3 - 3a - 1`` factors as

    n     = (a - 1) (2a + 1)^2
    n + 1 = 13 a y^2
    n + 2 = (a + 1) (2a - 1)^2

so each squarefree part is bounded without factoring anything.
"""

from __future__ import annotations

from dataclasses import dataclass

X0, X1 = 4, 4936
Y0, Y1 = 1, 1369
STEP = 1298  # trace of the unit 649 + 180 sqrt(13)


def recurrence_term(k: int) -> tuple[int, int]:
    """``(x_k, y_k)`` from the second-order recurrence."""
    if k < 0:
        raise ValueError("k must be >= 0")
    x_prev, x = X0, X1
    y_prev, y = Y0, Y1
    if k == 0:
        return x_prev, y_prev
    for _ in range(k - 1):
        x_prev, x = x, STEP * x - x_prev
        y_prev, y = y, STEP * y - y_prev
    return x, y


def closed_form_term(k: int) -> tuple[int, int]:
    """``(x_k, y_k)`` by expanding the product in Z[sqrt(13)] directly."""
    p, q = X0, Y0
    for _ in range(k):
        p, q = 649 * p + 13 * 180 * q, 180 * p + 649 * q
    return p, q


def verify_mod32_period(terms: int = 24) -> bool:
    """x_k mod 32 has period 8 over the first ``terms`` values and x_7, x_15, ... vanish."""
    residues = [recurrence_term(k)[0] % 32 for k in range(terms)]
    periodic = all(residues[k] == residues[k + 8] for k in range(terms - 8))
    return periodic and all(residues[k] == 0 for k in range(7, terms, 8))


@dataclass(frozen=True)
class FamilyTerm:
    m: int
    x: int
    y: int
    a: int
    n: int

    def identities(self) -> dict[str, bool]:
        a, n = self.a, self.n
        return {
            "pell": self.x**2 - 13 * self.y**2 == 3,
            "x_mod_32": self.x % 32 == 0,
            "a_mod_16": a % 16 == 0,
            "n": n - (a - 1) * (2 * a + 1) ** 2 == 0,
            "n_plus_1": (n + 1) - 13 * a * self.y**2 == 0,
            "n_plus_2": (n + 2) - (a + 1) * (2 * a - 1) ** 2 == 0,
        }


def family_term(m: int) -> FamilyTerm:
    """The ``m``-th member, built from ``x_{8m+7}`` and checked identity by identity."""
    if m < 0:
        raise ValueError("m must be >= 0")
    x, y = recurrence_term(8 * m + 7)
    if x % 2:
        raise AssertionError(f"x_{8 * m + 7} is odd")
    a = x // 2
    term = FamilyTerm(m=m, x=x, y=y, a=a, n=4 * a**3 - 3 * a - 1)
    failed = [name for name, ok in term.identities().items() if not ok]
    if failed:
        raise AssertionError(f"family term m={m} violates {failed}")
    return term


def structural_sfp_bounds(t: FamilyTerm) -> tuple[int, int, int]:
    """Upper bounds for sfp(n), sfp(n+1), sfp(n+2) read off the factorizations.

    sfp(M K^2) divides sfp(M) <= M, and 16 | a lets 13 a y^2 be rewritten as
    (13 a / 16) (4 y)^2.
    """
    if t.a % 16:
        raise ValueError("a is not divisible by 16")
    return t.a - 1, 13 * t.a // 16, t.a + 1


def bound_check(t: FamilyTerm) -> bool:
    """True iff (a + 1)^3 < n and the structural bounds stay at or below a + 1."""
    if t.a < 2 or t.n < 1:
        return False
    if t.a % 16:
        return False
    bounds = structural_sfp_bounds(t)
    return max(bounds) == t.a + 1 and (t.a + 1) ** 3 < t.n
