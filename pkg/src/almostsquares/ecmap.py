"""Map solutions of n = a x^2, n+1 = b y^2, n+2 = c z^2 onto E: Y^2 = X^3 - (abc)^2 X."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CurvePoint:
    N: int
    X: int = 0
    Y: int = 0
    at_infinity: bool = False

    def __post_init__(self):
        if not self.at_infinity and not self.on_curve():
            raise ValueError(f"({self.X}, {self.Y}) is not on Y^2 = X^3 - {self.N}^2 X")

    def on_curve(self) -> bool:
        return self.at_infinity or self.Y**2 == self.X**3 - self.N**2 * self.X

    @classmethod
    def infinity(cls, N: int) -> "CurvePoint":
        return cls(N, at_infinity=True)


def check_solution(a: int, b: int, c: int, n: int, x: int, y: int, z: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if min(x, y, z) < 1:
        raise ValueError("x, y, z must be positive")
    if n != a * x * x or n + 1 != b * y * y or n + 2 != c * z * z:
        raise ValueError(f"({a},{b},{c}), n={n}, (x,y,z)=({x},{y},{z}) is not a solution")


def map_solution(a: int, b: int, c: int, n: int, x: int, y: int, z: int) -> CurvePoint:
    """``((n + 1) abc, (abc)^2 xyz)``; raises ValueError on a non-solution."""
    check_solution(a, b, c, n, x, y, z)
    N = a * b * c
    return CurvePoint(N, (n + 1) * N, N * N * x * y * z)


def is_torsion(P: CurvePoint) -> bool:
    """Torsion on y^2 = x^3 - N^2 x is exactly {O, (0, 0), (N, 0), (-N, 0)}."""
    if P.at_infinity:
        return True
    return P.Y == 0 and P.X in (0, P.N, -P.N)


def nontorsion_implies_candidate(a: int, b: int, c: int, n: int, x: int, y: int, z: int) -> bool:
    """A positive solution gives a point with Y != 0, hence of infinite order."""
    P = map_solution(a, b, c, n, x, y, z)
    if P.Y == 0 or is_torsion(P):
        raise AssertionError(f"solution n={n} mapped to torsion point {P}")
    return True
