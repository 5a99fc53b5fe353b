import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from almostsquares.arith import (
    Factorization,
    ResourceError,
    SfpTable,
    build_sfp_table,
    factorize,
    integer_sqrt,
    is_probable_prime,
    is_squarefree,
    sfp,
    squarefree_upto,
)


def brute_sfp(n):
    # smallest divisor a with n/a a perfect square
    for a in range(1, n + 1):
        if n % a == 0 and math.isqrt(n // a) ** 2 == n // a:
            return a


@pytest.mark.parametrize(
    "n, factors",
    [
        (1, ()),
        (48, ((2, 4), (3, 1))),
        (8388223, ((127, 1), (257, 2))),
        (2**61 - 1, ((2**61 - 1, 1),)),
        ((10**9 + 7) * (10**9 + 9), ((10**9 + 7, 1), (10**9 + 9, 1))),
    ],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        sfp(-3)


def test_factorization_invariants_checked():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 2), (5, 1)))
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))


@given(st.integers(min_value=1, max_value=10**12))
@settings(max_examples=200)
def test_factorize_product_and_primality(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_probable_prime(p) for p, _ in f.factors)
    assert [p for p, _ in f.factors] == sorted({p for p, _ in f.factors})


@pytest.mark.parametrize("n, expected", [(1, 1), (48, 3), (49, 1), (50, 2), (98, 2), (9841094, 134)])
def test_sfp_examples(n, expected):
    assert sfp(n) == expected


def test_sfp_matches_brute_force_small():
    assert all(sfp(n) == brute_sfp(n) for n in range(1, 600))


@pytest.mark.parametrize(
    "n, expected",
    [(0, (0, True)), (3375000, (1837, False)), (25401600, (5040, True)), (10**40, (10**20, True))],
)
def test_integer_sqrt(n, expected):
    assert integer_sqrt(n) == expected


def test_integer_sqrt_negative():
    with pytest.raises(ValueError):
        integer_sqrt(-1)


def test_sfp_table_examples():
    assert list(build_sfp_table(2).entries[1:]) == [1, 2]
    t50 = build_sfp_table(50)
    assert (t50[49], t50[50]) == (1, 2)
    assert build_sfp_table(100)[98] == 2


def test_sfp_table_is_read_only():
    t = build_sfp_table(10)
    with pytest.raises(ValueError):
        t.entries[3] = 7


def test_sfp_table_resource_error():
    with pytest.raises(ResourceError):
        SfpTable(2**40)


@pytest.fixture(scope="module")
def table_1e6():
    return build_sfp_table(10**6)


@given(st.integers(min_value=1, max_value=10**6))
@settings(max_examples=300)
def test_table_agrees_with_factorization(table_1e6, n):
    a = table_1e6[n]
    assert a == sfp(n)
    assert n % a == 0 and integer_sqrt(n // a)[1]
    assert is_squarefree(int(a))


@given(st.integers(min_value=1, max_value=10**8), st.integers(min_value=1, max_value=10**4))
def test_square_factor_does_not_change_sfp(n, k):
    assert sfp(n * k * k) == sfp(n)


@given(st.integers(min_value=1, max_value=10**9))
def test_sfp_fixed_point_iff_squarefree(n):
    f = factorize(n)
    squarefree = all(e == 1 for _, e in f.factors)
    assert (sfp(n) == n) == squarefree


def test_squarefree_count_to_150():
    assert len(squarefree_upto(150)) == 92
    assert squarefree_upto(10) == [1, 2, 3, 5, 6, 7, 10]
