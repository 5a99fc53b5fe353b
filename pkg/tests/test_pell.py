import math

import pytest

from almostsquares.arith import is_square, squarefree_upto
from almostsquares.pell import (
    NormRepresentation,
    PellCache,
    cf_expand,
    degenerate_norm,
    eq1_solvable,
    eq2_solvable,
    eq3_solvable,
    negative_pell,
    norm_represents,
    pell_fundamental,
    set_pell_cache,
)

from oracles import brute_pell, direct_search

NONSQUARE = [d for d in range(2, 201) if not is_square(d)]


def range_search(d, n):
    """Representative-range search: 0 <= x <= sqrt((t+1) n / 2)."""
    t = pell_fundamental(d).t
    for x in range(math.isqrt((t + 1) * n // 2) + 1):
        r = x * x - n
        if r >= 0 and r % d == 0 and is_square(r // d):
            return True
    return False


@pytest.mark.parametrize(
    "d, a0, period",
    [(2, 1, (2,)), (3, 1, (1, 2)), (13, 3, (1, 1, 1, 1, 6)), (7, 2, (1, 1, 1, 4))],
)
def test_cf_expand(d, a0, period):
    cf = cf_expand(d)
    assert (cf.a0, cf.period) == (a0, period)


@pytest.mark.parametrize("d", [0, 1, 4, 144])
def test_cf_expand_rejects(d):
    with pytest.raises(ValueError):
        cf_expand(d)


@pytest.mark.parametrize("d", NONSQUARE)
def test_cf_structure_and_convergent_bound(d):
    cf = cf_expand(d)
    assert cf.a0 == math.isqrt(d)
    assert cf.period[-1] == 2 * cf.a0
    # minimal period: no proper divisor length repeats
    L = len(cf.period)
    assert not any(L % k == 0 and cf.period == cf.period[:k] * (L // k) for k in range(1, L))
    for p, q in cf.convergents(2 * L):
        assert abs(p * p - d * q * q) < 2 * math.sqrt(d) + 1


@pytest.mark.parametrize("d, expected", [(13, (649, 180)), (2, (3, 2)), (3, (2, 1)), (61, (1766319049, 226153980))])
def test_pell_fundamental_examples(d, expected):
    f = pell_fundamental(d)
    assert (f.t, f.u) == expected


def test_pell_fundamental_against_brute_force():
    for d in NONSQUARE:
        f = pell_fundamental(d)
        assert f.t**2 - d * f.u**2 == 1
        found = brute_pell(d)
        if found is None:
            assert f.u > 10**4, d
        else:
            assert (f.t, f.u) == found, d


def test_negative_pell():
    assert negative_pell(2) == (1, 1)
    assert negative_pell(13) == (18, 5)
    assert negative_pell(3) is None


@pytest.mark.parametrize(
    "d, n, witness",
    [(13, 3, (4, 1)), (2, 1, (1, 0)), (3, 5, None)],
)
def test_norm_represents_examples(d, n, witness):
    assert norm_represents(d, n).witness == witness


def test_norm_represents_rejects_square_d():
    with pytest.raises(ValueError):
        norm_represents(4, 5)


def test_norm_witness_checked():
    with pytest.raises(ArithmeticError):
        NormRepresentation(2, 1, (2, 1))


@pytest.mark.parametrize("d", [d for d in range(2, 51) if not is_square(d)])
def test_norm_represents_against_range_search(d):
    t = pell_fundamental(d).t
    for n in range(1, 51):
        rep = norm_represents(d, n)
        assert rep.solvable == range_search(d, n), (d, n)
        if rep.solvable:
            x, y = rep.witness
            assert x * x - d * y * y == n
            assert x * x <= (t + 1) * n // 2


def test_norm_against_small_box_search():
    # every solution found in |x|, |y| <= 300 must be detected
    for d in range(2, 51):
        if is_square(d):
            continue
        hits = {x * x - d * y * y for x in range(301) for y in range(301)}
        for n in range(1, 51):
            if n in hits:
                assert norm_represents(d, n).solvable, (d, n)


@pytest.mark.parametrize(
    "d, n, witness",
    [(1, 1, (1, 0)), (4, 5, (3, 1)), (4, 2, None), (0, 9, (3, 0))],
)
def test_degenerate_norm(d, n, witness):
    assert degenerate_norm(d, n).witness == witness


@pytest.mark.parametrize(
    "fn, args, expected",
    [
        (eq1_solvable, (3, 1), True),
        (eq1_solvable, (1, 1), True),
        (eq1_solvable, (2, 3), True),  # 3*1 - 2*1 = 1
        (eq1_solvable, (3, 2), False),  # 2y^2 = 1 (mod 3) has no root
        (eq2_solvable, (1, 2), True),
        (eq2_solvable, (1, 1), True),
        (eq2_solvable, (61, 5), True),
        (eq3_solvable, (3, 2), True),
        (eq3_solvable, (1, 1), False),
        (eq3_solvable, (122, 7), True),
        (eq3_solvable, (2, 10), True),  # 10*1 - 2*4 = 2
        (eq3_solvable, (6, 10), False),  # halves to 5z^2 - 3x^2 = 1, impossible mod 3
    ],
)
def test_eq_examples(fn, args, expected):
    assert fn(*args) is expected


def test_eq_predicates_against_direct_search():
    sf = squarefree_upto(30)
    for a in sf:
        for b in sf:
            assert eq1_solvable(a, b) == direct_search(b, a, 1), (a, b)
            assert eq2_solvable(a, b) == direct_search(b, a, 1), (a, b)
            assert eq3_solvable(a, b) == direct_search(b, a, 2), (a, b)


def test_pell_cache_roundtrip(tmp_path):
    path = tmp_path / "pell.txt"
    cache = PellCache(path)
    previous = set_pell_cache(cache)
    try:
        for d in (13, 2, 61):
            pell_fundamental(d)
    finally:
        set_pell_cache(previous)
    cache.save()
    lines = path.read_text().splitlines()
    assert lines == ["2 3 2", "13 649 180", "61 1766319049 226153980"]
    reloaded = PellCache(path)
    assert reloaded.get(61) == (1766319049, 226153980)
    assert len(reloaded) == 3


def test_pell_cache_rejects_bad_record(tmp_path):
    path = tmp_path / "pell.txt"
    path.write_text("13 650 180\n")
    with pytest.raises(ValueError):
        PellCache(path)


def test_pell_cache_hit_is_used(tmp_path):
    path = tmp_path / "pell.txt"
    path.write_text("7 8 3\n")
    previous = set_pell_cache(PellCache(path))
    try:
        assert (pell_fundamental(7).t, pell_fundamental(7).u) == (8, 3)
    finally:
        set_pell_cache(previous)
