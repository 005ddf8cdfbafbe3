from fractions import Fraction

import pytest

from dtfour.characters import (
    ZERO,
    Character,
    NotSelfDual,
    Weight,
    dump,
    euler,
    euler_factors,
    q_char,
    reference_root,
    split_flips,
    square_root,
    t,
    tvir_4d,
    vertex_3d,
)
from dtfour.exact import ParamContext, RatFn, ZeroWeightError
from dtfour.partitions import enumerate_plane, enumerate_solid


def test_weight_normal_form():
    w = t(1, 0, 2, 3)
    assert w.cy_normal() == t(-2, -3, -1, 0)
    assert (w + (-w)).is_zero()
    assert t(0, 0, 0, 1).cy_normal() == t(-1, -1, -1)
    assert t(1).is_positive() and not t(-1).is_positive()
    assert t(cm=1).is_positive()


def test_character_algebra():
    a = Character([t(1), t(0, 1)])
    assert a.rank == 2
    assert (a - a) == Character()
    assert (a * a).rank == 4
    assert a.bar().bar() == a
    assert a.shift(t(1))[t(2)] == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_tvir_rank_and_duality(n):
    for pi in enumerate_solid(n):
        T = tvir_4d(pi)
        assert T.rank == 2 * n
        assert T.bar().cy_normal() == T
        R = reference_root(pi)
        assert R + R.bar().cy_normal() == T
        v = square_root(T)
        assert v.rank == n
        assert all(w.is_positive() for w, _ in v.items())
        assert v + v.bar().cy_normal() == T


def test_single_box_tvir():
    pi = next(iter(enumerate_solid(1)))
    T = tvir_4d(pi)
    # sum t_i - sum t_i t_j + sum t_i t_j t_k, rank 4 - 6 + 4
    assert T[t(1)] == 1 and T[t(1, 1)] == -1 and T[t(1, 1, 1)] == 1
    assert len(T) == 14
    assert "s1" in dump(T)


def test_split_flips_counts_negative_side():
    pi = next(iter(enumerate_solid(1)))
    R = reference_root(pi)
    v = square_root(tvir_4d(pi))
    assert split_flips(v) == 0
    assert split_flips(R) == sum(c for w, c in R.items() if not w.is_positive())


def test_not_self_dual():
    with pytest.raises(NotSelfDual):
        square_root(Character([t(1)]))
    with pytest.raises(NotSelfDual):
        square_root(Character([ZERO]))


def test_euler_of_3d_vertex_single_box():
    ctx = ParamContext("2", "3", "1")
    lam = next(iter(enumerate_plane(1)))
    e = euler(-vertex_3d(lam), ctx)
    s1 = RatFn.s1()
    # (s1+s2)(s1+s3)(s2+s3)/(s1 s2 s3) by hand at (s2, s3) = (2, 3)
    assert e == 5 * (s1 + 2) * (s1 + 3) / (6 * s1)


def test_euler_numeric_matches_symbolic():
    ctx = ParamContext("13/47", "29/61", "31/53")
    x = Fraction(17, 97)
    for pi in enumerate_solid(3):
        v = square_root(tvir_4d(pi))
        assert euler(v, ctx)(x) == euler(v, ctx.with_s1(x))


def test_zero_weight():
    ctx = ParamContext("2", "3", "1")
    assert euler_factors(Character([Weight()]), ctx) == (0, {})
    with pytest.raises(ZeroWeightError):
        euler(-Character([Weight()]), ctx)
    # q_char of a box contains the trivial weight
    pi = next(iter(enumerate_solid(1)))
    assert q_char(pi)[ZERO] == 1
