import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quantum_betti.combinadic import build_pascal, rank, unrank
from quantum_betti.complex import Simplex


def colex(n, k):
    """All k-subsets of range(n) in colexicographic order, by sorting reversed tuples."""
    return sorted(itertools.combinations(range(n), k), key=lambda c: c[::-1])


def test_pascal_rows():
    assert build_pascal(0).rows == [[1]]
    assert build_pascal(4).row(4) == [1, 4, 6, 4, 1]
    t = build_pascal(20)
    assert t(20, 10) == 184756
    assert all(t(i, j) == math.comb(i, j) for i in range(21) for j in range(i + 1))
    assert t(3, 5) == 0


def test_pascal_exact_beyond_64_bits():
    t = build_pascal(80)
    assert t(80, 40) == math.comb(80, 40) > 2**64


def test_rank_examples():
    t = build_pascal(10)
    assert rank([0, 1], t) == 0
    order = colex(4, 2)
    assert order == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert rank([1, 3], t) == order.index((1, 3)) == 4
    assert rank(Simplex.from_vertices(range(6, 10)), t) == math.comb(10, 4) - 1


def test_unrank_examples():
    t = build_pascal(10)
    assert unrank(0, 4, 2, t).vertices == (0, 1)
    assert unrank(4, 4, 2, t).vertices == (1, 3)
    assert unrank(math.comb(10, 3) - 1, 10, 3, t).vertices == (7, 8, 9)


def test_errors():
    t = build_pascal(5)
    with pytest.raises(ValueError):
        unrank(10, 5, 2, t)
    with pytest.raises(ValueError):
        unrank(-1, 5, 2, t)
    with pytest.raises(ValueError):
        rank([0, 7], t)
    with pytest.raises(ValueError):
        unrank(0, 7, 2, t)
    with pytest.raises(ValueError):
        rank([2, 1], t)


@given(st.data())
def test_roundtrip_large(data):
    n = data.draw(st.integers(1, 200))
    k = data.draw(st.integers(0, n))
    t = build_pascal(n)
    l = data.draw(st.integers(0, math.comb(n, k) - 1))
    s = unrank(l, n, k, t)
    assert s.k == k and s.bits < 1 << n
    assert rank(s, t) == l


@given(st.integers(1, 120), st.data())
def test_rank_order_is_bitmask_order(n, data):
    t = build_pascal(n)
    k = data.draw(st.integers(1, n))
    a = data.draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
    b = data.draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
    sa, sb = Simplex.from_vertices(a), Simplex.from_vertices(b)
    assert (rank(sa, t) < rank(sb, t)) == (sa.bits < sb.bits)
