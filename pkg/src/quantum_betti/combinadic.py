"""Combinatorial number system for weight-k strings.

``rank`` maps a sorted 0-based vertex set x_1 < ... < x_k to
sum_i C(x_i, i), a bijection onto [0, C(n, k)). The induced order is
colexicographic on vertex sets (equivalently, numeric order of the bitmask).
"""

from __future__ import annotations

from bisect import bisect_right
from collections.abc import Iterable

from .complex import Simplex

__all__ = ["PascalTable", "build_pascal", "rank", "unrank"]


class PascalTable:
    """Exact binomial coefficients C(i, j), 0 <= j <= i <= n_max.

    Built by additions only. ``column(j)`` is C(0, j), ..., C(n_max, j) and is
    non-decreasing, which is what the binary search in :func:`unrank` needs.
    """

    def __init__(self, n_max: int):
        if n_max < 0:
            raise ValueError(f"n_max must be nonnegative, got {n_max}")
        self.n_max = n_max
        rows = [[1]]
        for i in range(1, n_max + 1):
            prev = rows[-1]
            rows.append([1] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1])
        self.rows = rows
        self._columns: dict[int, list[int]] = {}

    def __call__(self, a: int, b: int) -> int:
        if b < 0 or a < b:
            return 0
        if a > self.n_max:
            raise ValueError(f"table built to row {self.n_max}, asked for C({a}, {b})")
        return self.rows[a][b]

    def row(self, i: int) -> list[int]:
        return list(self.rows[i])

    def column(self, j: int) -> list[int]:
        col = self._columns.get(j)
        if col is None:
            col = [self(i, j) for i in range(self.n_max + 1)]
            self._columns[j] = col
        return col


def build_pascal(n_max: int) -> PascalTable:
    return PascalTable(n_max)


def _vertices(s: Simplex | Iterable[int]) -> tuple[int, ...]:
    if isinstance(s, Simplex):
        return s.vertices
    vs = tuple(s)
    if any(b <= a for a, b in zip(vs, vs[1:])):
        raise ValueError(f"vertices must be strictly increasing: {vs}")
    return vs


def rank(s: Simplex | Iterable[int], table: PascalTable) -> int:
    vs = _vertices(s)
    if vs and vs[-1] > table.n_max:
        raise ValueError(f"vertex {vs[-1]} exceeds table size {table.n_max}")
    return sum(table(x, i) for i, x in enumerate(vs, start=1))


def unrank(l: int, n: int, k: int, table: PascalTable) -> Simplex:
    """Inverse of :func:`rank` for weight-k subsets of {0, ..., n-1}."""
    if n > table.n_max:
        raise ValueError(f"table built to row {table.n_max}, need {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, {n}], got {k}")
    total = table(n, k)
    if not 0 <= l < total:
        raise ValueError(f"rank {l} outside [0, {total})")
    bits = 0
    hi = n  # exclusive bound on the next vertex
    for j in range(k, 0, -1):
        # largest x < hi with C(x, j) <= l
        x = bisect_right(table.column(j), l, 0, hi) - 1
        bits |= 1 << x
        l -= table(x, j)
        hi = x
    return Simplex(bits)
