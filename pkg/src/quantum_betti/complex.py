"""Vietoris-Rips construction: distance matrix -> epsilon graph -> cliques.

Vertex indices are 0-based. A k-simplex has k vertices (so vertices are
1-simplices and edges are 2-simplices), and a simplex is stored as an
n-bit integer of Hamming weight k.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "InputValidationError",
    "DistanceMatrix",
    "EpsilonGraph",
    "Simplex",
    "SimplexSet",
    "build_graph",
    "is_simplex",
    "enumerate_simplices",
    "clique_complex",
]


class InputValidationError(ValueError):
    """Raised for malformed distance matrices."""


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    d: np.ndarray

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
            raise InputValidationError(f"distance matrix must be square and non-empty, got shape {d.shape}")
        if not np.all(np.isfinite(d)):
            raise InputValidationError("distance matrix has non-finite entries")
        if np.any(d < 0):
            raise InputValidationError("distance matrix has negative entries")
        if not np.array_equal(d, d.T):
            raise InputValidationError("distance matrix is not symmetric")
        if np.any(np.diag(d) != 0):
            raise InputValidationError("distance matrix has a nonzero diagonal")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]]) -> DistanceMatrix:
        """Euclidean distances between the rows of ``points``."""
        x = np.atleast_2d(np.asarray(points, dtype=float))
        diff = x[:, None, :] - x[None, :, :]
        d = np.sqrt((diff**2).sum(axis=-1))
        # exact symmetry regardless of summation order
        d = np.triu(d, 1)
        return cls(d + d.T)


@dataclass(frozen=True, eq=False)
class EpsilonGraph:
    adjacency: np.ndarray
    epsilon: float = 1.0
    # neighbours[i] is a bitmask of the vertices adjacent to i
    neighbours: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        a = np.array(self.adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputValidationError("adjacency must be square")
        if not np.array_equal(a, a.T) or np.any(np.diag(a)):
            raise InputValidationError("adjacency must be symmetric with zero diagonal")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        masks = tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in a)
        object.__setattr__(self, "neighbours", masks)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], epsilon: float = 1.0) -> EpsilonGraph:
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise InputValidationError(f"self loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a, epsilon)


@dataclass(frozen=True, order=True)
class Simplex:
    """A set of vertices encoded as a bitmask.

    Integer order on ``bits`` is colexicographic order on vertex sets, which
    is also combinadic-rank order for a fixed weight.
    """

    bits: int

    @classmethod
    def from_vertices(cls, vertices: Iterable[int]) -> Simplex:
        bits = 0
        for v in vertices:
            if v < 0:
                raise ValueError(f"negative vertex index {v}")
            if bits >> v & 1:
                raise ValueError(f"repeated vertex {v}")
            bits |= 1 << v
        return cls(bits)

    @classmethod
    def from_bitstring(cls, s: str) -> Simplex:
        """Parse a string whose i-th character is the bit of vertex i."""
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {s!r}")
        return cls(int(s[::-1], 2))

    @property
    def k(self) -> int:
        return self.bits.bit_count()

    @property
    def vertices(self) -> tuple[int, ...]:
        out = []
        b, i = self.bits, 0
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return tuple(out)

    def bitstring(self, n: int) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(n))

    def facets(self) -> Iterator[tuple[int, Simplex]]:
        """Yield ``(sign, facet)`` pairs of the boundary, omitting vertices in increasing order."""
        sign = 1
        for v in self.vertices:
            yield sign, Simplex(self.bits & ~(1 << v))
            sign = -sign


@dataclass(frozen=True, eq=False)
class SimplexSet:
    k: int
    members: tuple[Simplex, ...]
    host: EpsilonGraph = field(repr=False)
    index: dict[Simplex, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {s: i for i, s in enumerate(self.members)})

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self.index


def build_graph(d: DistanceMatrix | np.ndarray, epsilon: float) -> EpsilonGraph:
    """Connect distinct vertices whose distance is at most ``epsilon``."""
    if not isinstance(d, DistanceMatrix):
        d = DistanceMatrix(d)
    if not epsilon >= 0:
        raise InputValidationError(f"epsilon must be nonnegative, got {epsilon}")
    a = d.d <= epsilon
    np.fill_diagonal(a, False)
    return EpsilonGraph(a, float(epsilon))


def is_simplex(g: EpsilonGraph, s: Simplex) -> bool:
    if s.k < 1:
        raise ValueError("a simplex needs at least one vertex")
    if s.bits >> g.n:
        return False
    for v in s.vertices:
        rest = s.bits & ~(1 << v)
        if rest & ~g.neighbours[v]:
            return False
    return True


def _cliques(g: EpsilonGraph, k: int) -> list[int]:
    found: list[int] = []

    def extend(clique: int, size: int, candidates: int) -> None:
        if size == k:
            found.append(clique)
            return
        # candidates only hold vertices above the current maximum
        while candidates:
            if (candidates.bit_count()) < k - size:
                return
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            extend(clique | low, size + 1, candidates & g.neighbours[v])

    extend(0, 0, (1 << g.n) - 1)
    found.sort()
    return found


def enumerate_simplices(g: EpsilonGraph, k: int) -> SimplexSet:
    """All k-cliques of ``g`` in combinadic-rank order."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k must be in [1, {g.n}], got {k}")
    return SimplexSet(k, tuple(Simplex(b) for b in _cliques(g, k)), g)


def clique_complex(g: EpsilonGraph, max_k: int | None = None) -> dict[int, SimplexSet]:
    """Simplex sets S_1..S_{max_k}; dimensions above n come back empty."""
    top = g.n if max_k is None else max_k
    out = {}
    for k in range(1, top + 1):
        out[k] = enumerate_simplices(g, k) if k <= g.n else SimplexSet(k, (), g)
    return out
