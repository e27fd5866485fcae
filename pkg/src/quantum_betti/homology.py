"""Boundary maps, combinatorial Laplacians and the Dirac operator.

Everything structural is kept in exact integer arithmetic. Betti numbers and
kernel dimensions come from fraction-free elimination; floating-point
eigenvalues are diagnostics only, so there is no zero threshold anywhere in
the classification of the kernel.
"""

from __future__ import annotations

import io
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np
import scipy.sparse as sp

from .complex import EpsilonGraph, SimplexSet, clique_complex

__all__ = [
    "BoundaryMatrix",
    "Laplacian",
    "DiracOperator",
    "SpectrumReport",
    "ChainComplex",
    "NumericalError",
    "exact_rank",
    "boundary_matrix",
    "laplacian",
    "dirac",
    "betti_exact",
    "spectrum",
    "chain_complex",
    "write_triplets",
    "read_triplets",
]


class NumericalError(RuntimeError):
    def __init__(self, message: str, dump: str = ""):
        super().__init__(message)
        self.dump = dump


def exact_rank(m) -> int:
    """Rank over the rationals of an integer matrix, by Bareiss elimination.

    Accepts a dense array, a scipy sparse matrix, or nested lists. Entries
    are converted to Python ints so intermediate minors never overflow.
    """
    if sp.issparse(m):
        m = m.toarray()
    rows = [[int(x) for x in r] for r in m]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        top = rows[r]
        p = top[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            a = row[c]
            if a:
                rows[i] = [(p * x - a * y) // prev for x, y in zip(row, top)]
            else:
                rows[i] = [p * x // prev for x in row]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """Matrix of the boundary map from k-simplices to (k-1)-simplices."""

    k: int
    matrix: sp.csc_array
    lower: SimplexSet | None = field(repr=False)
    upper: SimplexSet = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def rank(self) -> int:
        if self.matrix.nnz == 0:
            return 0
        return exact_rank(self.dense())


def boundary_matrix(lower: SimplexSet | None, upper: SimplexSet) -> BoundaryMatrix:
    """Boundary map from ``upper`` (dimension k) to ``lower`` (dimension k-1).

    Pass ``lower=None`` for k = 1, which gives the zero map with no rows.
    """
    k = upper.k
    if lower is None:
        if k != 1:
            raise ValueError("only the vertex boundary may omit the lower simplex set")
        return BoundaryMatrix(1, sp.csc_array((0, len(upper)), dtype=np.int64), None, upper)
    if lower.k != k - 1:
        raise ValueError(f"dimension mismatch: lower k={lower.k}, upper k={k}")
    data, ri, ci = [], [], []
    for j, s in enumerate(upper):
        for sign, f in s.facets():
            i = lower.index.get(f)
            if i is None:
                raise RuntimeError(f"facet {f.vertices} of {s.vertices} missing from S_{k - 1}")
            data.append(sign)
            ri.append(i)
            ci.append(j)
    m = sp.csc_array((np.array(data, dtype=np.int64), (ri, ci)), shape=(len(lower), len(upper)))
    return BoundaryMatrix(k, m, lower, upper)


@dataclass(frozen=True, eq=False)
class Laplacian:
    k: int
    matrix: np.ndarray
    simplices: SimplexSet | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def laplacian(d_k: BoundaryMatrix, d_k1: BoundaryMatrix) -> Laplacian:
    """Delta_k = d_k^T d_k + d_{k+1} d_{k+1}^T as an exact integer matrix."""
    if d_k.cols != d_k1.rows:
        raise ValueError(f"shape mismatch: d_k has {d_k.cols} columns, d_k+1 has {d_k1.rows} rows")
    if d_k1.k != d_k.k + 1:
        raise ValueError(f"boundaries are not consecutive: {d_k.k}, {d_k1.k}")
    a = d_k.matrix
    b = d_k1.matrix
    m = (a.T @ a + b @ b.T).toarray().astype(np.int64)
    m.setflags(write=False)
    return Laplacian(d_k.k, m, d_k.upper)


def betti_exact(d_k: BoundaryMatrix, d_k1: BoundaryMatrix) -> int:
    """beta_k = |S_k| - rank d_k - rank d_{k+1}."""
    if d_k.cols != d_k1.rows:
        raise ValueError(f"shape mismatch: d_k has {d_k.cols} columns, d_k+1 has {d_k1.rows} rows")
    return d_k.cols - d_k.rank() - d_k1.rank()


@dataclass(frozen=True, eq=False)
class DiracOperator:
    """Block tridiagonal assembly of all boundary maps.

    ``offsets[k]`` is the first global row of sector k (the k-simplices);
    block (k-1, k) holds d_k and block (k, k-1) its transpose.
    """

    matrix: sp.csr_array
    offsets: dict[int, int]
    sizes: dict[int, int]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def sector(self, k: int) -> slice:
        return slice(self.offsets[k], self.offsets[k] + self.sizes[k])

    def block(self, i: int, j: int) -> np.ndarray:
        return self.matrix[self.sector(i), :][:, self.sector(j)].toarray()

    def square(self) -> sp.csr_array:
        return (self.matrix @ self.matrix).tocsr()


def dirac(boundaries: Sequence[BoundaryMatrix], n_vertices: int | None = None) -> DiracOperator:
    """Assemble B from d_2, d_3, ... (in order). ``n_vertices`` is needed only when the list is empty."""
    if not boundaries:
        if n_vertices is None:
            raise ValueError("need n_vertices when no boundary maps are given")
        return DiracOperator(sp.csr_array((n_vertices, n_vertices), dtype=np.int64), {1: 0}, {1: n_vertices})
    sizes = {boundaries[0].k - 1: boundaries[0].rows}
    for b in boundaries:
        if b.k - 1 not in sizes or sizes[b.k - 1] != b.rows:
            raise ValueError(f"boundary d_{b.k} has inconsistent shape {b.shape}")
        sizes[b.k] = b.cols
    ks = sorted(sizes)
    offsets, pos = {}, 0
    for k in ks:
        offsets[k] = pos
        pos += sizes[k]
    grid: list[list] = [[None] * len(ks) for _ in ks]
    for i, k in enumerate(ks):
        grid[i][i] = sp.csr_array((sizes[k], sizes[k]), dtype=np.int64)
    for b in boundaries:
        i = ks.index(b.k - 1)
        grid[i][i + 1] = b.matrix
        grid[i + 1][i] = b.matrix.T
    m = sp.csr_array(sp.block_array(grid, format="csr", dtype=np.int64))
    return DiracOperator(m, offsets, sizes)


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Eigen-diagnostics of one Laplacian.

    Zero classification is by ``kernel_dim`` (exact rank), never by a
    threshold: the first ``kernel_dim`` sorted eigenvalues are the zeros.
    ``eigenvectors[:, :kernel_dim]`` spans the harmonic chains.
    """

    k: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    kernel_dim: int
    gershgorin_bound: int

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1]) if self.size else 0.0

    @property
    def lambda_min(self) -> float | None:
        """Smallest eigenvalue classified nonzero, or None if the Laplacian vanishes on the kernel side entirely."""
        if self.kernel_dim >= self.size:
            return None
        return float(self.eigenvalues[self.kernel_dim])

    @property
    def nonzero_eigenvalues(self) -> np.ndarray:
        return self.eigenvalues[self.kernel_dim :]

    def float_zero_count(self, tol: float = 1e-8) -> int:
        scale = max(1.0, self.lambda_max)
        return int(np.sum(np.abs(self.eigenvalues) <= tol * scale))

    def kernel_basis(self) -> np.ndarray:
        return self.eigenvectors[:, : self.kernel_dim]


def spectrum(lap: Laplacian) -> SpectrumReport:
    m = lap.matrix
    if m.shape[0] < 1:
        raise ValueError("spectrum of an empty Laplacian is undefined")
    try:
        w, v = np.linalg.eigh(m.astype(float))
    except np.linalg.LinAlgError as exc:
        buf = io.StringIO()
        write_triplets(m, buf)
        raise NumericalError(f"eigensolver failed on Delta_{lap.k}: {exc}", buf.getvalue()) from exc
    kernel_dim = m.shape[0] - exact_rank(m)
    # PSD: only negative round-off is removed, kernel values stay as computed
    w = np.clip(w, 0.0, None)
    w.setflags(write=False)
    gersh = int(np.abs(m).sum(axis=1).max())
    return SpectrumReport(lap.k, w, v, kernel_dim, gersh)


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Simplex sets and boundary maps of a clique complex.

    ``boundaries[k]`` is d_k for k = 1..top+1, where the last one maps the
    (always empty) S_{top+1} so that every Laplacian up to ``top`` exists.
    """

    graph: EpsilonGraph
    simplices: dict[int, SimplexSet]
    boundaries: dict[int, BoundaryMatrix]

    @property
    def top(self) -> int:
        return max(self.simplices) - 1

    def laplacian(self, k: int) -> Laplacian:
        return laplacian(self.boundaries[k], self.boundaries[k + 1])

    def betti(self, k: int) -> int:
        return betti_exact(self.boundaries[k], self.boundaries[k + 1])

    def dirac(self) -> DiracOperator:
        n = self.graph.n
        bs = [self.boundaries[k] for k in range(2, n + 1)]
        return dirac(bs, n_vertices=n)


def chain_complex(g: EpsilonGraph, top: int | None = None) -> ChainComplex:
    """Clique complex of ``g`` with boundary maps up to d_{top+1} (default top = n)."""
    top = g.n if top is None else top
    sets = clique_complex(g, top + 1)
    bounds = {1: boundary_matrix(None, sets[1])}
    for k in range(2, top + 2):
        bounds[k] = boundary_matrix(sets[k - 1], sets[k])
    return ChainComplex(g, sets, bounds)


def write_triplets(m, out: TextIO) -> None:
    """Write ``rows cols nnz`` then one ``row col value`` line per nonzero."""
    coo = sp.coo_array(m)
    order = np.lexsort((coo.col, coo.row))
    out.write(f"{coo.shape[0]} {coo.shape[1]} {coo.nnz}\n")
    for i in order:
        out.write(f"{coo.row[i]} {coo.col[i]} {int(coo.data[i])}\n")


def read_triplets(src: TextIO) -> sp.csr_array:
    header = src.readline().split()
    if len(header) != 3:
        raise ValueError("triplet header must be 'rows cols nnz'")
    rows, cols, nnz = map(int, header)
    r, c, v = [], [], []
    for lineno, line in enumerate(src, start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'row col value'")
        r.append(int(parts[0]))
        c.append(int(parts[1]))
        v.append(int(parts[2]))
    if len(v) != nnz:
        raise ValueError(f"header promises {nnz} entries, found {len(v)}")
    return sp.csr_array((np.array(v, dtype=np.int64), (r, c)), shape=(rows, cols))
