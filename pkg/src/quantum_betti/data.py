"""Input parsing and the nested-squares point generator."""

from __future__ import annotations

import math
from pathlib import Path
from typing import TextIO

import numpy as np

from .complex import DistanceMatrix, InputValidationError

__all__ = [
    "ParseError",
    "FORMATS",
    "parse_inputs",
    "parse_text",
    "gen_squares",
    "write_points",
    "square_vertex_sets",
    "hollow_square_index",
]

FORMATS = ("distance-matrix", "points", "edge-list")


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _floats(tokens: list[str], lineno: int) -> list[float]:
    try:
        return [float(x) for x in tokens]
    except ValueError:
        raise ParseError(f"non-numeric token in {' '.join(tokens)!r}", lineno) from None


def _header(lines, what: str) -> int:
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"empty {what} file") from None
    if len(tokens) != 1 or not tokens[0].isdigit() or int(tokens[0]) < 1:
        raise ParseError("first line must be the vertex count n >= 1", lineno)
    return int(tokens[0])


def parse_text(text: str, fmt: str) -> DistanceMatrix:
    """Parse file contents into a distance matrix.

    ``distance-matrix``: first line n, then n rows of n numbers.
    ``points``: one point per line; Euclidean distances.
    ``edge-list``: first line n, then one ``u v`` pair per line (0-based);
    listed pairs get distance 1 and all others 2, so epsilon = 1 recovers
    the graph.
    """
    lines = _lines(text)
    if fmt == "distance-matrix":
        n = _header(lines, fmt)
        rows = []
        last = 1
        for lineno, tokens in lines:
            last = lineno
            if len(rows) == n:
                raise ParseError(f"more than {n} matrix rows", lineno)
            if len(tokens) != n:
                raise ParseError(f"expected {n} entries, got {len(tokens)}", lineno)
            rows.append(_floats(tokens, lineno))
        if len(rows) != n:
            raise ParseError(f"expected {n} matrix rows, got {len(rows)}", last)
        d = np.array(rows)
    elif fmt == "points":
        pts = []
        dim = None
        for lineno, tokens in lines:
            if dim is None:
                dim = len(tokens)
            elif len(tokens) != dim:
                raise ParseError(f"expected {dim} coordinates, got {len(tokens)}", lineno)
            pts.append(_floats(tokens, lineno))
        if not pts:
            raise ParseError("no points")
        return DistanceMatrix.from_points(pts)
    elif fmt == "edge-list":
        n = _header(lines, fmt)
        d = np.full((n, n), 2.0)
        np.fill_diagonal(d, 0.0)
        for lineno, tokens in lines:
            if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
                raise ParseError("expected a pair of vertex indices", lineno)
            u, v = int(tokens[0]), int(tokens[1])
            if u >= n or v >= n:
                raise ParseError(f"vertex index out of range for n = {n}", lineno)
            if u == v:
                raise ParseError("self loop", lineno)
            d[u, v] = d[v, u] = 1.0
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    try:
        return DistanceMatrix(d)
    except InputValidationError as exc:
        raise ParseError(str(exc)) from exc


def parse_inputs(path: str | Path, fmt: str) -> DistanceMatrix:
    return parse_text(Path(path).read_text(), fmt)


def gen_squares(m: int, separation_factor: float = 10.0) -> np.ndarray:
    """Corners of m+1 far-apart squares, square i having edge 2^(i/2).

    Rows 4i..4i+3 are square i; its lower-left corner sits at
    (i * separation_factor * 2^(m/2), 0). Square 0 is at the origin, so its
    edges are exactly 1.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if separation_factor < 10:
        raise ValueError(f"separation_factor must be at least 10, got {separation_factor}")
    spacing = separation_factor * 2 ** (m / 2)
    pts = []
    for i in range(m + 1):
        x = i * spacing
        e = 2 ** (i / 2)
        pts += [(x, 0.0), (x + e, 0.0), (x + e, e), (x, e)]
    return np.array(pts)


def square_vertex_sets(m: int) -> list[frozenset[int]]:
    return [frozenset(range(4 * i, 4 * i + 4)) for i in range(m + 1)]


def hollow_square_index(epsilon: float) -> int:
    """Index i with 2^(i/2) <= epsilon < 2^((i+1)/2): the square that is a bare 4-cycle."""
    return math.floor(2 * math.log2(epsilon))


def write_points(points: np.ndarray, out: TextIO) -> None:
    for p in points:
        out.write(" ".join(repr(float(x)) for x in p) + "\n")
