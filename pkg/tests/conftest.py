from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
import pytest

from quantum_betti.complex import EpsilonGraph


def cycle4() -> EpsilonGraph:
    return EpsilonGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def k3() -> EpsilonGraph:
    return EpsilonGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


def single_edge() -> EpsilonGraph:
    return EpsilonGraph.from_edges(2, [(0, 1)])


def two_edges() -> EpsilonGraph:
    return EpsilonGraph.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture
def c4():
    return cycle4()


@pytest.fixture
def triangle():
    return k3()


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(2 ** len(pairs)):
        yield EpsilonGraph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graphs(count: int, n_max: int = 10, seed: int = 20261019):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(6, n_max + 1))
        p = float(rng.choice([0.3, 0.5, 0.7]))
        a = np.triu(rng.random((n, n)) < p, 1)
        out.append(EpsilonGraph(a | a.T))
    return out


@lru_cache(maxsize=None)
def instance_suite() -> tuple[EpsilonGraph, ...]:
    """Every labelled graph on n <= 5 vertices plus 200 seeded random graphs with n <= 10."""
    graphs = [g for n in range(1, 6) for g in all_graphs(n)]
    graphs += random_graphs(200)
    return tuple(graphs)


# acceptance reporting: one line per criterion in the terminal summary
_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in getattr(report, "criterion_marks", ()):
        number, text = mark
        prev = _criteria.get(number, (text, True))[1]
        _criteria[number] = (text, prev and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion_marks = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
