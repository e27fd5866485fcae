"""Acceptance criteria. Each test carries a ``criterion`` mark; the terminal
summary prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations

import numpy as np
import pytest
from conftest import cycle4, instance_suite

from quantum_betti.combinadic import build_pascal, rank, unrank
from quantum_betti.complex import DistanceMatrix, Simplex, build_graph
from quantum_betti.data import gen_squares, hollow_square_index, square_vertex_sets
from quantum_betti.homology import chain_complex, exact_rank, spectrum
from quantum_betti.qsim import (
    bbht_cutoff,
    dirac_norm,
    pe_distribution,
    register_sizing,
    sample_outcomes,
    simulate_bbht_prep,
    simulate_cell,
)
from quantum_betti.resources import eq1_total, lgz_costs, state_prep_cost

criterion = pytest.mark.criterion


@lru_cache(maxsize=None)
def complexes():
    return tuple((g, chain_complex(g)) for g in instance_suite())


def nonempty_ks(g, cc):
    return [k for k in range(1, g.n + 1) if len(cc.simplices[k])]


@criterion(1, "oracle triple agreement (all graphs n<=5, 200 random n<=10)")
def test_oracle_triple_agreement():
    checked = 0
    for g, cc in complexes():
        for k in nonempty_ks(g, cc):
            d_k, d_k1 = cc.boundaries[k], cc.boundaries[k + 1]
            size = len(cc.simplices[k])
            from_ranks = size - d_k.rank() - d_k1.rank()
            lap = cc.laplacian(k).matrix
            from_laplacian = size - exact_rank(lap)
            # ker Delta_k = ker d_k  intersect  ker d_{k+1}^T
            stacked = np.vstack([d_k.dense(), d_k1.dense().T])
            from_stack = size - exact_rank(stacked)
            assert from_ranks == from_laplacian == from_stack == cc.betti(k), (g.edges(), k)
            checked += 1
    assert checked > 3000


@criterion(2, "chain-complex law d_k d_{k+1} = 0 exactly")
def test_chain_complex_law():
    for g, cc in complexes():
        for k in range(1, g.n + 1):
            prod = cc.boundaries[k].matrix @ cc.boundaries[k + 1].matrix
            assert prod.count_nonzero() == 0, (g.edges(), k)


@criterion(3, "Dirac identity B^2 = direct sum of Laplacians, rank B = rank B^2 (n<=7)")
def test_dirac_identity():
    count = 0
    for g, cc in complexes():
        if g.n > 7:
            continue
        b = cc.dirac()
        b2 = b.square().toarray()
        expected = np.zeros_like(b2)
        for k, size in b.sizes.items():
            if size:
                expected[b.sector(k), b.sector(k)] = cc.laplacian(k).matrix
        np.testing.assert_array_equal(b2, expected)
        assert exact_rank(b.matrix.toarray()) == exact_rank(b2)
        count += 1
    assert count > 1000


@criterion(4, "headline probability: round(p_zero |S_k|) = beta_k, excess in [0, 1e-2]")
def test_headline_probability():
    worst = 0.0
    for g, cc in complexes():
        norm = dirac_norm(cc)
        for k in nonempty_ks(g, cc):
            size = len(cc.simplices[k])
            if size > 200:
                continue
            beta = cc.betti(k)
            sr = spectrum(cc.laplacian(k))
            t, c = register_sizing(sr, 4, norm)
            model = pe_distribution(sr, t, c)
            excess = model.p_zero - beta / size
            assert round(model.p_zero * size) == beta, (g.edges(), k)
            assert 0 <= excess <= 1e-2, (g.edges(), k, excess)
            assert abs(model.distribution.sum() - 1) <= 1e-12
            worst = max(worst, excess)
    print(f"largest p_zero excess over beta/|S_k|: {worst:.3e}")


@criterion(5, "sampling: 1e5 shots on the 4-cycle within 3 sigma of p_zero")
def test_sampling_consistency():
    cc = chain_complex(cycle4())
    sr = spectrum(cc.laplacian(2))
    np.testing.assert_allclose(sr.eigenvalues, [0, 2, 2, 4], atol=1e-12)
    t, c = register_sizing(sr, 4, dirac_norm(cc))
    model = pe_distribution(sr, t, c)
    shots = 100_000
    hist = sample_outcomes(model, shots, rng_seed=2026)
    sigma = math.sqrt(shots * model.p_zero * (1 - model.p_zero))
    assert abs(hist[0] - shots * model.p_zero) <= 3 * sigma


@criterion(6, "combinadic bijection, colex order and endpoints for all n<=16")
def test_combinadic_bijection():
    table = build_pascal(16)
    for n in range(1, 17):
        for k in range(0, n + 1):
            total = math.comb(n, k)
            # weight-k masks in increasing numeric (= colex) order
            masks = sorted(sum(1 << v for v in c) for c in combinations(range(n), k))
            assert len(masks) == total
            for expected_rank, mask in enumerate(masks):
                s = Simplex(mask)
                assert rank(s, table) == expected_rank
                assert unrank(expected_rank, n, k, table) == s
            assert unrank(0, n, k, table).vertices == tuple(range(k))
            assert unrank(total - 1, n, k, table).vertices == tuple(range(n - k, n))


BBHT_GRID = [
    (universe, marked)
    for universe in (1, 4, 16, 56, 100, 1000, 10_000)
    for marked in sorted({1, 2, 3, max(1, universe // 10), max(1, universe // 4), max(1, universe // 2), max(1, 3 * universe // 4), universe})
    if marked <= universe
]


@criterion(7, "BBHT accounting: mean queries <= 5 sqrt(N/M) over 1000 seeds; M=0 stops at cutoff")
def test_bbht_accounting():
    for universe, marked in BBHT_GRID:
        q = [simulate_bbht_prep(universe, marked, seed).oracle_queries for seed in range(1000)]
        assert np.mean(q) <= 5 * math.sqrt(universe / marked), (universe, marked, np.mean(q))
    for universe in (1, 4, 56, 10_000):
        for seed in range(20):
            r = simulate_bbht_prep(universe, 0, seed)
            assert not r.succeeded and r.oracle_queries == bbht_cutoff(universe)


@criterion(8, "nested squares m=4: beta_2 = 1 on 20 epsilons in [1, 4), hollow square moves")
def test_squares_example():
    m = 4
    d = DistanceMatrix.from_points(gen_squares(m))
    squares = square_vertex_sets(m)
    seen = []
    for eps in np.linspace(1, 4, 20, endpoint=False):
        g = build_graph(d, eps)
        cc = chain_complex(g, 3)
        assert cc.betti(2) == 1, eps
        res = simulate_cell(g, 2, cc=chain_complex(g))
        assert res.beta_quantum == 1, eps
        sr = spectrum(cc.laplacian(2))
        harmonic = sr.kernel_basis()[:, 0]
        support = set()
        for j in np.flatnonzero(np.abs(harmonic) > 1e-8):
            support |= set(cc.simplices[2].members[j].vertices)
        idx = hollow_square_index(eps)
        assert support == squares[idx], (eps, support)
        seen.append(idx)
    assert seen == sorted(seen)
    assert set(seen) == {0, 1, 2, 3}


@criterion(9, "Gershgorin bound holds; float zero count equals exact kernel dimension")
def test_gershgorin_and_zero_count():
    for g, cc in complexes():
        for k in nonempty_ks(g, cc):
            sr = spectrum(cc.laplacian(k))
            assert sr.lambda_max <= sr.gershgorin_bound + 1e-9
            assert sr.float_zero_count() == sr.kernel_dim, (g.edges(), k)


@criterion(10, "cost formulas reproduce hand values to 1e-9; earlier-algorithm betti form at delta=1/beta equals its exact form")
def test_cost_formulas():
    r15 = math.sqrt(1.5)
    assert eq1_total(4, 2, 4, 1, 2.0) == pytest.approx(2 * (8 * r15 + 16), rel=1e-9)
    assert eq1_total(4, 2, 4, 1, 2.0) == pytest.approx(51.59591794226542, rel=1e-9)
    assert state_prep_cost(4, 2, 4) == pytest.approx(41.79795897113271, rel=1e-9)
    sampling, _, _ = lgz_costs(4, 2, 4, 1, 0.5)
    assert sampling == pytest.approx(2508.277496609974, rel=1e-9)
    for n in range(2, 12):
        for k in range(1, n + 1):
            for beta in (1, 2, 7, 30):
                _, betti, exact = lgz_costs(n, k, 1, beta, 1 / beta)
                assert betti == pytest.approx(exact, rel=1e-12)
