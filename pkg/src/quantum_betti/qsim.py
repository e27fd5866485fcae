"""Sector-level simulation of the quantum Betti-number algorithm.

Nothing here touches the 2^n-dimensional qubit space. State preparation is
simulated at the level of Grover success probabilities, phase estimation by
the exact t-bit outcome kernel applied to the spectrum of the Laplacian,
and counting by its idealized exact result plus query accounting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complex import EpsilonGraph
from .homology import ChainComplex, SpectrumReport, chain_complex, spectrum
from .resources import CostLedger, build_ledger, simulated_gate_tally

__all__ = [
    "GroverPrepReport",
    "PhaseEstimationModel",
    "CountReport",
    "SimConfig",
    "CellResult",
    "PhaseWrapError",
    "simulate_bbht_prep",
    "bbht_cutoff",
    "register_sizing",
    "fejer",
    "pe_distribution",
    "sample_outcomes",
    "quantum_count_betti",
    "estimate_betti_from_samples",
    "fixed_count_iterations",
    "dirac_norm",
    "simulate_cell",
    "end_to_end_betti",
]

BBHT_GROWTH = 6 / 5
SCALE_HEADROOM = 9 / 8


class PhaseWrapError(ValueError):
    """The scale constant is too small: some phase would wrap past 1/2."""


@dataclass(frozen=True)
class GroverPrepReport:
    universe_size: int
    marked: int
    oracle_queries: int
    succeeded: bool
    approx_count_queries: int
    stages: int


def bbht_cutoff(universe: int) -> int:
    return math.ceil(3 * math.sqrt(universe))


def simulate_bbht_prep(universe: int, marked: int, rng_seed: int | np.random.Generator = 0) -> GroverPrepReport:
    """Run the BBHT schedule for an unknown number of marked items.

    Each stage draws j uniformly from [0, m), spends j Grover iterations plus
    one oracle call to check the measured item, and succeeds with probability
    sin^2((2j+1) theta). After a failure m <- min(ceil(6/5 m), ceil(sqrt N)).
    With nothing marked the run stops once ``bbht_cutoff`` queries are spent.
    """
    if universe < 1 or not 0 <= marked <= universe:
        raise ValueError(f"need universe >= 1 and 0 <= marked <= universe, got {universe}, {marked}")
    rng = np.random.default_rng(rng_seed)
    theta = math.asin(math.sqrt(marked / universe))
    cap = math.ceil(math.sqrt(universe))
    cutoff = bbht_cutoff(universe)
    m = 1
    queries = 0
    stages = 0
    succeeded = False
    while True:
        stages += 1
        j = int(rng.integers(0, m))
        cost = j + 1
        if marked == 0:
            cost = min(cost, cutoff - queries)
            queries += cost
            if queries >= cutoff:
                break
        else:
            queries += cost
            if rng.random() < math.sin((2 * j + 1) * theta) ** 2:
                succeeded = True
                break
        m = min(math.ceil(BBHT_GROWTH * m), cap)
    approx = math.ceil(math.sqrt(universe * marked))
    return GroverPrepReport(universe, marked, queries, succeeded, approx, stages)


def fixed_count_iterations(universe: int, marked: int) -> int:
    """Grover iterations for a known number of marked items: round(pi / (4 theta) - 1/2)."""
    if marked == 0:
        return 0
    theta = math.asin(math.sqrt(marked / universe))
    return max(0, round(math.pi / (4 * theta) - 0.5))


def dirac_norm(cc: ChainComplex) -> float:
    """Largest |eigenvalue| of B, i.e. sqrt of the largest eigenvalue over all Laplacians."""
    top = 0.0
    for k, s in cc.simplices.items():
        if len(s) and k + 1 in cc.boundaries:
            w = np.linalg.eigvalsh(cc.laplacian(k).matrix.astype(float))
            top = max(top, float(w[-1]))
    return math.sqrt(max(top, 0.0))


def register_sizing(report: SpectrumReport, margin_bits: int = 4, b_norm: float | None = None) -> tuple[int, float]:
    """Eigenvalue-register width t and scale c for phase estimation of e^{iB/c}.

    c is the spectral norm of B (``b_norm``; by default the sector's own
    sqrt(lambda_max)) times 9/8, so every phase sqrt(lambda)/(2 pi c) lies
    below 1/2. t is chosen so the smallest nonzero phase is at least
    2^-(t - margin_bits).
    """
    if margin_bits < 0:
        raise ValueError("margin_bits must be nonnegative")
    norm = math.sqrt(report.lambda_max) if b_norm is None else b_norm
    c = SCALE_HEADROOM * norm if norm > 0 else 1.0
    lam_min = report.lambda_min
    if lam_min is None:
        if report.kernel_dim != report.size:
            raise RuntimeError("spectrum has no nonzero eigenvalue but the kernel is not everything")
        return 1, c
    if not lam_min > 0:
        raise RuntimeError(
            f"Delta_{report.k} has exact kernel dimension {report.kernel_dim} but its "
            f"smallest nonzero eigenvalue computed as {lam_min}"
        )
    t = math.ceil(math.log2(2 * math.pi * c / math.sqrt(lam_min))) + margin_bits
    return t, c


def fejer(phase: np.ndarray, y: np.ndarray, t: int) -> np.ndarray:
    """Pr(y | phase) for ideal t-bit phase estimation; broadcasts over both arguments."""
    size = 2**t
    d = np.asarray(phase, dtype=float) - np.asarray(y, dtype=float) / size
    d = (d + 0.5) % 1.0 - 0.5
    small = np.abs(d) < 1e-13
    safe = np.where(small, 0.5, d)
    p = (np.sin(size * np.pi * safe) / (size * np.sin(np.pi * safe))) ** 2
    return np.where(small, 1.0, p)


@dataclass(frozen=True, eq=False)
class PhaseEstimationModel:
    t: int
    c: float
    spectrum: np.ndarray = field(repr=False)
    kernel_dim: int
    p_zero: float
    distribution: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.spectrum)

    @property
    def phases(self) -> np.ndarray:
        """Positive phases of the nonzero eigenvalues (each also appears negated)."""
        return np.sqrt(self.spectrum[self.kernel_dim :]) / (2 * np.pi * self.c)

    @property
    def ideal_p_zero(self) -> float:
        return self.kernel_dim / self.size

    def zero_leakage(self) -> np.ndarray:
        """Outcome-0 probability deposited by each nonzero eigenvector."""
        return fejer(self.phases, 0, self.t)

    def leakage_bound(self) -> float:
        """Worst-case excess of p_zero over the ideal kernel fraction."""
        leak = self.zero_leakage()
        if leak.size == 0:
            return 0.0
        return (self.size - self.kernel_dim) / self.size * float(leak.max())


def pe_distribution(report: SpectrumReport, t: int, c: float) -> PhaseEstimationModel:
    """Exact outcome distribution of t-bit phase estimation of e^{iB/c} on |k><k| (x) rho_k.

    An eigenvector v of Delta_k with eigenvalue lambda > 0 splits evenly
    between the +sqrt(lambda) and -sqrt(lambda) eigenvectors of B: with
    w = B|k,v>, B w = lambda |k,v>, so on span{|k,v>, w} B acts as
    [[0, r], [r, 0]] with r = sqrt(lambda). Kernel vectors put all their
    weight on outcome 0.
    """
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    size = report.size
    if size < 1:
        raise ValueError("empty spectrum")
    lam = report.eigenvalues
    if math.sqrt(report.lambda_max) > c * (1 + 1e-12):
        raise PhaseWrapError(f"c = {c} is below the spectral norm {math.sqrt(report.lambda_max)}")
    nsize = 2**t
    y = np.arange(nsize)
    dist = np.zeros(nsize)
    dist[0] = report.kernel_dim / size
    phases = np.sqrt(report.nonzero_eigenvalues) / (2 * np.pi * c)
    # bound the temporary (phases x outcomes) array
    chunk = max(1, 2**22 // nsize)
    for start in range(0, len(phases), chunk):
        ph = phases[start : start + chunk, None]
        dist += 0.5 / size * (fejer(ph, y, t) + fejer(-ph, y, t)).sum(axis=0)
    dist.setflags(write=False)
    return PhaseEstimationModel(t, c, np.array(lam), report.kernel_dim, float(dist[0]), dist)


def sample_outcomes(model: PhaseEstimationModel, shots: int, rng_seed: int | np.random.Generator = 0) -> np.ndarray:
    """Histogram (length 2^t) of ``shots`` measurements of the eigenvalue register."""
    if shots < 1:
        raise ValueError(f"shots must be positive, got {shots}")
    rng = np.random.default_rng(rng_seed)
    p = np.asarray(model.distribution, dtype=float)
    return rng.multinomial(shots, p / p.sum())


@dataclass(frozen=True)
class CountReport:
    beta_estimate: int
    grover_rounds: int
    mode: str


def quantum_count_betti(p_zero_subspace_dim: int, set_size: int) -> CountReport:
    """Idealized exact quantum count of the zero-eigenvalue subspace.

    Rounds are booked as ceil(sqrt(set_size * max(beta, 1))); every round
    costs one state preparation and one phase estimation.
    """
    if not 0 <= p_zero_subspace_dim <= set_size:
        raise ValueError(f"need 0 <= dim <= set_size, got {p_zero_subspace_dim}, {set_size}")
    rounds = math.ceil(math.sqrt(set_size * max(p_zero_subspace_dim, 1)))
    return CountReport(p_zero_subspace_dim, rounds, "exact-count")


def estimate_betti_from_samples(histogram: np.ndarray, set_size: int) -> CountReport:
    """Read beta off the observed zero-outcome frequency (no amplitude amplification, so zero Grover rounds)."""
    shots = int(np.sum(histogram))
    if shots < 1:
        raise ValueError("empty histogram")
    est = round(histogram[0] / shots * set_size)
    return CountReport(int(min(max(est, 0), set_size)), 0, "sampled")


@dataclass(frozen=True)
class SimConfig:
    margin_bits: int = 4
    shots: int = 0
    seed: int = 0
    delta: float | None = None
    # size c from the norm of all of B rather than the k-th sector only
    global_scale: bool = True


@dataclass(eq=False)
class CellResult:
    n: int
    k: int
    epsilon: float
    s_k: int
    beta_exact: int
    beta_quantum: int | None
    ledger: CostLedger
    spectrum: SpectrumReport | None = field(default=None, repr=False)
    model: PhaseEstimationModel | None = field(default=None, repr=False)
    prep: GroverPrepReport | None = None
    count: CountReport | None = None
    sampled: CountReport | None = None
    histogram: np.ndarray | None = field(default=None, repr=False)
    flags: list[str] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.beta_quantum is None or self.beta_quantum == self.beta_exact

    def to_dict(self) -> dict:
        sr, model = self.spectrum, self.model
        out = {
            "n": self.n,
            "k": self.k,
            "epsilon": self.epsilon,
            "S_k": self.s_k,
            "beta_exact": self.beta_exact,
            "beta_quantum": self.beta_quantum,
            "p_zero": model.p_zero if model else None,
            "t": model.t if model else None,
            "c": model.c if model else None,
            "lambda_min": sr.lambda_min if sr else None,
            "lambda_max": sr.lambda_max if sr else None,
            "gershgorin": sr.gershgorin_bound if sr else None,
            "queries": dict(self.ledger.queries),
            "eq1_prediction": self.ledger.to_dict()["entries"].get("eq1_total"),
            "ledger": self.ledger.to_dict(),
            "flags": list(self.flags),
        }
        if self.sampled is not None:
            out["beta_sampled"] = self.sampled.beta_estimate
            out["zero_frequency"] = int(self.histogram[0]) / int(self.histogram.sum())
        return out


def simulate_cell(
    g: EpsilonGraph,
    k: int,
    config: SimConfig | None = None,
    cc: ChainComplex | None = None,
    simulate: bool = True,
) -> CellResult:
    """Oracle and simulated beta_k for one graph, plus the cost ledger.

    With ``simulate=False`` only the exact oracle and the formula ledger are
    produced.
    """
    config = config or SimConfig()
    n = g.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if cc is None:
        cc = chain_complex(g, None if config.global_scale else k)
    s_k = len(cc.simplices[k])
    beta_exact = cc.betti(k)
    if s_k == 0:
        ledger = build_ledger(n, k, 0, 0, None, config.delta)
        return CellResult(n, k, g.epsilon, 0, 0, 0 if simulate else None, ledger, flags=["empty_complex"])

    sr = spectrum(cc.laplacian(k))
    if not simulate:
        ledger = build_ledger(n, k, s_k, beta_exact, sr.lambda_min, config.delta)
        return CellResult(n, k, g.epsilon, s_k, beta_exact, None, ledger, spectrum=sr)

    prep_seed, sample_seed = np.random.SeedSequence(config.seed).spawn(2)
    b_norm = dirac_norm(cc) if config.global_scale else None
    t, c = register_sizing(sr, config.margin_bits, b_norm)
    model = pe_distribution(sr, t, c)
    count = quantum_count_betti(round(model.p_zero * s_k), s_k)
    prep = simulate_bbht_prep(math.comb(n, k), s_k, np.random.default_rng(prep_seed))

    ledger = build_ledger(n, k, s_k, count.beta_estimate, sr.lambda_min, config.delta)
    fixed = fixed_count_iterations(prep.universe_size, s_k)
    ledger.queries = {
        "prep": prep.oracle_queries,
        "count": count.grover_rounds,
        "approx_count": prep.approx_count_queries,
        "fixed_prep_per_round": fixed,
    }
    ledger.simulated_gates = simulated_gate_tally(
        n, k, prep.oracle_queries, prep.approx_count_queries, count.grover_rounds, fixed, t
    )

    res = CellResult(n, k, g.epsilon, s_k, beta_exact, count.beta_estimate, ledger, sr, model, prep, count)
    if config.shots > 0:
        res.histogram = sample_outcomes(model, config.shots, np.random.default_rng(sample_seed))
        res.sampled = estimate_betti_from_samples(res.histogram, s_k)
    if not res.agrees:
        res.flags.append("oracle_mismatch")
    return res


def end_to_end_betti(g: EpsilonGraph, k: int, config: SimConfig | None = None) -> tuple[int, CostLedger]:
    res = simulate_cell(g, k, config)
    return res.beta_quantum, res.ledger
