"""Command line front end.

    quantum-betti run --input pts.txt --format points --eps-grid 0.5:2:16 --k 1,2
    quantum-betti gen-squares --m 4 --out squares.txt
    quantum-betti rank 0101
    quantum-betti unrank 4 --n 4 --k 2

Exit status of ``run``: 0 on success, 1 if any simulated Betti number
disagrees with the exact one, 2 on bad input or configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import combinadic
from .complex import DistanceMatrix, Simplex, build_graph
from .data import FORMATS, ParseError, gen_squares, parse_inputs, write_points
from .homology import chain_complex, write_triplets
from .qsim import SimConfig, simulate_cell

log = logging.getLogger(__name__)

MODES = ("oracle-only", "full-sim")
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    input: Path
    format: str
    epsilons: tuple[float, ...]
    ks: tuple[int, ...]
    mode: str = "full-sim"
    margin_bits: int = 4
    shots: int = 0
    seed: int = 0
    out: Path | None = None
    csv: Path | None = None
    dump_matrices: Path | None = None
    jobs: int = 1

    def validate(self, n: int) -> None:
        if not self.epsilons:
            raise ConfigError("empty epsilon grid")
        if any(not e >= 0 for e in self.epsilons):
            raise ConfigError("epsilon values must be nonnegative")
        if not self.ks:
            raise ConfigError("no k values")
        bad = [k for k in self.ks if not 1 <= k <= n]
        if bad:
            raise ConfigError(f"k values {bad} outside [1, {n}]")
        if self.shots < 0:
            raise ConfigError("shots must be nonnegative")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")


def parse_grid(text: str) -> tuple[float, ...]:
    """``min:max:steps`` -> steps evenly spaced values, both ends included."""
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise ConfigError(f"bad grid {text!r}, expected min:max:steps") from None
    if steps < 1 or hi < lo:
        raise ConfigError(f"bad grid {text!r}")
    return tuple(float(x) for x in np.linspace(lo, hi, steps))


def parse_ks(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise ConfigError(f"bad k list {text!r}") from None


def _epsilon_cells(d: DistanceMatrix, eps: float, config: RunConfig) -> list[dict]:
    g = build_graph(d, eps)
    top = max(config.ks) if config.mode == "oracle-only" else None
    cc = chain_complex(g, top)
    sim = SimConfig(margin_bits=config.margin_bits, shots=config.shots, seed=config.seed)
    cells = []
    for k in config.ks:
        res = simulate_cell(g, k, sim, cc=cc, simulate=config.mode == "full-sim")
        cells.append(res.to_dict())
        if config.dump_matrices is not None:
            _dump(cc, k, eps, config.dump_matrices)
    return cells


def _dump(cc, k: int, eps: float, where: Path) -> None:
    where.mkdir(parents=True, exist_ok=True)
    stem = f"eps{eps:.6g}_k{k}"
    for name, m in (
        (f"boundary{k}", cc.boundaries[k].matrix),
        (f"boundary{k + 1}", cc.boundaries[k + 1].matrix),
        ("laplacian", cc.laplacian(k).matrix),
    ):
        with open(where / f"{stem}_{name}.txt", "w") as fh:
            write_triplets(m, fh)


def run_pipeline(config: RunConfig) -> tuple[dict, int]:
    """Evaluate every (epsilon, k) cell; return the report and the exit status."""
    d = parse_inputs(config.input, config.format)
    config.validate(d.n)
    epsilons = sorted(set(config.epsilons))
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            per_eps = list(pool.map(_epsilon_cells, [d] * len(epsilons), epsilons, [config] * len(epsilons)))
    else:
        per_eps = [_epsilon_cells(d, e, config) for e in epsilons]
    cells = [c for group in per_eps for c in group]
    mismatches = [c for c in cells if c["beta_quantum"] is not None and c["beta_quantum"] != c["beta_exact"]]
    for c in mismatches:
        log.error("eps=%g k=%d: simulated beta %s != exact %s", c["epsilon"], c["k"], c["beta_quantum"], c["beta_exact"])
    report = {
        "input": str(config.input),
        "format": config.format,
        "n": d.n,
        "mode": config.mode,
        "margin_bits": config.margin_bits,
        "shots": config.shots,
        "seed": config.seed,
        "convention": "a k-simplex has k vertices; beta_k here is the standard beta_(k-1)",
        "cells": cells,
    }
    return report, EXIT_MISMATCH if mismatches else EXIT_OK


def write_csv(report: dict, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["epsilon", "k", "S_k", "beta_oracle", "beta_sim", "p_zero"])
        for c in report["cells"]:
            w.writerow([c["epsilon"], c["k"], c["S_k"], c["beta_exact"], c["beta_quantum"], c["p_zero"]])


def _cmd_run(args) -> int:
    if args.eps_grid and args.eps:
        raise ConfigError("give either --eps or --eps-grid, not both")
    if args.eps_grid:
        eps = parse_grid(args.eps_grid)
    elif args.eps:
        eps = tuple(args.eps)
    elif args.format == "edge-list":
        eps = (1.0,)
    else:
        eps = ()
    config = RunConfig(
        input=Path(args.input),
        format=args.format,
        epsilons=eps,
        ks=parse_ks(args.k),
        mode=args.mode,
        margin_bits=args.margin_bits,
        shots=args.shots,
        seed=args.seed,
        out=Path(args.out) if args.out else None,
        csv=Path(args.csv) if args.csv else None,
        dump_matrices=Path(args.dump_matrices) if args.dump_matrices else None,
        jobs=args.jobs,
    )
    report, status = run_pipeline(config)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.write_text(text)
    if config.csv is not None:
        write_csv(report, config.csv)
    return status


def _cmd_gen_squares(args) -> int:
    pts = gen_squares(args.m, args.separation)
    if args.out:
        with open(args.out, "w") as fh:
            write_points(pts, fh)
    else:
        write_points(pts, sys.stdout)
    return EXIT_OK


def _cmd_rank(args) -> int:
    s = Simplex.from_bitstring(args.bits)
    table = combinadic.build_pascal(len(args.bits))
    print(combinadic.rank(s, table))
    return EXIT_OK


def _cmd_unrank(args) -> int:
    table = combinadic.build_pascal(args.n)
    print(combinadic.unrank(args.rank, args.n, args.k, table).bitstring(args.n))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quantum-betti", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="sweep epsilon and k, compare simulated and exact Betti numbers")
    r.add_argument("--input", required=True)
    r.add_argument("--format", choices=FORMATS, default="points")
    r.add_argument("--eps", type=float, nargs="+")
    r.add_argument("--eps-grid", metavar="MIN:MAX:STEPS")
    r.add_argument("--k", default="1", help="comma separated simplex sizes (vertex counts)")
    r.add_argument("--mode", choices=MODES, default="full-sim")
    r.add_argument("--margin-bits", type=int, default=4)
    r.add_argument("--shots", type=int, default=0)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.add_argument("--csv")
    r.add_argument("--dump-matrices", metavar="DIR")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=_cmd_run)

    s = sub.add_parser("gen-squares", help="write corners of m+1 squares with edges 2^(i/2)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--separation", type=float, default=10.0)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_gen_squares)

    rk = sub.add_parser("rank", help="combinadic rank of a bitstring (character i is vertex i)")
    rk.add_argument("bits")
    rk.set_defaults(func=_cmd_rank)

    ur = sub.add_parser("unrank", help="bitstring with the given combinadic rank")
    ur.add_argument("rank", type=int)
    ur.add_argument("--n", type=int, required=True)
    ur.add_argument("--k", type=int, required=True)
    ur.set_defaults(func=_cmd_unrank)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
