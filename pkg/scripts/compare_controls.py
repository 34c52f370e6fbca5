#!/usr/bin/env python3
"""Compare the three row-selection controls on one random consistent system.

Usage: python scripts/compare_controls.py [--rows 5] [--cols 8] [--seed 0]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from kaczmarz_control import (  # noqa: E402
    Cyclic,
    IndexSequence,
    LinearSystem,
    MaxResidual,
    WeightedRandom,
    extract_covering_windows,
    min_norm_solution,
    recurrence_report,
    run_kaczmarz,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=5)
    parser.add_argument("--cols", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    a = rng.uniform(-1.0, 1.0, (args.rows, args.cols))
    b = a @ rng.uniform(-1.0, 1.0, args.cols)
    system = LinearSystem(a, b)
    x_ls = min_norm_solution(system)
    print(f"system: {args.rows} x {args.cols}, ||x_ls|| = {np.linalg.norm(x_ls):.4f}")

    for name, strategy in (
        ("cyclic", Cyclic()),
        ("maxres", MaxResidual()),
        ("random", WeightedRandom(seed=args.seed)),
    ):
        trace = run_kaczmarz(
            system, strategy, max_iters=200_000, residual_tol=args.tol, reference=x_ls
        )
        seq = IndexSequence(tuple(int(i) for i in trace.selected_indices), system.m)
        rec = recurrence_report(seq)
        windows = extract_covering_windows(seq)
        dist = np.linalg.norm(trace.final_iterate - x_ls)
        print(
            f"{name:>7}: {trace.stop_reason.value} in {trace.iterations_run:6d} steps, "
            f"|x - x_ls| = {dist:.2e}, histogram = {list(rec.counts)}, "
            f"complete windows = {windows.complete_windows}"
        )


if __name__ == "__main__":
    main()
