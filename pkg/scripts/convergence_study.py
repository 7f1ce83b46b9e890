#!/usr/bin/env python3
"""Grid-refinement study of the bound-state solver.

Solves the shifted Morse and sech wells on successively finer grids and
tabulates eigenvalue errors against the closed-form levels n(2a - n) and
n(2 mu - n).  The error should shrink ~4x per halving of h (second-order
finite differences).

    python scripts/convergence_study.py --out convergence.csv
"""

import argparse
import time

import numpy as np

from susyspectra.analysis import solve_morse, solve_pt
from susyspectra.grids import Grid
from susyspectra.potentials import MorseParams, PTParams


def exact_levels(strength: float) -> np.ndarray:
    n = np.arange(int(np.ceil(strength - 1e-9)))
    return n * (2 * strength - n)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="convergence.csv")
    ap.add_argument("--lambda", dest="lam", type=float, default=4.5)
    ap.add_argument("--mu", type=float, default=4.0)
    args = ap.parse_args()

    rows = ["family,n_nodes,h,max_abs_error,seconds"]
    for family, strength in (("morse", args.lam), ("pt", args.mu)):
        exact = exact_levels(strength - 0.5 if family == "morse" else args.mu)
        for n in (501, 1001, 2001, 4001, 8001):
            if family == "morse":
                grid = Grid(-2.0, 25.0, n)
                t0 = time.perf_counter()
                spec = solve_morse(MorseParams(strength, 1.0), "shifted", grid)
            else:
                grid = Grid(-15.0, 15.0, n)
                t0 = time.perf_counter()
                spec = solve_pt(PTParams(strength, 1.0), "shifted", grid)
            dt = time.perf_counter() - t0
            err = float(np.max(np.abs(spec.eigenvalues - exact)))
            rows.append(f"{family},{n},{grid.spacing:.6g},{err:.6e},{dt:.2f}")
            print(rows[-1])
    with open(args.out, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
