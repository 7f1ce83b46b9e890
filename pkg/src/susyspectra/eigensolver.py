"""Bound-state solver for H = -d^2/drho^2 + V(rho) on a truncated line.

Standard three-point finite differences with Dirichlet walls at the grid
edges; the symmetric tridiagonal eigenproblem goes to the Sturm-bisection
solver in `numerics`.  States are kept only if they sit below the continuum
threshold and actually decay at the walls, which filters the box artifacts a
finite domain produces near the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grids import Grid, SampledFunction
from .numerics import TridiagonalMatrix, count_eigenvalues_below, tridiag_eigen
from .potentials import MorseParams, PTParams, morse_rho_min

__all__ = [
    "Grid",
    "Spectrum",
    "GridTooSmallError",
    "discretize",
    "solve_bound_states",
    "default_morse_grid",
    "default_pt_grid",
    "DEFAULT_GRID_N",
]

DEFAULT_GRID_N = 4001
_TOL_EDGE = 1e-3
_DECAY_TOL = 1e-6


class GridTooSmallError(RuntimeError):
    """A bound state failed the boundary-decay check; widen the domain."""


@dataclass
class Spectrum:
    """Bound eigenvalues (ascending) with trapezoid-normalized states."""

    eigenvalues: np.ndarray
    eigenfunctions: list[SampledFunction] = field(default_factory=list)
    continuum_threshold: float = np.inf
    bound_count: int = 0

    def __post_init__(self):
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=float)
        if self.eigenvalues.size > 1 and np.any(np.diff(self.eigenvalues) <= 0):
            raise ValueError("eigenvalues must be strictly increasing")
        if np.any(self.eigenvalues >= self.continuum_threshold):
            raise ValueError("bound eigenvalues must sit below the threshold")
        self.bound_count = int(self.eigenvalues.size)

    def __len__(self) -> int:
        return self.bound_count


def discretize(potential, grid: Grid) -> TridiagonalMatrix:
    """Three-point discretization of -d^2 + V on the interior nodes.

    diag_i = 2/h^2 + V(rho_i), offdiag = -1/h^2; the missing boundary
    columns implement Dirichlet conditions.
    """
    x = grid.interior()
    v = np.asarray(potential(x), dtype=float)
    if v.shape != x.shape:
        v = np.array([potential(xi) for xi in x], dtype=float)
    if not np.all(np.isfinite(v)):
        bad = x[~np.isfinite(v)][0]
        raise ValueError(f"potential is not finite at node rho={bad:.6g}")
    h = grid.spacing
    diag = 2.0 / h**2 + v
    off = np.full(x.size - 1, -1.0 / h**2)
    return TridiagonalMatrix(diag, off)


def solve_bound_states(potential, grid: Grid, threshold: float,
                       tol_edge: float = _TOL_EDGE,
                       decay_tol: float = _DECAY_TOL) -> Spectrum:
    """All eigenpairs below threshold - tol_edge, with decay-checked,
    unit-norm eigenfunctions on the full grid.

    No bound states is a legitimate outcome (empty spectrum); a bound state
    that does not decay at the walls raises GridTooSmallError.
    """
    matrix = discretize(potential, grid)
    cutoff = threshold - tol_edge
    k = count_eigenvalues_below(matrix, cutoff)
    if k == 0:
        return Spectrum(np.empty(0), [], threshold, 0)
    pairs = tridiag_eigen(matrix, k)
    h = grid.spacing
    energies = []
    states = []
    for energy, vec in pairs:
        if energy >= cutoff:
            continue
        peak = float(np.max(np.abs(vec)))
        edge = max(abs(float(vec[0])), abs(float(vec[-1])))
        if edge > decay_tol * peak:
            raise GridTooSmallError(
                f"state at E={energy:.6g} has edge amplitude "
                f"{edge/peak:.2e} of its peak; widen the grid beyond "
                f"[{grid.min:g}, {grid.max:g}]")
        full = np.zeros(grid.n)
        full[1:-1] = vec
        norm = np.sqrt(h * float(np.dot(vec, vec)))
        full /= norm
        energies.append(energy)
        states.append(SampledFunction.on_grid(grid, full))
    return Spectrum(np.array(energies), states, threshold, len(energies))


def default_morse_grid(params: MorseParams, n: int = DEFAULT_GRID_N) -> Grid:
    """Morse default domain [-2, 25], pulled right if the deformation
    restricts the negative side."""
    lo = max(morse_rho_min(params) + 0.5, -2.0)
    return Grid(lo, 25.0, n)


def default_pt_grid(params: PTParams, n: int = DEFAULT_GRID_N) -> Grid:
    return Grid(-15.0, 15.0, n)
