"""Morse and Poschl-Teller potential families.

Each family comes in four flavors on the level coordinate rho:

* shifted base potential (ground state displaced to zero energy),
* its factorization partner (same spectrum minus the zero mode),
* the one-parameter generalized potential, obtained by deforming the
  superpotential derivative with a logarithmic-derivative term q built from
  the squared ground state and a positive constant gamma,
* the deformed superpotential derivative f itself, which solves the Riccati
  equation f' + f^2 = W'^2 + W''.

The cumulative integral in the denominator of q is precomputed once per
parameter strength on a fine grid and evaluated between nodes by cubic
Hermite interpolation (the integrand is the known derivative, so both values
and slopes are exact at the nodes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grids import Grid
from .numerics import _GK_NODES, _GK_WEIGHTS

__all__ = [
    "MorseParams",
    "PTParams",
    "PotentialCurve",
    "SingularConfigurationError",
    "morse_shifted",
    "morse_partner",
    "q_morse",
    "q_morse_derivative",
    "morse_generalized",
    "f_morse",
    "morse_w_prime",
    "morse_w_second",
    "morse_rho_min",
    "pt_shifted",
    "pt_partner",
    "q_pt",
    "q_pt_derivative",
    "pt_generalized",
    "f_pt",
    "pt_w_prime",
    "pt_w_second",
    "pt_rho_min",
    "riccati_residual",
]


class SingularConfigurationError(ValueError):
    """The q-term denominator hit zero; gamma is too small for this rho."""

    def __init__(self, family: str, rho: float, gamma: float):
        super().__init__(
            f"{family} q-term denominator is not positive at rho={rho:.6g} "
            f"(gamma={gamma:g} is below the negative-tail mass)")
        self.rho = rho


@dataclass(frozen=True)
class MorseParams:
    """Morse family: depth lam > 1/2 (so the deformation integral converges
    at large rho) and deformation constant gamma > 0."""

    lam: float
    gamma: float

    def __post_init__(self):
        if not self.lam > 0.5:
            raise ValueError("Morse requires lam > 1/2")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")

    @property
    def a(self) -> float:
        """Shifted-well strength a = lam - 1/2 (continuum sits at a^2)."""
        return self.lam - 0.5


@dataclass(frozen=True)
class PTParams:
    """Sech-squared well: strength mu > 0, deformation constant gamma > 0."""

    mu: float
    gamma: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("PT requires mu > 0")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class PotentialCurve:
    """Potential sampled on a grid, in dimensionless energy units."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.size != self.grid.n:
            raise ValueError("values length must match grid")
        if not np.all(np.isfinite(v)):
            raise ValueError("potential samples must be finite")

    @classmethod
    def sample(cls, func, grid: Grid) -> "PotentialCurve":
        return cls(grid, np.asarray(func(grid.nodes()), dtype=float))


def _as_out(arr: np.ndarray, scalar: bool):
    return float(arr[0]) if scalar else arr


# ---------------------------------------------------------------------------
# Cached cumulative weight tables
# ---------------------------------------------------------------------------


class _CumulativeTable:
    """Cumulative integral I(rho) = int_0^rho w with Hermite interpolation.

    Outside the tabulated range the integrand has decayed below double
    precision, so I saturates at its end values.
    """

    def __init__(self, weight, rho_lo: float, rho_hi: float, h: float):
        n_neg = int(math.ceil(-rho_lo / h))
        n_pos = int(math.ceil(rho_hi / h))
        xs = np.arange(-n_neg, n_pos + 1) * h
        # Gauss-Kronrod panel integrals, vectorized over all panels
        mids = 0.5 * (xs[:-1] + xs[1:])
        pts = mids[:, None] + (0.5 * h) * _GK_NODES[None, :]
        with np.errstate(over="ignore", under="ignore"):
            wv = weight(pts.ravel()).reshape(pts.shape)
        panels = (0.5 * h) * (wv @ _GK_WEIGHTS)
        cum = np.concatenate(([0.0], np.cumsum(panels)))
        self.xs = xs
        self.h = h
        self.I = cum - cum[n_neg]          # anchored so that I(0) = 0
        with np.errstate(over="ignore", under="ignore"):
            self.w = weight(xs)
        self.I_lo = float(self.I[0])       # = -(negative-tail mass)
        self.I_hi = float(self.I[-1])

    def eval(self, rho: np.ndarray) -> np.ndarray:
        xs, h = self.xs, self.h
        s = (rho - xs[0]) / h
        j = np.clip(np.floor(s).astype(int), 0, xs.size - 2)
        u = s - j
        h00 = (2 * u - 3) * u * u + 1.0
        h10 = ((u - 2) * u + 1.0) * u
        h01 = (3 - 2 * u) * u * u
        h11 = (u - 1) * u * u
        out = (h00 * self.I[j] + h * h10 * self.w[j]
               + h01 * self.I[j + 1] + h * h11 * self.w[j + 1])
        out = np.where(rho < xs[0], self.I_lo, out)
        out = np.where(rho > xs[-1], self.I_hi, out)
        return out

    def rho_min(self, gamma: float) -> float:
        """Leftmost rho with gamma + I(rho) > 0; -inf when gamma clears the
        whole negative tail."""
        if gamma + self.I_lo > 0:
            return -math.inf
        lo, hi = self.xs[0], 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if gamma + float(self.eval(np.array([mid]))[0]) > 0:
                hi = mid
            else:
                lo = mid
            if hi - lo < 1e-13 * max(1.0, abs(hi)):
                break
        return 0.5 * (lo + hi)


def _morse_log_weight(lam: float, rho: np.ndarray) -> np.ndarray:
    return -(2.0 * lam - 1.0) * rho - 2.0 * lam * np.exp(-rho)


@lru_cache(maxsize=64)
def _morse_table(lam: float) -> _CumulativeTable:
    # upper range: e^-(2 lam - 1) rho tail below 1e-20
    hi = max(12.0, 46.0 / (2.0 * lam - 1.0) + 2.0)
    h = max(0.005, (hi + 8.0) / 400_000)
    weight = lambda r: np.exp(_morse_log_weight(lam, r))
    return _CumulativeTable(weight, -8.0, hi, h)


def _pt_log_weight(mu: float, rho: np.ndarray) -> np.ndarray:
    # -2 mu * ln cosh, computed overflow-free
    abs_r = np.abs(rho)
    lncosh = abs_r + np.log1p(np.exp(-2.0 * abs_r)) - math.log(2.0)
    return -2.0 * mu * lncosh


@lru_cache(maxsize=64)
def _pt_table(mu: float) -> _CumulativeTable:
    hi = max(12.0, 46.0 / (2.0 * mu) + math.log(2.0) + 2.0)
    h = max(0.005, 2.0 * hi / 400_000)
    weight = lambda r: np.exp(_pt_log_weight(mu, r))
    return _CumulativeTable(weight, -hi, hi, h)


def morse_rho_min(p: MorseParams) -> float:
    """Left edge of the domain where the generalized Morse family is defined
    (-inf when gamma exceeds the weight's negative-tail mass)."""
    return _morse_table(p.lam).rho_min(p.gamma)


def pt_rho_min(p: PTParams) -> float:
    return _pt_table(p.mu).rho_min(p.gamma)


# ---------------------------------------------------------------------------
# Morse family
# ---------------------------------------------------------------------------


def morse_shifted(p: MorseParams, rho):
    """lam^2 (1 - e^-rho)^2 - lam + 1/4; zero-energy ground state."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    with np.errstate(over="ignore"):
        out = p.lam**2 * (1.0 - np.exp(-r))**2 - p.lam + 0.25
    return _as_out(out, np.ndim(rho) == 0)


def morse_partner(p: MorseParams, rho):
    """Factorization partner: shifted potential plus 2 lam e^-rho."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    with np.errstate(over="ignore"):
        out = (p.lam**2 * (1.0 - np.exp(-r))**2 - p.lam + 0.25
               + 2.0 * p.lam * np.exp(-r))
    return _as_out(out, np.ndim(rho) == 0)


def _q_morse_arr(p: MorseParams, r: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", under="ignore"):
        num = np.exp(_morse_log_weight(p.lam, r))
    den = p.gamma + _morse_table(p.lam).eval(r)
    bad = den <= 0.0
    if np.any(bad):
        raise SingularConfigurationError("Morse", float(r[np.argmax(bad)]),
                                         p.gamma)
    return num / den


def q_morse(p: MorseParams, rho):
    """Deformation term: squared ground state over (gamma + its running
    integral from 0).  Strictly positive wherever defined."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    return _as_out(_q_morse_arr(p, r), np.ndim(rho) == 0)


def q_morse_derivative(p: MorseParams, rho):
    """d q/d rho through the logarithmic-derivative identity
    q' = -g' q - q^2 with g(rho) = (2 lam - 1) rho + 2 lam e^-rho."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    q = _q_morse_arr(p, r)
    with np.errstate(over="ignore"):
        gp = (2.0 * p.lam - 1.0) - 2.0 * p.lam * np.exp(-r)
    out = -gp * q - q * q
    # q underflows to 0 long before gp overflows, so 0 * inf cannot arise
    return _as_out(np.where(q == 0.0, 0.0, out), np.ndim(rho) == 0)


def morse_generalized(p: MorseParams, rho):
    """Isospectral deformation of the shifted well: V - 2 dq/drho."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    out = morse_shifted(p, r) - 2.0 * q_morse_derivative(p, r)
    return _as_out(np.atleast_1d(out), np.ndim(rho) == 0)


def f_morse(p: MorseParams, rho):
    """Deformed superpotential derivative lam(1 - e^-rho) - 1/2 + q."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    out = morse_w_prime(p, r) + _q_morse_arr(p, r)
    return _as_out(np.atleast_1d(out), np.ndim(rho) == 0)


def morse_w_prime(p: MorseParams, rho):
    """Base superpotential derivative W' = lam(1 - e^-rho) - 1/2."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    with np.errstate(over="ignore"):
        out = p.lam * (1.0 - np.exp(-r)) - 0.5
    return _as_out(out, np.ndim(rho) == 0)


def morse_w_second(p: MorseParams, rho):
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    with np.errstate(over="ignore"):
        out = p.lam * np.exp(-r)
    return _as_out(out, np.ndim(rho) == 0)


# ---------------------------------------------------------------------------
# Poschl-Teller family
# ---------------------------------------------------------------------------


def pt_shifted(p: PTParams, rho):
    """-mu(mu+1)/cosh^2 rho + mu^2; zero-energy ground state."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    out = -p.mu * (p.mu + 1.0) / np.cosh(r)**2 + p.mu**2
    return _as_out(out, np.ndim(rho) == 0)


def pt_partner(p: PTParams, rho):
    """Partner well: strength drops from mu(mu+1) to mu(mu-1)."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    out = (-p.mu * (p.mu + 1.0) + 2.0 * p.mu) / np.cosh(r)**2 + p.mu**2
    return _as_out(out, np.ndim(rho) == 0)


def _q_pt_arr(p: PTParams, r: np.ndarray) -> np.ndarray:
    with np.errstate(under="ignore"):
        num = np.exp(_pt_log_weight(p.mu, r))
    den = p.gamma + _pt_table(p.mu).eval(r)
    bad = den <= 0.0
    if np.any(bad):
        raise SingularConfigurationError("PT", float(r[np.argmax(bad)]),
                                         p.gamma)
    return num / den


def q_pt(p: PTParams, rho):
    """Deformation term cosh^-2mu rho / (gamma + running integral)."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    return _as_out(_q_pt_arr(p, r), np.ndim(rho) == 0)


def q_pt_derivative(p: PTParams, rho):
    """dq/drho = -2 mu tanh(rho) q - q^2 (logarithmic-derivative identity)."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    q = _q_pt_arr(p, r)
    out = -2.0 * p.mu * np.tanh(r) * q - q * q
    return _as_out(out, np.ndim(rho) == 0)


def pt_generalized(p: PTParams, rho):
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    out = pt_shifted(p, r) - 2.0 * q_pt_derivative(p, r)
    return _as_out(np.atleast_1d(out), np.ndim(rho) == 0)


def f_pt(p: PTParams, rho):
    """mu tanh rho + q; solves the Riccati equation of the base well."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    out = p.mu * np.tanh(r) + _q_pt_arr(p, r)
    return _as_out(np.atleast_1d(out), np.ndim(rho) == 0)


def pt_w_prime(p: PTParams, rho):
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    return _as_out(p.mu * np.tanh(r), np.ndim(rho) == 0)


def pt_w_second(p: PTParams, rho):
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    return _as_out(p.mu / np.cosh(r)**2, np.ndim(rho) == 0)


# ---------------------------------------------------------------------------
# Riccati residual
# ---------------------------------------------------------------------------


def riccati_residual(f, w_prime, w_second, grid: Grid) -> float:
    """max |f' + f^2 - W'^2 - W''| over interior nodes, with f' from a
    five-point central-difference stencil at the grid spacing."""
    if grid.n < 3:
        raise ValueError("riccati_residual needs at least 3 nodes")
    x = grid.nodes()
    h = grid.spacing

    def _vec(func):
        v = np.asarray(func(x), dtype=float)
        if v.shape != x.shape:
            v = np.array([func(xi) for xi in x], dtype=float)
        return v

    fv = _vec(f)
    wp = _vec(w_prime)
    ws = _vec(w_second)
    fp = (-fv[4:] + 8.0 * fv[3:-1] - 8.0 * fv[1:-3] + fv[:-4]) / (12.0 * h)
    core = slice(2, -2)
    res = fp + fv[core]**2 - wp[core]**2 - ws[core]
    return float(np.max(np.abs(res)))
