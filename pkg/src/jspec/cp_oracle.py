"""Independent numerical recovery of the complex-splitting constant and
fuzz checks for the scalar inequalities behind it.

c_p is the maximum of f(x, y) = ||x||_p + ||y||_p over real vector pairs
with ||x + iy||_p = 1. The closed form (cp_constant) is sqrt(2) on
[1, 2] and 2^(1/q) on [2, inf]. cp_bruteforce recovers it by multistart
coordinate ascent and never consults the closed form, so the two routes
stay independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exponents import ExponentLike, ExtExponent, vector_pnorm


def _mod_pnorm(x: np.ndarray, y: np.ndarray, p: ExtExponent) -> np.ndarray:
    """||x + iy||_p along the last axis (modulus, then vector p-norm)."""
    return vector_pnorm(np.abs(x + 1j * y), p)


@dataclass(frozen=True)
class CpProblem:
    """Maximize ||x||_p + ||y||_p on the complex unit p-sphere in C^n."""

    n: int
    p: ExtExponent

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        object.__setattr__(self, "p", ExtExponent.coerce(self.p))

    def objective(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return vector_pnorm(x, self.p) + vector_pnorm(y, self.p)

    def constraint(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return _mod_pnorm(x, y, self.p)


@dataclass(frozen=True, eq=False)
class CpSearchResult:
    value: float
    x: np.ndarray
    y: np.ndarray
    sweeps: int
    starts: int


def cp_bruteforce(
    problem: CpProblem,
    starts: int = 200,
    seed: int = 0,
    step_init: float = 0.5,
    step_min: float = 1e-9,
    max_sweeps: int = 2000,
) -> CpSearchResult:
    """Multistart coordinate ascent with exact feasibility restoration.

    Each proposal bumps one coordinate of (x, y) and rescales the pair
    back onto the constraint sphere (the constraint is positively
    homogeneous, so rescaling is exact). Steps halve when a full sweep
    over coordinates and signs yields no improvement anywhere.
    """
    n, p = problem.n, problem.p
    rng = np.random.default_rng(seed)
    xy = rng.standard_normal((starts, 2 * n))
    norms = _mod_pnorm(xy[:, :n], xy[:, n:], p)
    xy /= norms[:, None]
    best = problem.objective(xy[:, :n], xy[:, n:])

    step = np.full(starts, step_init)
    sweeps = 0
    while np.any(step >= step_min) and sweeps < max_sweeps:
        sweeps += 1
        improved = np.zeros(starts, dtype=bool)
        for j in range(2 * n):
            for sign in (1.0, -1.0):
                cand = xy.copy()
                cand[:, j] += sign * step
                t = _mod_pnorm(cand[:, :n], cand[:, n:], p)
                ok = t > 0
                cand[ok] /= t[ok, None]
                val = problem.objective(cand[:, :n], cand[:, n:])
                take = ok & (val > best)
                xy[take] = cand[take]
                best = np.where(take, val, best)
                improved |= take
        step = np.where(improved, step, step / 2.0)

    k = int(np.argmax(best))
    return CpSearchResult(
        value=float(best[k]),
        x=xy[k, :n].copy(),
        y=xy[k, n:].copy(),
        sweeps=sweeps,
        starts=starts,
    )


# -- scalar inequality fuzzing ------------------------------------------


@dataclass(frozen=True, eq=False)
class InequalityResult:
    name: str
    p: float
    trials: int
    max_violation: float  # max over trials of (lhs - rhs) / scale
    worst: dict

    @property
    def holds(self) -> bool:
        return self.max_violation <= 1e-12


def _sample_pairs(rng: np.random.Generator, trials: int) -> tuple[np.ndarray, np.ndarray]:
    """Complex pairs with heavy-tailed scales plus structured corners
    (equal, opposite, real, imaginary pairs)."""
    m = trials // 5
    scale = np.exp(rng.normal(0.0, 2.0, trials))
    z = (rng.standard_normal(trials) + 1j * rng.standard_normal(trials)) * scale
    w = (rng.standard_normal(trials) + 1j * rng.standard_normal(trials)) * scale[::-1]
    w[:m] = z[:m]
    w[m:2 * m] = -z[m:2 * m]
    z[2 * m:3 * m] = z[2 * m:3 * m].real
    w[2 * m:3 * m] = w[2 * m:3 * m].real
    z[3 * m:4 * m] = 1j * z[3 * m:4 * m].imag
    return z, w


def _pack(name: str, p: float, trials: int, viol: np.ndarray, z: np.ndarray, w: np.ndarray) -> InequalityResult:
    k = int(np.argmax(viol))
    worst = {"z": [z[k].real, z[k].imag], "w": [w[k].real, w[k].imag], "violation": float(viol[k])}
    return InequalityResult(name, p, trials, float(viol[k]), worst)


def clarkson_check(p: ExponentLike, trials: int = 10**5, seed: int = 0) -> InequalityResult:
    """2(|z|^p + |w|^p) <= |z+w|^p + |z-w|^p for p >= 2."""
    pex = ExtExponent.coerce(p)
    if pex.is_inf or pex.value < 2.0:
        raise ValueError("the plain two-point inequality needs 2 <= p < inf")
    pv = pex.value
    z, w = _sample_pairs(np.random.default_rng(seed), trials)
    lhs = 2.0 * (np.abs(z) ** pv + np.abs(w) ** pv)
    rhs = np.abs(z + w) ** pv + np.abs(z - w) ** pv
    viol = (lhs - rhs) / np.maximum(np.maximum(lhs, rhs), 1e-300)
    return _pack("two-point", pv, trials, viol, z, w)


def refined_clarkson_check(p: ExponentLike, trials: int = 10**5, seed: int = 0) -> InequalityResult:
    """2^(p-1)(|z|^p + |w|^p) + (2 - 2^(p/2)) min{|z+w|^p, |z-w|^p}
    <= |z+w|^p + |z-w|^p for 1 <= p <= 2."""
    pex = ExtExponent.coerce(p)
    if pex.value > 2.0:
        raise ValueError("the refined two-point inequality needs 1 <= p <= 2")
    pv = pex.value
    z, w = _sample_pairs(np.random.default_rng(seed), trials)
    plus = np.abs(z + w) ** pv
    minus = np.abs(z - w) ** pv
    lhs = 2.0 ** (pv - 1.0) * (np.abs(z) ** pv + np.abs(w) ** pv)
    lhs += (2.0 - 2.0 ** (pv / 2.0)) * np.minimum(plus, minus)
    rhs = plus + minus
    viol = (lhs - rhs) / np.maximum(np.maximum(np.abs(lhs), rhs), 1e-300)
    return _pack("refined two-point", pv, trials, viol, z, w)


def aggregate_split_check(
    p: ExponentLike, n: int, trials: int = 10**4, seed: int = 0
) -> InequalityResult:
    """sum_j |x_j|^p + |y_j|^p <= 2^(1-p/2) (p <= 2) or 1 (p >= 2) on
    the constraint ||x + iy||_p = 1; the coordinatewise aggregation step
    of the two-point inequalities."""
    pex = ExtExponent.coerce(p)
    if pex.is_inf:
        raise ValueError("aggregation needs finite p")
    pv = pex.value
    bound = 2.0 ** (1.0 - pv / 2.0) if pv <= 2.0 else 1.0
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((trials, n)) * np.exp(rng.normal(0.0, 1.0, (trials, 1)))
    y = rng.standard_normal((trials, n))
    m = trials // 4
    y[:m] = x[:m]
    y[m:2 * m] = 0.0
    g = _mod_pnorm(x, y, pex)
    x, y = x / g[:, None], y / g[:, None]
    lhs = (np.abs(x) ** pv + np.abs(y) ** pv).sum(axis=1)
    viol = (lhs - bound) / bound
    k = int(np.argmax(viol))
    worst = {"x": x[k].tolist(), "y": y[k].tolist(), "violation": float(viol[k])}
    return InequalityResult("aggregate split", pv, trials, float(viol[k]), worst)
