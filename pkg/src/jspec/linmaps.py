"""Linear transformations on the algebra: constructors, adjoints,
closed-form operator norms, and a multistart lower-bound estimator for
||T||_{r->s} = sup ||T(a)||_s / ||a||_r.

The estimator alternates two exact half-steps on the bilinear form
<T(a), b>: with a fixed, the maximizing unit-||.||_{s'} element b is the
dual-norm peak of T(a); with b fixed, the maximizing unit-||.||_r element
a is the peak of T*(b). Each half-step is closed-form, so the objective
never decreases; the result is a certified lower bound with witnesses,
not a claim of global optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .algebra import Algebra, SymMatrix
from .elements import Element, jordan_product, p_norm, unit, _check_same
from .errors import AlgebraMismatchError, DegenerateInputError, UnsupportedCaseError
from .exponents import ExponentLike, ExtExponent, cp_constant, vector_pnorm

_SQRT8 = 2.0 * math.sqrt(2.0)
_ZERO_EIG = 1e-14


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear transformation stored as a dense matrix over the chart.

    The chart is orthonormal, so the adjoint is the transpose.
    """

    algebra: Algebra
    matrix: np.ndarray

    def __post_init__(self):
        d = self.algebra.dim
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (d, d):
            raise ValueError(f"matrix must have shape ({d}, {d}), got {m.shape}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __call__(self, v: Element) -> Element:
        if v.algebra != self.algebra:
            raise AlgebraMismatchError("element lives on a different algebra")
        return Element(self.algebra, self.matrix @ v.coords)

    @property
    def adjoint(self) -> "LinearMap":
        return LinearMap(self.algebra, self.matrix.T)

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, self.matrix @ other.matrix)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.algebra, self.matrix + other.matrix)

    def __mul__(self, t: float) -> "LinearMap":
        return LinearMap(self.algebra, self.matrix * float(t))

    __rmul__ = __mul__


def identity_map(alg: Algebra) -> LinearMap:
    return LinearMap(alg, np.eye(alg.dim))


def adjoint(t: LinearMap) -> LinearMap:
    return t.adjoint


def lyapunov(a: Element) -> LinearMap:
    """Multiplication operator v -> a o v (self-adjoint)."""
    alg = a.algebra
    rows = alg.jordan(a.coords[None, :], np.eye(alg.dim))
    return LinearMap(alg, rows.T)


def quadratic_rep(a: Element) -> LinearMap:
    """Quadratic representation v -> 2 a o (a o v) - a^2 o v."""
    la = lyapunov(a).matrix
    lasq = lyapunov(jordan_product(a, a)).matrix
    return LinearMap(a.algebra, 2.0 * la @ la - lasq)


def congruence(a_mat: np.ndarray, alg: Algebra) -> LinearMap:
    """X -> A X A^T on a single real-symmetric factor; adjoint is the
    congruence by A^T. Preserves positive semidefiniteness."""
    if len(alg.factors) != 1 or not isinstance(alg.factors[0], SymMatrix):
        raise UnsupportedCaseError("congruence needs an algebra with a single sym:k factor")
    fac = alg.factors[0]
    a_mat = np.asarray(a_mat, dtype=float)
    if a_mat.shape != (fac.k, fac.k):
        raise ValueError(f"matrix must be {fac.k} x {fac.k}")
    basis = fac.to_dense(np.eye(alg.dim))
    out = a_mat @ basis @ a_mat.T
    return LinearMap(alg, fac.from_dense(out).T)


def reflection_mixture(units: Sequence[Element], weights: Sequence[float] | None = None) -> LinearMap:
    """Convex combination of quadratic representations of square roots of
    the unit (u o u = e). Each term is a positive map fixing e, so the
    mixture is doubly stochastic."""
    if not units:
        raise ValueError("need at least one mixing element")
    alg = units[0].algebra
    e = unit(alg)
    for u in units:
        _check_same(u, e)
        resid = np.linalg.norm(jordan_product(u, u).coords - e.coords)
        if resid > 1e-8:
            raise ValueError(f"mixing element is not a unit square root (residual {resid:.2e})")
    if weights is None:
        w = np.full(len(units), 1.0 / len(units))
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(units),) or np.any(w < 0):
            raise ValueError("weights must be nonnegative, one per element")
        w = w / w.sum()
    m = sum(wi * quadratic_rep(u).matrix for wi, u in zip(w, units))
    return LinearMap(alg, m)


def random_doubly_stochastic(alg: Algebra, seed: int | np.random.Generator, terms: int = 4) -> LinearMap:
    """Random doubly stochastic map: mixture of quadratic representations
    P_u with u = sum +/- e_i over random Jordan frames."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    units = []
    for _ in range(terms):
        frame = alg.random_frame(rng)
        signs = rng.integers(0, 2, alg.rank) * 2.0 - 1.0
        units.append(Element(alg, signs @ frame))
    weights = rng.dirichlet(np.ones(terms))
    return reflection_mixture(units, weights)


def random_map(alg: Algebra, seed: int | np.random.Generator) -> LinearMap:
    """Gaussian random map on the chart (campaign fodder)."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    return LinearMap(alg, rng.standard_normal((alg.dim, alg.dim)))


# -- dual-norm peaks ----------------------------------------------------


def _peak_batch(alg: Algebra, coords: np.ndarray, p: ExtExponent):
    """Batched dual-norm maximizer.

    For each row c returns d with ||d||_p = 1 and <c, d> = ||c||_q
    (q conjugate to p), built in c's Jordan frame. Second return value
    flags rows with a nonzero spectrum; zero rows yield zero output.
    """
    decs = alg.decomp(coords)
    lam = alg.eigenvalues_from(decs)
    alam = np.abs(lam)
    amax = alam.max(axis=-1)
    ok = amax > _ZERO_EIG
    if p.value == 1.0:
        # single idempotent at the first (in decreasing eigenvalue order)
        # index attaining max |lambda_j|
        order = np.argsort(-lam, axis=-1, kind="stable")
        sorted_abs = np.take_along_axis(alam, order, axis=-1)
        first = np.argmax(sorted_abs >= amax[..., None], axis=-1)
        k = np.take_along_axis(order, first[..., None], axis=-1)[..., 0]
        lam_new = np.zeros_like(lam)
        rows = np.arange(lam.shape[0])
        picked = lam[rows, k]
        lam_new[rows, k] = np.where(ok, np.where(picked >= 0, 1.0, -1.0), 0.0)
    elif p.is_inf:
        lam_new = np.where(lam >= 0.0, 1.0, -1.0) * ok[..., None]
    else:
        # work with |lambda| / max so q near the endpoints cannot overflow
        q = p.conjugate.value
        scaled = alam / np.where(ok, amax, 1.0)[..., None]
        qnorm = np.where(ok, vector_pnorm(scaled, q), 1.0)
        lam_new = np.sign(lam) * (scaled / qnorm[..., None]) ** (q - 1.0)
        lam_new *= ok[..., None]
    return alg.rebuild(decs, lam_new), ok


def peak(c: Element, p: ExponentLike) -> Element:
    """The unit-||.||_p element d maximizing <c, d>; the maximum is
    ||c||_q with q conjugate to p."""
    pex = ExtExponent.coerce(p)
    d, ok = _peak_batch(c.algebra, c.coords[None, :], pex)
    if not ok[0]:
        raise DegenerateInputError("peak of a (numerically) zero element")
    return Element(c.algebra, d[0])


# -- operator norm estimation ------------------------------------------


@dataclass(frozen=True)
class EstimatorConfig:
    restarts: int = 64
    max_iters: int = 200
    tol: float = 1e-10
    seed: int = 0

    def scaled(self, factor: int, seed_offset: int = 0) -> "EstimatorConfig":
        return replace(self, restarts=self.restarts * factor, seed=self.seed + seed_offset)


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """Certified lower bound for ||T||_{r->s} with attaining witnesses."""

    lower_bound: float
    witness_a: Element
    witness_b: Element
    iterations: int
    restarts_used: int
    converged: bool
    objective_traces: np.ndarray  # (half-steps, restarts), nondecreasing columns


def _pnorm_rows(alg: Algebra, coords: np.ndarray, p: ExtExponent) -> np.ndarray:
    return vector_pnorm(alg.eigenvalues(coords), p)


def _starts(alg: Algebra, mat: np.ndarray, r: ExtExponent, cfg: EstimatorConfig) -> np.ndarray:
    n_restarts = max(1, cfg.restarts)
    rows = np.empty((n_restarts, alg.dim))
    n_sparse = min(n_restarts, 2 + n_restarts // 4)
    for k in range(n_restarts):
        rng = np.random.default_rng((cfg.seed, k))
        if k == 0:
            rows[k] = alg.unit_coords()
        elif k == 1:
            rows[k] = np.linalg.svd(mat)[2][0]
        elif k < n_sparse:
            frame = alg.random_frame(rng)
            rows[k] = frame[rng.integers(alg.rank)]
        else:
            rows[k] = rng.standard_normal(alg.dim)
    return rows / _pnorm_rows(alg, rows, r)[:, None]


def op_norm_estimate(
    t: LinearMap,
    r: ExponentLike,
    s: ExponentLike,
    cfg: EstimatorConfig | None = None,
) -> NormEstimate:
    """Multistart alternating-duality ascent for ||T||_{r->s}.

    Restart k draws its own generator from (cfg.seed, k), so results do
    not depend on scheduling. Returns the best objective over all
    restarts; always a valid lower bound.
    """
    cfg = cfg or EstimatorConfig()
    rex, sex = ExtExponent.coerce(r), ExtExponent.coerce(s)
    sp = sex.conjugate
    alg = t.algebra
    mat = t.matrix
    e = unit(alg)
    if not np.any(mat):
        wa = Element(alg, e.coords / p_norm(e, rex))
        wb = Element(alg, e.coords / p_norm(e, sp))
        return NormEstimate(0.0, wa, wb, 0, max(1, cfg.restarts), True, np.zeros((0, 1)))

    a_rows = _starts(alg, mat, rex, cfg)
    n_restarts = a_rows.shape[0]
    b_rows = np.tile(e.coords / p_norm(e, sp), (n_restarts, 1))
    values = np.full(n_restarts, -np.inf)
    stall = np.zeros(n_restarts, dtype=int)
    traces = []
    e_unit_sp = e.coords / p_norm(e, sp)
    e_unit_r = e.coords / p_norm(e, rex)
    iterations = 0

    for it in range(max(1, cfg.max_iters)):
        iterations = it + 1
        for half in (0, 1):
            if half == 0:
                ta = a_rows @ mat.T
                cand, ok = _peak_batch(alg, ta, sp)
                cand = np.where(ok[:, None], cand, e_unit_sp)
                vals = np.einsum("ij,ij->i", ta, cand)
            else:
                tb = b_rows @ mat
                cand, ok = _peak_batch(alg, tb, rex)
                cand = np.where(ok[:, None], cand, e_unit_r)
                vals = np.einsum("ij,ij->i", (cand @ mat.T), b_rows)
            done = stall >= 2
            improve = (vals > values) & ~done
            scale = np.maximum(1.0, np.abs(values))
            small = (vals - values) <= cfg.tol * scale
            if half == 0:
                b_rows[improve] = cand[improve]
            else:
                a_rows[improve] = cand[improve]
            values = np.where(improve, vals, values)
            stall = np.where(done, stall, np.where(small, stall + 1, 0))
            traces.append(values.copy())
        if np.all(stall >= 2):
            break

    best = int(np.argmax(values))
    return NormEstimate(
        lower_bound=float(values[best]),
        witness_a=Element(alg, a_rows[best]),
        witness_b=Element(alg, b_rows[best]),
        iterations=iterations,
        restarts_used=n_restarts,
        converged=bool(stall[best] >= 2),
        objective_traces=np.array(traces),
    )


# -- closed forms -------------------------------------------------------


@dataclass(frozen=True)
class ClosedForm:
    """Exact value, or a [lower, upper] bracket when only bounds are known."""

    lower: float
    upper: float
    exact: float | None = None

    @classmethod
    def of_exact(cls, v: float) -> "ClosedForm":
        return cls(v, v, v)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None


def closed_form_norm(
    kind: str,
    r: ExponentLike,
    s: ExponentLike,
    *,
    a: Element | None = None,
    pmap: LinearMap | None = None,
) -> ClosedForm:
    """Known values of ||T||_{r->s} for the structured families.

    kind 'lyapunov' / 'quadratic' need the defining element a; kind
    'positive' needs the map itself (caller asserts positivity). Exact
    where an identity is known, otherwise a bracket.
    """
    rex, sex = ExtExponent.coerce(r), ExtExponent.coerce(s)
    if kind in ("lyapunov", "quadratic"):
        if a is None:
            raise UnsupportedCaseError(f"kind {kind!r} needs the defining element a")
        sq = kind == "quadratic"
        base = jordan_product(a, a) if sq else a
        top = p_norm(a, "inf") ** (2 if sq else 1)
        if rex.value <= sex.value:
            return ClosedForm.of_exact(top)
        if rex.is_inf:
            return ClosedForm.of_exact(p_norm(base, sex))
        if sex.value == 1.0:
            return ClosedForm.of_exact(p_norm(base, rex.conjugate))
        ratio = ExtExponent(rex.value / sex.value)
        p_est = ExtExponent.from_inverse(sex.inv - rex.inv)
        upper = min(
            _SQRT8 * p_norm(base, ratio.conjugate),
            2.0 * cp_constant(p_est.conjugate) * p_norm(base, p_est),
        )
        return ClosedForm(lower=top, upper=upper)
    if kind == "positive":
        if pmap is None:
            raise UnsupportedCaseError("kind 'positive' needs the map itself")
        alg = pmap.algebra
        e = unit(alg)
        pe, pse = pmap(e), pmap.adjoint(e)
        n = alg.rank
        if rex.is_inf:
            return ClosedForm.of_exact(p_norm(pe, sex))
        if sex.value == 1.0:
            return ClosedForm.of_exact(p_norm(pse, rex.conjugate))
        uppers = []
        pe_inf, pse_inf = p_norm(pe, "inf"), p_norm(pse, "inf")
        if sex.is_inf:
            uppers.append(pe_inf)
        if rex.value == 1.0:
            uppers.append(pse_inf)
        if rex.value == sex.value:
            uppers.append(pe_inf ** (1.0 - rex.inv) * pse_inf ** rex.inv)
        elif rex.value < sex.value:
            uppers.append(_SQRT8 * pe_inf ** (1.0 - rex.inv) * pse_inf ** rex.inv)
        else:
            ratio = ExtExponent(rex.value / sex.value)
            uppers.append(
                _SQRT8 * pe_inf ** (1.0 - sex.inv) * p_norm(pse, ratio.conjugate) ** sex.inv
            )
            sym_resid = np.abs(pmap.matrix - pmap.matrix.T).max()
            if sym_resid <= 1e-12 * max(1.0, np.abs(pmap.matrix).max()):
                p_est = ExtExponent.from_inverse(sex.inv - rex.inv)
                uppers.append(2.0 * cp_constant(p_est.conjugate) * p_norm(pe, p_est))
        lower = max(
            p_norm(pe, sex) * n ** (-rex.inv),
            p_norm(pse, rex.conjugate) * n ** (-sex.conjugate.inv),
        )
        return ClosedForm(lower=lower, upper=min(uppers))
    raise UnsupportedCaseError(f"unknown closed-form kind {kind!r}")
