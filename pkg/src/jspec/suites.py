"""Campaign suites: seed-deterministic falsification and validation
runs, assembled into integrity-checked reports.

Every suite derives per-trial randomness from (config seed, trial
index), so results do not depend on scheduling; trial-parallel suites
are reduced in trial order. JSPEC_THREADS caps worker threads.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .algebra import Algebra, SymMatrix, parse_algebra
from .cp_oracle import (
    CpProblem,
    aggregate_split_check,
    clarkson_check,
    cp_bruteforce,
    refined_clarkson_check,
)
from .elements import p_norm, random_element, unit
from .errors import DegenerateInputError, ReportError
from .exponents import ExtExponent, cp_constant, vector_pnorm
from .interpolation import (
    ExponentPair,
    check_corollary4,
    check_theorem1,
    check_theorem2,
    three_lines_demo,
)
from .linmaps import (
    EstimatorConfig,
    LinearMap,
    _peak_batch,
    closed_form_norm,
    congruence,
    lyapunov,
    op_norm_estimate,
    quadratic_rep,
    random_doubly_stochastic,
    random_map,
)
from .reports import CampaignConfig, SuiteReport, exponent_to_json, load_report, margins_match

INEQ_SLACK = 1e-9  # criterion slack for exact inequalities
EST_RTOL = 1e-5  # estimator-vs-identity relative tolerance
LINE_SLACK = 1e-6  # sampled three-lines bounds


def thread_cap() -> int:
    """Worker-thread limit; JSPEC_THREADS caps it."""
    available = os.cpu_count() or 1
    env = os.environ.get("JSPEC_THREADS", "")
    if env.strip():
        try:
            cap = int(env)
        except ValueError:
            raise ReportError(f"JSPEC_THREADS must be an integer, got {env!r}") from None
        if cap < 1:
            raise ReportError(f"JSPEC_THREADS must be >= 1, got {cap}")
        return min(cap, available)
    return min(available, 8)


def _pmap(fn, items: list) -> list:
    """Map preserving order; threaded when allowed and worthwhile."""
    cap = thread_cap()
    if cap == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


def derive_seed(base: int, *path: int) -> int:
    """Stable child seed for (base, path); scheduling-independent."""
    ss = np.random.SeedSequence(entropy=base, spawn_key=tuple(path))
    return int(ss.generate_state(1, np.uint64)[0])


def _rng(base: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(base, *path))


def _est_cfg(cfg: CampaignConfig, trial: int, salt: int = 0) -> EstimatorConfig:
    return EstimatorConfig(
        restarts=cfg.restarts,
        max_iters=cfg.max_iters,
        tol=cfg.tol,
        seed=derive_seed(cfg.seed, 7, trial, salt),
    )


def _worst(items: list, key: str, n: int = 3) -> list:
    return sorted(items, key=lambda w: -w[key])[:n]


# -- inequality suites ---------------------------------------------------


def _suite_ftvn(cfg: CampaignConfig):
    """<a, b> <= lambda(a) . lambda(b) (eigenvalues sorted decreasing)."""
    alg = parse_algebra(cfg.algebra)
    a = _rng(cfg.seed, 0).standard_normal((cfg.trials, alg.dim))
    b = _rng(cfg.seed, 1).standard_normal((cfg.trials, alg.dim))
    ip = np.einsum("ij,ij->i", a, b)
    la = np.sort(alg.eigenvalues(a), axis=-1)[:, ::-1]
    lb = np.sort(alg.eigenvalues(b), axis=-1)[:, ::-1]
    rhs = np.einsum("ij,ij->i", la, lb)
    scale = np.maximum(vector_pnorm(la, 2) * vector_pnorm(lb, 2), 1e-30)
    viol = (ip - rhs) / scale
    k = int(np.argmax(viol))
    margins = {"max_violation": float(viol[k])}
    witnesses = [{"trial": k, "violation": float(viol[k]), "inner": float(ip[k]), "rhs": float(rhs[k])}]
    return bool(viol[k] <= INEQ_SLACK), margins, witnesses


def _suite_holder(cfg: CampaignConfig):
    """|<a,b>| <= ||a o b||_1 <= ||a||_p ||b||_q, and attainment of
    sup_b <a,b>/||b||_q = ||a||_p at the dual-norm peak."""
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents
    max_inner = -math.inf
    max_prod = -math.inf
    max_attain = 0.0
    worst = {}
    for gi, p in enumerate(exps):
        m = len(range(gi, cfg.trials, len(exps)))
        if m == 0:
            continue
        q = p.conjugate
        a = _rng(cfg.seed, 2, gi).standard_normal((m, alg.dim))
        b = _rng(cfg.seed, 3, gi).standard_normal((m, alg.dim))
        ip = np.abs(np.einsum("ij,ij->i", a, b))
        ab1 = vector_pnorm(alg.eigenvalues(alg.jordan(a, b)), 1)
        na = vector_pnorm(alg.eigenvalues(a), p)
        nb = vector_pnorm(alg.eigenvalues(b), q)
        scale = np.maximum(na * nb, 1e-30)
        v1 = (ip - ab1) / scale
        v2 = (ab1 - na * nb) / scale
        peaks, ok = _peak_batch(alg, a, q)
        pairing = np.einsum("ij,ij->i", a, peaks)
        attain = np.where(ok, np.abs(pairing - na) / np.maximum(na, 1e-30), 0.0)
        k1, k2, k3 = int(np.argmax(v1)), int(np.argmax(v2)), int(np.argmax(attain))
        if v1[k1] > max_inner:
            max_inner = float(v1[k1])
        if v2[k2] > max_prod:
            max_prod = float(v2[k2])
        if attain[k3] > max_attain:
            max_attain = float(attain[k3])
            worst = {"p": exponent_to_json(p.value), "trial_in_group": k3, "attain_error": float(attain[k3])}
    margins = {
        "max_inner_violation": max_inner,
        "max_product_violation": max_prod,
        "max_attainment_error": max_attain,
    }
    passed = max_inner <= INEQ_SLACK and max_prod <= INEQ_SLACK and max_attain <= INEQ_SLACK
    return passed, margins, [worst]


def _suite_gen_holder(cfg: CampaignConfig):
    """||a o b||_s <= 2 c_q ||a||_p ||b||_r with 1/s = 1/p + 1/r
    (q conjugate to p, s != r)."""
    alg = parse_algebra(cfg.algebra)
    pairs = []
    for p in cfg.exponents:
        for r in cfg.exponents:
            if p.inv + r.inv > 1.0 + 1e-12:
                continue
            s = ExtExponent.from_inverse(p.inv + r.inv)
            if s == r:
                continue
            pairs.append((p, r, s))
    if not pairs:
        raise ReportError("grid admits no exponent pair with 1/p + 1/r <= 1 and s != r")
    max_violation = -math.inf
    max_ratio = 0.0
    worst = {}
    for gi, (p, r, s) in enumerate(pairs):
        m = len(range(gi, cfg.trials, len(pairs)))
        if m == 0:
            continue
        bound = 2.0 * cp_constant(p.conjugate)
        a = _rng(cfg.seed, 4, gi).standard_normal((m, alg.dim))
        b = _rng(cfg.seed, 5, gi).standard_normal((m, alg.dim))
        ns = vector_pnorm(alg.eigenvalues(alg.jordan(a, b)), s)
        denom = np.maximum(vector_pnorm(alg.eigenvalues(a), p) * vector_pnorm(alg.eigenvalues(b), r), 1e-30)
        ratio = ns / denom
        k = int(np.argmax(ratio))
        viol = (ratio[k] - bound) / bound
        if ratio[k] > max_ratio:
            max_ratio = float(ratio[k])
        if viol > max_violation:
            max_violation = float(viol)
            worst = {
                "p": exponent_to_json(p.value), "r": exponent_to_json(r.value),
                "s": exponent_to_json(s.value), "ratio": float(ratio[k]),
                "bound": bound, "trial_in_group": k,
            }
    margins = {"max_violation": max_violation, "max_ratio": max_ratio}
    return max_violation <= INEQ_SLACK, margins, [worst]


# -- estimator-vs-closed-form suites ------------------------------------


def _norm_family_suite(cfg: CampaignConfig, kind: str):
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents

    def one(trial: int) -> dict:
        a = random_element(alg, _rng(cfg.seed, 6, trial))
        t = lyapunov(a) if kind == "lyapunov" else quadratic_rep(a)
        ecfg = _est_cfg(cfg, trial)
        out = {"trial": trial, "exact_delta": 0.0, "upper_overshoot": -math.inf,
               "lower_slack": math.inf, "case": None}
        for r in exps:
            for s in exps:
                cf = closed_form_norm(kind, r, s, a=a)
                est = op_norm_estimate(t, r, s, ecfg).lower_bound
                if cf.is_exact:
                    delta = abs(est - cf.exact) / max(1.0, cf.exact)
                    if delta > out["exact_delta"]:
                        out["exact_delta"] = delta
                        out["case"] = [exponent_to_json(r.value), exponent_to_json(s.value)]
                else:
                    over = (est - cf.upper) / max(1.0, cf.upper)
                    slack = (est - cf.lower) / max(1.0, cf.lower)
                    out["upper_overshoot"] = max(out["upper_overshoot"], over)
                    out["lower_slack"] = min(out["lower_slack"], slack)
        return out

    rows = _pmap(one, list(range(cfg.trials)))
    max_delta = max(r["exact_delta"] for r in rows)
    max_over = max(r["upper_overshoot"] for r in rows)
    min_slack = min(r["lower_slack"] for r in rows)
    margins = {
        "max_exact_delta": float(max_delta),
        "max_upper_overshoot": float(max_over),
        "min_lower_slack": float(min_slack) if math.isfinite(min_slack) else 0.0,
    }
    passed = max_delta <= EST_RTOL and max_over <= INEQ_SLACK and margins["min_lower_slack"] >= -EST_RTOL
    return passed, margins, _worst(rows, "exact_delta")


def _suite_lyapunov(cfg: CampaignConfig):
    return _norm_family_suite(cfg, "lyapunov")


def _suite_quadrep(cfg: CampaignConfig):
    return _norm_family_suite(cfg, "quadratic")


def _positive_map(cfg: CampaignConfig, alg: Algebra, trial: int) -> tuple[str, LinearMap]:
    rng = _rng(cfg.seed, 8, trial)
    single_sym = len(alg.factors) == 1 and isinstance(alg.factors[0], SymMatrix)
    if trial % 2 == 0:
        return "quadratic", quadratic_rep(random_element(alg, rng))
    if single_sym:
        k = alg.factors[0].k
        return "congruence", congruence(rng.standard_normal((k, k)), alg)
    return "doubly-stochastic", random_doubly_stochastic(alg, rng)


def _suite_positive(cfg: CampaignConfig):
    """Positive maps: exact corner identities and one-sided caps.

    Exact: ||P||_{inf->p} = ||P(e)||_p and ||P||_{p->1} = ||P*(e)||_q.
    Caps (never exceeded by the estimator's sampled sup): p->inf by
    ||P(e)||_inf, 1->p by ||P*(e)||_inf, p->p by the interpolated
    product."""
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents
    e = unit(alg)
    inf = ExtExponent(math.inf)
    one_exp = ExtExponent(1.0)

    def one(trial: int) -> dict:
        family, pm = _positive_map(cfg, alg, trial)
        ecfg = _est_cfg(cfg, trial)
        pe, pse = pm(e), pm.adjoint(e)
        out = {"trial": trial, "family": family, "identity_delta": 0.0,
               "cap_overshoot": -math.inf, "case": None}
        for p in exps:
            q = p.conjugate
            got = op_norm_estimate(pm, inf, p, ecfg).lower_bound
            want = p_norm(pe, p)
            d1 = abs(got - want) / max(1.0, want)
            got = op_norm_estimate(pm, p, one_exp, ecfg).lower_bound
            want = p_norm(pse, q)
            d2 = abs(got - want) / max(1.0, want)
            if max(d1, d2) > out["identity_delta"]:
                out["identity_delta"] = max(d1, d2)
                out["case"] = exponent_to_json(p.value)
            caps = (
                (p, inf, p_norm(pe, "inf")),
                (one_exp, p, p_norm(pse, "inf")),
                (p, p, p_norm(pe, "inf") ** (1.0 - p.inv) * p_norm(pse, "inf") ** p.inv),
            )
            for r, s, cap in caps:
                est = op_norm_estimate(pm, r, s, ecfg).lower_bound
                out["cap_overshoot"] = max(out["cap_overshoot"], (est - cap) / max(1.0, cap))
        return out

    rows = _pmap(one, list(range(cfg.trials)))
    max_delta = max(r["identity_delta"] for r in rows)
    max_over = max(r["cap_overshoot"] for r in rows)
    margins = {"max_identity_delta": float(max_delta), "max_cap_overshoot": float(max_over)}
    passed = max_delta <= EST_RTOL and max_over <= INEQ_SLACK
    return passed, margins, _worst(rows, "identity_delta")


# -- interpolation falsification campaigns ------------------------------


def _pick(rng: np.random.Generator, exps: tuple) -> ExtExponent:
    return exps[int(rng.integers(len(exps)))]


def _interp_suite(cfg: CampaignConfig, checker) -> tuple[bool, dict, list]:
    def one(trial: int) -> dict:
        rep, extra = checker(trial)
        ratio = rep.lhs_lower / max(rep.rhs, 1e-30)
        row = {"trial": trial, "ratio": float(ratio), "violated": rep.violated,
               "rerun": rep.seeds.get("rerun") is not None, "report": rep.to_json()}
        row.update(extra)
        return row

    rows = _pmap(one, list(range(cfg.trials)))
    violated = [r for r in rows if r["violated"]]
    max_ratio = max(r["ratio"] for r in rows)
    ds_over = max((r.get("ds_overshoot", -math.inf) for r in rows), default=-math.inf)
    margins = {
        "max_lhs_over_rhs": float(max_ratio),
        "violations": len(violated),
        "reruns": sum(r["rerun"] for r in rows),
    }
    if math.isfinite(ds_over):
        margins["max_ds_overshoot"] = float(ds_over)
    witnesses = [r["report"] for r in violated[:8]] or [max(rows, key=lambda r: r["ratio"])["report"]]
    passed = not violated and (not math.isfinite(ds_over) or ds_over <= INEQ_SLACK)
    return passed, margins, witnesses


def _suite_theorem1(cfg: CampaignConfig):
    """Diagonal interpolation (constant 1), with doubly stochastic
    probes whose diagonal norms must stay at most 1."""
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents

    def checker(trial: int):
        rng = _rng(cfg.seed, 9, trial)
        ecfg = _est_cfg(cfg, trial)
        theta = float(rng.uniform())
        p0, p1 = _pick(rng, exps), _pick(rng, exps)
        extra = {}
        if trial % 5 == 4:
            t = random_doubly_stochastic(alg, rng)
            over = -math.inf
            for p in (p0, p1):
                est = op_norm_estimate(t, p, p, ecfg).lower_bound
                over = max(over, est - 1.0)
            extra["ds_overshoot"] = float(over)
        else:
            t = random_map(alg, rng)
        return check_theorem1(t, p0, p1, theta, ecfg), extra

    return _interp_suite(cfg, checker)


def _suite_theorem2(cfg: CampaignConfig):
    """Two-exponent interpolation; alternates the theta-free and
    theta-dependent constants."""
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents

    def checker(trial: int):
        rng = _rng(cfg.seed, 10, trial)
        t = random_map(alg, rng)
        pair = ExponentPair(_pick(rng, exps), _pick(rng, exps), _pick(rng, exps), _pick(rng, exps))
        theta = float(rng.uniform())
        rep = check_theorem2(t, pair, theta, _est_cfg(cfg, trial), theta_constant=bool(trial % 2))
        return rep, {}

    return _interp_suite(cfg, checker)


def _suite_corollary4(cfg: CampaignConfig):
    """Corner interpolation bounds for r != s; alternates the 2 sqrt(2)
    constant and its sharpened power."""
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents
    if len({e.value for e in exps}) < 2:
        raise ReportError("corollary4 suite needs at least two distinct grid exponents")

    def checker(trial: int):
        rng = _rng(cfg.seed, 11, trial)
        t = random_map(alg, rng)
        r = _pick(rng, exps)
        s = _pick(rng, exps)
        while s == r:
            s = _pick(rng, exps)
        rep = check_corollary4(t, r, s, _est_cfg(cfg, trial), improved=bool(trial % 2))
        return rep, {}

    return _interp_suite(cfg, checker)


def _suite_three_lines(cfg: CampaignConfig):
    """Analytic-family walk-through: the pairing must match phi(theta)
    and the sampled geometric-mean and line-cap bounds must hold."""
    alg = parse_algebra(cfg.algebra)
    exps = cfg.exponents

    def one(trial: int) -> dict:
        rng = _rng(cfg.seed, 12, trial)
        t = random_map(alg, rng)
        pair = ExponentPair(_pick(rng, exps), _pick(rng, exps), _pick(rng, exps), _pick(rng, exps))
        theta = float(rng.uniform(0.05, 0.95))
        for _ in range(50):
            a = random_element(alg, rng)
            b = random_element(alg, rng)
            try:
                rep = three_lines_demo(t, a, b, pair, theta, cfg=_est_cfg(cfg, trial))
                break
            except DegenerateInputError:
                continue
        else:
            raise DegenerateInputError("could not draw invertible elements")
        geo_over = (abs(rep.phi_theta) - rep.geometric_bound) / max(rep.geometric_bound, 1e-30)
        cap_over = max(
            (rep.sup_line0 - rep.line0_cap) / max(rep.line0_cap, 1e-30),
            (rep.sup_line1 - rep.line1_cap) / max(rep.line1_cap, 1e-30),
        )
        return {
            "trial": trial,
            "pairing_error": rep.pairing_error,
            "geo_overshoot": float(geo_over),
            "cap_overshoot": float(cap_over),
            "theta": theta,
        }

    rows = _pmap(one, list(range(cfg.trials)))
    margins = {
        "max_pairing_error": float(max(r["pairing_error"] for r in rows)),
        "max_geo_overshoot": float(max(r["geo_overshoot"] for r in rows)),
        "max_cap_overshoot": float(max(r["cap_overshoot"] for r in rows)),
    }
    passed = (
        margins["max_pairing_error"] <= INEQ_SLACK
        and margins["max_geo_overshoot"] <= LINE_SLACK
        and margins["max_cap_overshoot"] <= LINE_SLACK
    )
    return passed, margins, _worst(rows, "pairing_error")


# -- scalar-oracle suites ------------------------------------------------


def _suite_cp_table(cfg: CampaignConfig):
    """Brute-force recovery of c_p on the grid (table suite)."""
    rows = []
    for i, p in enumerate(cfg.exponents):
        res = cp_bruteforce(CpProblem(cfg.n, p), starts=cfg.starts, seed=derive_seed(cfg.seed, 13, i))
        closed = cp_constant(p)
        rows.append({
            "p": exponent_to_json(p.value),
            "max_found": res.value,
            "closed_form": closed,
            "delta": abs(res.value - closed),
        })
    max_delta = max(r["delta"] for r in rows)
    margins = {"max_delta": float(max_delta)}
    return max_delta <= 1e-4, margins, rows


def _suite_clarkson(cfg: CampaignConfig):
    """Scalar inequality fuzzing across the grid (finite p only)."""
    rows = []
    two_point = refined = aggregate = None
    for i, p in enumerate(cfg.exponents):
        if p.is_inf:
            continue
        if p.value >= 2.0:
            res = clarkson_check(p, trials=cfg.trials, seed=derive_seed(cfg.seed, 14, i))
            rows.append({"p": p.value, "kind": res.name, "max_violation": res.max_violation})
            two_point = max(two_point, res.max_violation) if two_point is not None else res.max_violation
        if p.value <= 2.0:
            res = refined_clarkson_check(p, trials=cfg.trials, seed=derive_seed(cfg.seed, 15, i))
            rows.append({"p": p.value, "kind": res.name, "max_violation": res.max_violation})
            refined = max(refined, res.max_violation) if refined is not None else res.max_violation
        res = aggregate_split_check(p, cfg.n, trials=min(cfg.trials, 10**4), seed=derive_seed(cfg.seed, 16, i))
        rows.append({"p": p.value, "kind": res.name, "max_violation": res.max_violation})
        aggregate = max(aggregate, res.max_violation) if aggregate is not None else res.max_violation
    if not rows:
        raise ReportError("clarkson suite needs at least one finite grid exponent")
    margins = {
        "max_two_point_violation": two_point,
        "max_refined_violation": refined,
        "max_aggregate_violation": aggregate,
    }
    vals = [v for v in (two_point, refined, aggregate) if v is not None]
    return max(vals) <= 1e-12, margins, rows


_SUITES = {
    "ftvn": _suite_ftvn,
    "holder": _suite_holder,
    "gen-holder": _suite_gen_holder,
    "lyapunov-norms": _suite_lyapunov,
    "quadrep-norms": _suite_quadrep,
    "positive-norms": _suite_positive,
    "theorem1": _suite_theorem1,
    "theorem2": _suite_theorem2,
    "corollary4": _suite_corollary4,
    "three-lines": _suite_three_lines,
    "cp-table": _suite_cp_table,
    "clarkson": _suite_clarkson,
}


def run_suite(cfg: CampaignConfig) -> SuiteReport:
    """Execute one campaign; deterministic given the config."""
    if cfg.suite not in _SUITES:
        raise ReportError(f"unknown suite {cfg.suite!r}")
    t0 = time.perf_counter()
    passed, margins, witnesses = _SUITES[cfg.suite](cfg)
    wall = time.perf_counter() - t0
    return SuiteReport(
        suite=cfg.suite,
        config=cfg.to_json(),
        passed=bool(passed),
        margins=margins,
        witnesses=witnesses,
        wall_time=wall,
    )


def replay(path) -> SuiteReport:
    """Re-run the campaign recorded in a report and confirm the margins
    reproduce (to 1e-12; bit-for-bit in the same environment)."""
    original = load_report(path)
    cfg = CampaignConfig.from_json(original.config)
    fresh = run_suite(cfg)
    ok, worst = margins_match(original.margins, fresh.margins)
    if not ok:
        raise ReportError(f"replay mismatch: margins differ by {worst:.3e} (tolerance 1e-12)")
    if original.passed != fresh.passed:
        raise ReportError("replay mismatch: pass/fail flipped")
    return fresh


def cp_table_csv(report: SuiteReport) -> str:
    """CSV rendering of a cp-table report."""
    if report.suite != "cp-table":
        raise ReportError("CSV table rendering is only defined for cp-table reports")
    lines = ["p,max_found,closed_form,delta"]
    for row in report.witnesses:
        lines.append(f"{row['p']},{row['max_found']:.12g},{row['closed_form']:.12g},{row['delta']:.3e}")
    return "\n".join(lines) + "\n"
