"""Continuous surrogates for the discrete scorers and their limit behavior.

Write p = count/doc_len for a term's in-document rate and q = total/tokens
for its corpus background rate. Two smooth functions of (p, q) stand in for
the discrete scorers:

* ``tpidf_surrogate``   f(p, q) = -beta * p * ln(q) - alpha * p, the
  continuous form of tp-idf once document frequency is modeled as a power of
  total frequency (beta = fitted slope, alpha fixed at 1).
* ``fisher_surrogate``  g(p, q) = n * KL(p || q) with the Bernoulli KL
  divergence, a lower bound for the exact-test score when q < p.

The module also provides the lower-bound check (``chvatal_check``), the exact
scaling identity of f, scaled/polar reformulations of both functions (each
with an ``exact`` evaluation and the published closed forms, which are kept
verbatim even where they disagree with direct substitution so the discrepancy
can be measured rather than guessed at), dominance-ratio extraction for the
small-epsilon limit, the idf-linearity regression, and contour-grid emission.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scoring import fisher_score
from .stats import TermDocStats
from .validation import (
    check_at_least,
    check_choice,
    check_open_unit,
    check_half_open_unit,
    check_positive,
    check_real,
)

__all__ = [
    "SurrogateParams",
    "ChvatalResult",
    "ChvatalSweep",
    "chvatal_sweep",
    "RegressionFit",
    "tpidf_surrogate",
    "fisher_surrogate",
    "fisher_surrogate_expanded",
    "bernoulli_kl",
    "chvatal_check",
    "tpidf_surrogate_scaled",
    "scaling_identity_residual",
    "fisher_surrogate_scaled",
    "polar_point",
    "tpidf_surrogate_polar",
    "fisher_surrogate_polar",
    "dominance_profile",
    "fit_idf_linearity",
    "contour_grid",
    "GRID_FUNCTIONS",
]

SCALED_MODES = ("exact", "taylor", "printed")
POLAR_MODES = ("exact_map", "paper_formula")
GRID_FUNCTIONS = ("tpidf", "fisher", "tpidf_scaled", "fisher_scaled")

# slack for the lower-bound comparison: both sides are O(10^2) at corpus
# scale, so absolute 1e-12 leaves real violations visible
_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class SurrogateParams:
    """Shared surrogate constants.

    beta is the idf-linearity slope, alpha its intercept-scale companion
    (fixed at 1 by convention), lam the shrink factor mapping rates toward
    the origin, n_const the document length the Fisher surrogate multiplies.
    """

    beta: float = 1.0
    alpha: float = 1.0
    lam: float = 1.0
    n_const: float = 1.0

    def __post_init__(self) -> None:
        check_positive("beta", self.beta)
        check_positive("alpha", self.alpha)
        check_half_open_unit("lam", self.lam)
        check_at_least("n_const", self.n_const, 1.0)


@dataclass(frozen=True)
class ChvatalResult:
    fisher: float
    bound: float
    holds: bool


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int


@dataclass(frozen=True)
class ChvatalSweep:
    tuples: int
    violations: int
    min_gap: float
    max_gap: float
    mean_gap: float


def tpidf_surrogate(p: float, q: float, params: SurrogateParams) -> float:
    """f(p, q) = -beta * p * ln(q) - alpha * p on the open unit square."""
    p = check_open_unit("p", p)
    q = check_open_unit("q", q)
    return -params.beta * p * math.log(q) - params.alpha * p


def bernoulli_kl(p: float, q: float) -> float:
    """KL(p || q) between Bernoulli(p) and Bernoulli(q), natural log."""
    p = check_open_unit("p", p)
    q = check_open_unit("q", q)
    return p * math.log(p / q) + (1.0 - p) * math.log((1.0 - p) / (1.0 - q))


def fisher_surrogate(p: float, q: float, params: SurrogateParams) -> float:
    """g(p, q) = n * KL(p || q); requires the enriched side 0 < q < p < 1."""
    p = check_open_unit("p", p)
    q = check_open_unit("q", q)
    if not q < p:
        raise ValueError(f"fisher_surrogate requires q < p, got p={p}, q={q}")
    return params.n_const * bernoulli_kl(p, q)


def fisher_surrogate_expanded(p: float, q: float, params: SurrogateParams) -> float:
    """The same g as four explicit log terms (identity target for tests)."""
    p = check_open_unit("p", p)
    q = check_open_unit("q", q)
    if not q < p:
        raise ValueError(f"fisher_surrogate_expanded requires q < p, got p={p}, q={q}")
    n = params.n_const
    return n * (
        -p * math.log(q)
        + p * math.log(p)
        - (1.0 - p) * math.log(1.0 - q)
        + (1.0 - p) * math.log(1.0 - p)
    )


def chvatal_check(k: int, n: int, successes: int, population: int) -> ChvatalResult:
    """Compare the exact-test score against its KL lower bound.

    Requires the in-document rate to exceed the background rate
    (successes/population < k/n). At k = n the bound degenerates to the
    KL limit n * ln(1/q).
    """
    fisher = fisher_score(k, n, successes, population)
    if successes * n >= k * population:
        raise ValueError(
            "chvatal_check requires successes/population < k/n, "
            f"got k={k}, n={n}, successes={successes}, population={population}"
        )
    q = successes / population
    if k == n:
        bound = n * math.log(1.0 / q)
    else:
        bound = n * bernoulli_kl(k / n, q)
    return ChvatalResult(fisher=fisher, bound=bound, holds=fisher >= bound - _BOUND_SLACK)


def chvatal_sweep(max_population: int) -> ChvatalSweep:
    """Exhaustive lower-bound check over every admissible small count tuple.

    Admissible: 1 <= k <= n <= population <= max_population, k <= successes
    <= population, and the strict enrichment successes/population < k/n. The
    gap fisher - bound is never negative beyond floating-point slack; its
    spread is reported since the bound is not claimed tight.
    """
    if max_population < 1:
        raise ValueError(f"max_population must be >= 1, got {max_population}")
    tuples = violations = 0
    min_gap = math.inf
    max_gap = -math.inf
    gap_sum = 0.0
    for population in range(1, max_population + 1):
        for n in range(1, population + 1):
            for successes in range(1, population + 1):
                for k in range(1, min(n, successes) + 1):
                    if successes * n >= k * population:
                        continue
                    result = chvatal_check(k, n, successes, population)
                    gap = result.fisher - result.bound
                    tuples += 1
                    violations += 0 if result.holds else 1
                    gap_sum += gap
                    min_gap = min(min_gap, gap)
                    max_gap = max(max_gap, gap)
    if tuples == 0:
        return ChvatalSweep(0, 0, 0.0, 0.0, 0.0)
    return ChvatalSweep(
        tuples=tuples,
        violations=violations,
        min_gap=min_gap,
        max_gap=max_gap,
        mean_gap=gap_sum / tuples,
    )


def tpidf_surrogate_scaled(p: float, q: float, params: SurrogateParams) -> float:
    """f at the shrunk point (lam*p, lam*q); the shrunk point must stay in domain."""
    p = check_real("p", p)
    q = check_real("q", q)
    lam = params.lam
    if not (0.0 < lam * p < 1.0 and 0.0 < lam * q < 1.0):
        raise ValueError(
            f"scaled point must satisfy 0 < lam*p < 1 and 0 < lam*q < 1, "
            f"got lam*p={lam * p}, lam*q={lam * q}"
        )
    return tpidf_surrogate(lam * p, lam * q, params)


def scaling_identity_residual(p: float, q: float, params: SurrogateParams) -> float:
    """f(lam*p, lam*q) minus lam*f(p, q) + lam*ln(lam)*beta*p; identically 0.

    The exact closed-form scaling law of f, evaluated both ways; the residual
    only measures floating-point noise.
    """
    p = check_open_unit("p", p)
    q = check_open_unit("q", q)
    lam = params.lam
    direct = tpidf_surrogate(lam * p, lam * q, params)
    via_identity = lam * tpidf_surrogate(p, q, params) - lam * math.log(lam) * params.beta * p
    return direct - via_identity


def fisher_surrogate_scaled(
    p: float, q: float, params: SurrogateParams, mode: str = "exact"
) -> float:
    """g at the shrunk point (lam*p, lam*q).

    ``exact``   evaluates g directly.
    ``taylor``  substitutes the first-order expansions ln(1-x) ~ -x of both
                complement logs, the small-lam approximation:
                n*(lam*p*ln(p/q) + lam*(q-p) + lam^2*p*(p-q)).
    ``printed`` is the published closed form, kept verbatim:
                n*(lam*p*ln(q) + lam*p*ln(p) + lam^2*p*(q+1) + lam*(q-p)).
                Its first term's sign disagrees with the substitution, so it
                diverges from ``exact`` even at small lam; it exists to make
                that gap measurable.
    """
    check_choice("mode", mode, SCALED_MODES)
    lam = params.lam
    n = params.n_const
    if mode == "exact":
        x, y = lam * p, lam * q
        if not (0.0 < y < x < 1.0):
            raise ValueError(
                f"scaled point must satisfy 0 < lam*q < lam*p < 1, got lam*p={x}, lam*q={y}"
            )
        return n * bernoulli_kl(x, y)
    p = check_open_unit("p", p)
    q = check_open_unit("q", q)
    if not q < p:
        raise ValueError(f"fisher_surrogate_scaled requires q < p, got p={p}, q={q}")
    if mode == "taylor":
        return n * (lam * p * math.log(p / q) + lam * (q - p) + lam * lam * p * (p - q))
    return n * (
        lam * p * math.log(q)
        + lam * p * math.log(p)
        + lam * lam * p * (q + 1.0)
        + lam * (q - p)
    )


def polar_point(eps: float, theta: float, params: SurrogateParams) -> tuple[float, float]:
    """Cartesian image (lam - eps*cos(theta), eps*sin(theta)) of a polar point.

    The pole sits at (lam, 0), where both surrogates blow up; eps is the
    distance from it, theta in (0, pi/2) the angle into the admissible wedge.
    """
    eps = check_positive("eps", eps)
    theta = check_real("theta", theta)
    if not 0.0 < theta < math.pi / 2.0:
        raise ValueError(f"theta must satisfy 0 < theta < pi/2, got {theta}")
    return params.lam - eps * math.cos(theta), eps * math.sin(theta)


def tpidf_surrogate_polar(
    eps: float, theta: float, params: SurrogateParams, mode: str = "exact_map"
) -> float:
    """f near the pole (lam, 0).

    ``exact_map`` pushes the polar point through the map and evaluates f
    there. ``paper_formula`` is the published closed form, which carries a
    constant term -ln(lam) where substitution yields -lam; both are exposed
    so the difference is observable.
    """
    check_choice("mode", mode, POLAR_MODES)
    x, y = polar_point(eps, theta, params)
    if mode == "exact_map":
        if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
            raise ValueError(
                f"polar point maps outside the f domain: ({x}, {y}) with eps={eps}, theta={theta}"
            )
        return tpidf_surrogate(x, y, params)
    lam, beta = params.lam, params.beta
    log_y = math.log(eps * math.sin(theta))
    return (
        -lam * beta * log_y
        + beta * eps * math.cos(theta) * log_y
        + eps * math.cos(theta)
        - math.log(lam)
    )


def fisher_surrogate_polar(
    eps: float, theta: float, params: SurrogateParams, mode: str = "exact_map"
) -> float:
    """g near the pole (lam, 0).

    ``exact_map`` evaluates g at the mapped point. ``paper_formula`` is the
    published first-order closed form (approximate by construction).
    """
    check_choice("mode", mode, POLAR_MODES)
    x, y = polar_point(eps, theta, params)
    if mode == "exact_map":
        if not (0.0 < y < x < 1.0):
            raise ValueError(
                f"polar point maps outside the g domain: ({x}, {y}) with eps={eps}, theta={theta}"
            )
        return params.n_const * bernoulli_kl(x, y)
    lam, n = params.lam, params.n_const
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    log_y = math.log(eps * sin_t)
    return (
        -n * lam * log_y
        + n * eps * cos_t * log_y
        + n * eps * (1.0 - math.log(lam) * cos_t - cos_t - lam)
        + n * eps * eps * (cos_t * cos_t / lam + cos_t * sin_t)
        + n * (1.0 - lam + eps * cos_t) * math.log(1.0 - lam + eps * cos_t)
        + n * lam * math.log(lam)
    )


def dominance_profile(
    eps_values: list[float], theta: float, params: SurrogateParams
) -> list[dict[str, float]]:
    """How both surrogates grow against ln(1/eps) along a fixed direction.

    For each eps: the raw quotients value/ln(1/eps) and, from the second
    entry on, the slope of the value against ln(1/eps) between consecutive
    eps values. The slope is the ln(1/eps) coefficient; f's tends to
    lam*beta, g's to n*lam. The raw quotient carries an O(1/ln(1/eps))
    constant offset, which for g is far from negligible at practical eps.
    """
    if len(eps_values) < 2:
        raise ValueError("dominance_profile needs at least two eps values")
    if any(not e2 < e1 for e1, e2 in zip(eps_values, eps_values[1:])):
        raise ValueError("eps values must be strictly decreasing")
    rows: list[dict[str, float]] = []
    prev: dict[str, float] | None = None
    for eps in eps_values:
        log_inv = math.log(1.0 / eps)
        f_val = tpidf_surrogate_polar(eps, theta, params, mode="exact_map")
        g_val = fisher_surrogate_polar(eps, theta, params, mode="exact_map")
        row = {
            "eps": eps,
            "log_inv_eps": log_inv,
            "tpidf": f_val,
            "fisher": g_val,
            "tpidf_ratio": f_val / log_inv,
            "fisher_ratio": g_val / log_inv,
        }
        if prev is not None:
            dx = log_inv - prev["log_inv_eps"]
            row["tpidf_slope"] = (f_val - prev["tpidf"]) / dx
            row["fisher_slope"] = (g_val - prev["fisher"]) / dx
        rows.append(row)
        prev = row
    return rows


def fit_idf_linearity(stats: TermDocStats, min_doc_freq: int = 1) -> RegressionFit:
    """OLS of -ln(doc share) on -ln(token share) across the vocabulary.

    One point per term with doc_freq >= min_doc_freq:
    x = -ln(term_total / n_tokens), y = -ln(doc_freq / n_docs). A slope near
    the fitted beta with high R^2 is what licenses the tp-idf surrogate.
    """
    if min_doc_freq < 1:
        raise ValueError(f"min_doc_freq must be >= 1, got {min_doc_freq}")
    xs, ys = [], []
    for tid in range(stats.n_terms):
        if stats.doc_freq[tid] >= min_doc_freq:
            xs.append(-math.log(stats.term_total[tid] / stats.n_tokens))
            ys.append(-math.log(stats.doc_freq[tid] / stats.n_docs))
    x = np.asarray(xs)
    y = np.asarray(ys)
    if x.size < 2 or np.ptp(x) == 0.0:
        raise ValueError(
            f"idf-linearity fit needs at least two distinct x values, got {x.size} point(s)"
        )
    x_c = x - x.mean()
    y_c = y - y.mean()
    slope = float(np.dot(x_c, y_c) / np.dot(x_c, x_c))
    intercept = float(y.mean() - slope * x.mean())
    residuals = y - (slope * x + intercept)
    ss_res = float(np.dot(residuals, residuals))
    ss_tot = float(np.dot(y_c, y_c))
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res <= 1e-30 else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    return RegressionFit(slope=slope, intercept=intercept, r_squared=r_squared, n_points=x.size)


def contour_grid(
    which: str, params: SurrogateParams, resolution: int
) -> list[tuple[float, float, float]]:
    """(p, q, value) rows on an interior lattice, p-major then q ascending.

    Lattice points are (i+1)/(resolution+1) per axis; the fisher variants
    keep only the half-square q < p where they are defined.
    """
    check_choice("which", which, GRID_FUNCTIONS)
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    axis = [(i + 1) / (resolution + 1) for i in range(resolution)]
    rows: list[tuple[float, float, float]] = []
    for p in axis:
        for q in axis:
            if which == "tpidf":
                value = tpidf_surrogate(p, q, params)
            elif which == "tpidf_scaled":
                value = tpidf_surrogate_scaled(p, q, params)
            elif q >= p:
                continue
            elif which == "fisher":
                value = fisher_surrogate(p, q, params)
            else:
                value = fisher_surrogate_scaled(p, q, params, mode="exact")
            rows.append((p, q, value))
    return rows
