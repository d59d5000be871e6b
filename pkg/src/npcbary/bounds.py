"""Closed-form concentration radii, sample-size formulas, and geometric
constants for barycenter estimation.

Every function evaluates an explicit formula; none touches data.  Radii bound
d(T_n, b*) with probability at least 1 - delta, where T_n is the empirical or
inductive barycenter of n draws, sigma^2 = E[d(X, b*)^2] is the Frechet
variance, C is an almost-sure radius bound d(X, x0) <= C, and K is a
sub-Gaussian constant.

The Bernstein radius carries a ``combine`` switch because the two source
statements of the refinement disagree (min versus max of the variance and
range terms); ``max`` is the default since it is always a valid tail
inversion, with ``min`` and ``sum`` exposed for study.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

_COMBINE: dict[str, Callable[[float, float], float]] = {
    "max": max,
    "min": min,
    "sum": lambda a, b: a + b,
}


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    return delta


def _check_nonneg(value: float, name: str) -> float:
    value = float(value)
    if not value >= 0.0:
        raise ValueError(f"{name} must be >= 0, got {value}")
    return value


def _check_pos(value: float, name: str) -> float:
    value = float(value)
    if not value > 0.0:
        raise ValueError(f"{name} must be > 0, got {value}")
    return value


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"sample size n must be >= 1, got {n}")
    return n


def _combine_fn(combine: str) -> Callable[[float, float], float]:
    try:
        return _COMBINE[combine]
    except KeyError:
        raise ValueError(f"combine must be one of {sorted(_COMBINE)}, got {combine!r}")


def subgaussian_radius(K: float, sigma: float, n: int, delta: float) -> float:
    """sigma/sqrt(n) + K*sqrt(log(1/delta)/n) for K^2-sub-Gaussian draws."""
    K = _check_nonneg(K, "K")
    sigma = _check_nonneg(sigma, "sigma")
    n = _check_n(n)
    delta = _check_delta(delta)
    return sigma / math.sqrt(n) + K * math.sqrt(math.log(1.0 / delta) / n)


def hoeffding_radius(sigma: float, C: float, n: int, delta: float) -> float:
    """Bounded-support radius: sigma/sqrt(n) + 2C*sqrt(log(1/delta)/n).

    A variable confined to a ball of radius C is 4C^2-sub-Gaussian, so this is
    ``subgaussian_radius`` with K = 2C.
    """
    C = _check_nonneg(C, "C")
    return subgaussian_radius(2.0 * C, sigma, n, delta)


def bernstein_radius(
    sigma: float, C: float, n: int, delta: float, combine: str = "max"
) -> float:
    """sigma/sqrt(n) + combine(2*sigma*sqrt(log(1/delta)/n), 8C*log(1/delta)/(3n)).

    Sharper than the Hoeffding radius when sigma is much smaller than C.
    """
    sigma = _check_nonneg(sigma, "sigma")
    C = _check_nonneg(C, "C")
    n = _check_n(n)
    delta = _check_delta(delta)
    fn = _combine_fn(combine)
    log_term = math.log(1.0 / delta)
    var_term = 2.0 * sigma * math.sqrt(log_term / n)
    range_term = 8.0 * C * log_term / (3.0 * n)
    return sigma / math.sqrt(n) + fn(var_term, range_term)


def _rms(values: Sequence[float], n: int, name: str) -> float:
    values = [float(v) for v in values]
    if len(values) != n:
        raise ValueError(f"{name} must have length n={n}, got {len(values)}")
    if any(v < 0 for v in values):
        raise ValueError(f"{name} entries must be >= 0")
    return math.sqrt(sum(v * v for v in values) / n)


def noniid_hoeffding_radius(
    sigmas: Sequence[float], Cs: Sequence[float], n: int, delta: float
) -> float:
    """Independent, non-identically distributed draws with a common
    barycenter: sigma_bar/sqrt(n) + C_bar*sqrt(log(1/delta)/n) with
    sigma_bar = sqrt(mean sigma_i^2), C_bar = sqrt(mean C_i^2).

    With constant lists this has K-term C, not the 2C of
    :func:`hoeffding_radius`; the two conventions are both exposed.
    """
    n = _check_n(n)
    delta = _check_delta(delta)
    sigma_bar = _rms(sigmas, n, "sigmas")
    c_bar = _rms(Cs, n, "Cs")
    return sigma_bar / math.sqrt(n) + c_bar * math.sqrt(math.log(1.0 / delta) / n)


def noniid_bernstein_radius(
    sigmas: Sequence[float], C: float, n: int, delta: float, combine: str = "max"
) -> float:
    """Heterogeneous Bernstein radius with a common almost-sure bound C."""
    n = _check_n(n)
    delta = _check_delta(delta)
    C = _check_nonneg(C, "C")
    fn = _combine_fn(combine)
    sigma_bar = _rms(sigmas, n, "sigmas")
    log_term = math.log(1.0 / delta)
    var_term = 2.0 * sigma_bar * math.sqrt(log_term / n)
    range_term = 8.0 * C * log_term / (3.0 * n)
    return sigma_bar / math.sqrt(n) + fn(var_term, range_term)


def sturm_lln_bound(sigmas: Sequence[float], n: int) -> float:
    """E[d(S_n, b*)^2] <= (sigma_1^2 + ... + sigma_n^2) / n^2 for the
    inductive barycenter of independent draws with common barycenter;
    reduces to sigma^2/n in the i.i.d. case."""
    n = _check_n(n)
    sigmas = [float(s) for s in sigmas]
    if len(sigmas) != n:
        raise ValueError(f"sigmas must have length n={n}, got {len(sigmas)}")
    if any(s < 0 for s in sigmas):
        raise ValueError("sigmas entries must be >= 0")
    return sum(s * s for s in sigmas) / (n * n)


def pac_sample_size(D: float, eps_target: float, delta: float, c_pac: float = 1.0) -> int:
    """Subsample size m = ceil(c * (D/eps)^2 * max(1, log(1/delta))) that makes
    the inductive barycenter of m uniform draws an eps-approximation of the
    barycenter of the full set (diameter D) with probability >= 1 - delta."""
    D = _check_pos(D, "D")
    eps_target = _check_pos(eps_target, "eps_target")
    delta = _check_delta(delta)
    c_pac = _check_pos(c_pac, "c_pac")
    m = math.ceil(c_pac * (D / eps_target) ** 2 * max(1.0, math.log(1.0 / delta)))
    return max(1, m)


def pac_sample_size_bernstein(
    sigma2: float, D: float, eps_target: float, delta: float, c_pac: float = 1.0
) -> int:
    """Variance-aware subsample size
    m = ceil(c * max(sigma^2/eps^2, D/eps) * max(1, log(1/delta))).

    The inner max(1, .) keeps m positive as delta approaches 1, a regime the
    asymptotic statement does not address.
    """
    sigma2 = _check_nonneg(sigma2, "sigma2")
    D = _check_pos(D, "D")
    eps_target = _check_pos(eps_target, "eps_target")
    delta = _check_delta(delta)
    c_pac = _check_pos(c_pac, "c_pac")
    lead = max(sigma2 / eps_target**2, D / eps_target)
    m = math.ceil(c_pac * lead * max(1.0, math.log(1.0 / delta)))
    return max(1, m)


def k_epsilon(kappa: float, epsilon: float) -> float:
    """Strong-convexity modulus (pi - 2*sqrt(kappa)*eps) * tan(eps*sqrt(kappa))
    of the squared distance on balls of radius pi/(2*sqrt(kappa)) - eps in a
    CAT(kappa) space, kappa > 0.  Lies in (0, 2) on the open domain."""
    kappa = _check_pos(kappa, "kappa")
    epsilon = float(epsilon)
    limit = math.pi / (2.0 * math.sqrt(kappa))
    if not 0.0 < epsilon < limit:
        raise ValueError(
            f"epsilon must be in (0, pi/(2*sqrt(kappa))) = (0, {limit}), got {epsilon}"
        )
    sk = math.sqrt(kappa)
    return (math.pi - 2.0 * sk * epsilon) * math.tan(epsilon * sk)


def cat_kappa_radius(
    A: float, p: float, kappa: float, epsilon: float, n: int, delta: float
) -> float:
    """High-probability radius for the empirical barycenter in a CAT(kappa)
    space, kappa > 0, under the covering-number growth N(B(x,r), a) <= (A r / a)^p
    and support confined to a ball of radius pi/(2*sqrt(kappa)) - epsilon:

        288*sqrt(A)/(sqrt(kappa)*tan(eps*sqrt(kappa))) * sqrt(p/n)
        + (6*sqrt(2)/sqrt(tan(eps*sqrt(kappa))) + 16)
          / sqrt(kappa*tan(eps*sqrt(kappa))) * sqrt(log(2/delta)/n)

    This keeps the explicit pre-simplification constants rather than hiding
    them in an unspecified universal factor.
    """
    A = _check_pos(A, "A")
    p = _check_pos(p, "p")
    n = _check_n(n)
    delta = _check_delta(delta)
    kappa = _check_pos(kappa, "kappa")
    sk = math.sqrt(kappa)
    limit = math.pi / (2.0 * sk)
    if not 0.0 < float(epsilon) < limit:
        raise ValueError(
            f"epsilon must be in (0, pi/(2*sqrt(kappa))) = (0, {limit}), got {epsilon}"
        )
    tn = math.tan(epsilon * sk)
    bias = 288.0 * math.sqrt(A) / (sk * tn) * math.sqrt(p / n)
    stoch = (
        (6.0 * math.sqrt(2.0) / math.sqrt(tn) + 16.0)
        / math.sqrt(kappa * tn)
        * math.sqrt(math.log(2.0 / delta) / n)
    )
    return bias + stoch


def cat_kappa_radius_via_modulus(
    A: float, p: float, kappa: float, epsilon: float, n: int, delta: float
) -> float:
    """The same radius assembled from the unsimplified route: constants c1, c2
    built from the ball radius and the convexity modulus k_eps, then divided
    by sqrt(k_eps/2).  Cross-check for :func:`cat_kappa_radius`."""
    ke = k_epsilon(kappa, epsilon)
    n = _check_n(n)
    delta = _check_delta(delta)
    A = _check_pos(A, "A")
    p = _check_pos(p, "p")
    sk = math.sqrt(kappa)
    tn = math.tan(epsilon * sk)
    ball = math.pi / (2.0 * sk) - epsilon
    c1 = 96.0 * math.sqrt(2.0 * A) * ball / math.sqrt(ke)
    c2 = math.sqrt((math.pi - 2.0 * sk * epsilon) / kappa) * (
        2.0 / math.sqrt(tn) + 16.0 / (3.0 * math.sqrt(2.0))
    )
    scale = math.sqrt(ke / 2.0)
    return (3.0 * c1 * math.sqrt(p / n) + 3.0 * c2 * math.sqrt(math.log(2.0 / delta) / n)) / scale


def subgaussian_tail(K: float, t: float) -> float:
    """Two-sided tail bound min(1, 2*exp(-t^2 / (2 K^2))) for 1-Lipschitz
    images of a K^2-sub-Gaussian variable."""
    K = _check_pos(K, "K")
    t = _check_nonneg(t, "t")
    return min(1.0, 2.0 * math.exp(-(t * t) / (2.0 * K * K)))


# CLI-facing dispatch: formula name -> (callable, required query fields)
BOUND_EVALUATORS: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "subgaussian": (subgaussian_radius, ("K", "sigma", "n", "delta")),
    "hoeffding": (hoeffding_radius, ("sigma", "C", "n", "delta")),
    "bernstein": (bernstein_radius, ("sigma", "C", "n", "delta")),
    "noniid_hoeffding": (noniid_hoeffding_radius, ("sigmas", "Cs", "n", "delta")),
    "noniid_bernstein": (noniid_bernstein_radius, ("sigmas", "C", "n", "delta")),
    "sturm_lln": (sturm_lln_bound, ("sigmas", "n")),
    "pac_sample_size": (pac_sample_size, ("D", "eps_target", "delta")),
    "pac_sample_size_bernstein": (
        pac_sample_size_bernstein,
        ("sigma2", "D", "eps_target", "delta"),
    ),
    "k_epsilon": (k_epsilon, ("kappa", "epsilon")),
    "cat_kappa": (cat_kappa_radius, ("A", "p", "kappa", "epsilon", "n", "delta")),
    "subgaussian_tail": (subgaussian_tail, ("K", "t")),
}

_OPTIONAL_FIELDS = {
    "bernstein": ("combine",),
    "noniid_bernstein": ("combine",),
    "pac_sample_size": ("c_pac",),
    "pac_sample_size_bernstein": ("c_pac",),
}


def evaluate_bound(name: str, query: dict) -> float | int:
    """Evaluate a named formula from a BoundQuery-style mapping."""
    if name not in BOUND_EVALUATORS:
        raise ValueError(f"unknown bound {name!r} (known: {sorted(BOUND_EVALUATORS)})")
    fn, required = BOUND_EVALUATORS[name]
    missing = [f for f in required if f not in query]
    if missing:
        raise ValueError(f"bound {name!r} needs fields {missing}")
    kwargs = {f: query[f] for f in required}
    for f in _OPTIONAL_FIELDS.get(name, ()):
        if f in query:
            kwargs[f] = query[f]
    return fn(**kwargs)
