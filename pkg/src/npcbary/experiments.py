"""Monte Carlo harness: sampling from discrete distributions on the
implemented spaces, barycenter estimation per trial, and empirical
verification of the concentration bounds.

Ground truth (population barycenter, Frechet variance, support radius) is
computed exactly from the weighted support, never estimated from samples, so
coverage checks carry a single layer of Monte Carlo error.  Every trial draws
its own RNG stream from (seed, trial index); reports are therefore identical
regardless of scheduling, and two runs of the same config and seed produce
bitwise-identical distance lists.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import bounds
from .barycenter import (
    ConvergenceError,
    WeightedSample,
    as_fraction,
    empirical_barycenter,
    frechet_variance,
    inductive_barycenter,
    sample_diameter,
    weighted_barycenter,
)
from .spaces import (
    Euclidean,
    Hyperbolic,
    MetricTree,
    Space,
    SpaceError,
    SpdAffine,
    Sphere,
    point_from_json,
    space_from_json,
    space_to_json,
    spd_exp,
    sym_part,
    product_l1_dist,
)

# Statistical pass thresholds use a z = 3 normal-approximation slack:
# false-failure rate below 0.3% per check.
Z_SLACK = 3.0

# Solver tolerances: trial barycenters only need to resolve distances far
# below the bound radius; ground truths are held tighter.  On branching
# spaces the per-cycle displacement of the cyclic solver decays like
# 1/cycles (the iterate wobbles around the sticky limit), so the ground
# truth rule is relaxed there; stickiness keeps the actual error at the
# displacement scale.
TRIAL_TOL_REL = 1e-4
GROUND_TRUTH_TOL_REL = 1e-9
TREE_GROUND_TRUTH_TOL_REL = 1e-5

# Slack (relative to 1 + d1) absorbing the cyclic solver's distance-to-limit
# gap in empirical-barycenter Lipschitz checks; the stopping rule controls
# per-cycle displacement, which underestimates that gap in curved spaces.
LIPSCHITZ_SLACK_REL = 1e-4

ESTIMATORS = ("empirical", "inductive")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Per-trial generator derived from (seed, trial index)."""
    return np.random.default_rng([int(seed), int(trial)])


# ---------------------------------------------------------------------------
# distributions
# ---------------------------------------------------------------------------


@dataclass
class DistributionSpec:
    """A finitely supported probability measure on one space."""

    space: Space
    support: list
    weights: tuple[Fraction, ...] | None = None
    label: str = ""

    def __post_init__(self):
        self.support = list(self.support)
        sample = WeightedSample(self.support, self.weights)
        self.weights = sample.weights
        for i, p in enumerate(self.support):
            diag = self.space.validate_point(p)
            if diag is not None:
                raise SpaceError(f"support point {i}: {diag}")

    @property
    def n_atoms(self) -> int:
        return len(self.support)

    def resolved_weights(self) -> tuple[Fraction, ...]:
        if self.weights is not None:
            return self.weights
        n = self.n_atoms
        return tuple(Fraction(1, n) for _ in range(n))

    def cumulative_weights(self) -> np.ndarray:
        cum = np.cumsum([float(w) for w in self.resolved_weights()])
        cum[-1] = 1.0
        return cum

    def as_weighted_sample(self) -> WeightedSample:
        return WeightedSample(self.support, self.weights)

    def diameter(self) -> float:
        return sample_diameter(self.space, self.support)

    def to_json(self) -> dict:
        return {
            "support": [self.space.payload_to_json(p) for p in self.support],
            "weights": None
            if self.weights is None
            else [str(w) for w in self.weights],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, space: Space, obj: dict) -> "DistributionSpec":
        weights = obj.get("weights")
        return cls(
            space=space,
            support=[point_from_json(space, p) for p in obj["support"]],
            weights=None if weights is None else tuple(as_fraction(w) for w in weights),
            label=obj.get("label", ""),
        )


def population_barycenter(dist: DistributionSpec, tol: float | None = None):
    """Barycenter of the full weighted support.

    For spheres the support must sit inside an open ball of radius
    pi/(2*sqrt(kappa)) (certified by the best support atom as center), which
    guarantees a unique barycenter; otherwise an error names the violated
    ball condition.
    """
    space = dist.space
    if isinstance(space, Sphere):
        limit = math.pi / (2.0 * math.sqrt(space.kappa))
        radius = min(
            max(space.dist(c, x) for x in dist.support) for c in dist.support
        )
        if radius >= limit:
            raise SpaceError(
                "sphere support too spread: needs an open ball of radius "
                f"pi/(2*sqrt(kappa)) = {limit}, best support-centered radius is {radius}"
            )
    if tol is None:
        rel = TREE_GROUND_TRUTH_TOL_REL if isinstance(space, MetricTree) else GROUND_TRUTH_TOL_REL
        tol = rel * (1.0 + dist.diameter())
    return weighted_barycenter(space, dist.as_weighted_sample(), tol=tol).point


def sample(dist: DistributionSpec, rng: np.random.Generator):
    """One support point drawn with its weight as probability."""
    u = rng.random()
    idx = int(np.searchsorted(dist.cumulative_weights(), u, side="right"))
    return dist.support[idx]


def draw_indices(cum: np.ndarray, rng: np.random.Generator, size: int) -> np.ndarray:
    return np.searchsorted(cum, rng.random(size), side="right")


# ---------------------------------------------------------------------------
# experiment configuration and reports
# ---------------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    """One Monte Carlo experiment: a single distribution (i.i.d.) or n
    distributions sharing a barycenter (independent non-identically
    distributed), an estimator, a trial budget, and a named bound."""

    distributions: list[DistributionSpec]
    n: int
    estimator: str
    trials: int
    delta: float
    seed: int = 0
    tol: float | None = None
    bound: str = "hoeffding"
    bound_overrides: dict = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        if not self.distributions:
            raise ValueError("config needs at least one distribution")
        if len(self.distributions) not in (1, self.n):
            raise ValueError(
                f"need 1 distribution (i.i.d.) or n={self.n} (non-i.i.d.), "
                f"got {len(self.distributions)}"
            )
        if self.estimator not in ESTIMATORS:
            raise ValueError(f"estimator must be one of {ESTIMATORS}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must be in (0, 1)")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if int(self.seed) < 0:
            raise ValueError("seed must be a nonnegative integer")
        spaces = {d.space for d in self.distributions}
        if len(spaces) != 1:
            raise ValueError("all distributions must live on the same space")

    @property
    def space(self) -> Space:
        return self.distributions[0].space

    @property
    def iid(self) -> bool:
        return len(self.distributions) == 1

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "space": space_to_json(self.space),
            "distributions": [d.to_json() for d in self.distributions],
            "n": self.n,
            "estimator": self.estimator,
            "trials": self.trials,
            "delta": self.delta,
            "seed": self.seed,
            "tol": self.tol,
            "bound": {"name": self.bound, "overrides": self.bound_overrides},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentConfig":
        space = space_from_json(obj["space"])
        bound = obj.get("bound", {})
        if isinstance(bound, str):
            bound = {"name": bound}
        return cls(
            distributions=[
                DistributionSpec.from_json(space, d) for d in obj["distributions"]
            ],
            n=int(obj["n"]),
            estimator=obj.get("estimator", "empirical"),
            trials=int(obj["trials"]),
            delta=float(obj["delta"]),
            seed=int(obj.get("seed", 0)),
            tol=None if obj.get("tol") is None else float(obj["tol"]),
            bound=bound.get("name", "hoeffding"),
            bound_overrides=dict(bound.get("overrides", {})),
            label=obj.get("label", ""),
        )


@dataclass
class TrialReport:
    """Record of one run_concentration experiment."""

    label: str
    estimator: str
    bound_name: str
    n: int
    delta: float
    trials: int
    seed: int
    sigma: float
    C: float
    D: float
    bound_value: float
    distances: list[float]
    mean_sq_distance: float
    quantile: float        # empirical (1 - delta)-quantile of the distances
    coverage: float        # fraction of trials with distance <= bound
    passed: bool
    conjectural: bool      # empirical estimator on a branching space
    wall_clock_s: float

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["distances"] = list(self.distances)
        return out

    def csv_lines(self) -> list[str]:
        lines = ["trial,distance,covered"]
        for i, d in enumerate(self.distances):
            lines.append(f"{i},{d:.17g},{int(d <= self.bound_value)}")
        return lines

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(self.csv_lines()) + "\n")


def coverage_threshold(delta: float, trials: int) -> float:
    return 1.0 - delta - Z_SLACK * math.sqrt(delta * (1.0 - delta) / trials)


def _resolve_bound(
    name: str,
    overrides: dict,
    n: int,
    delta: float,
    sigma: float,
    C: float,
    sigmas: list[float],
    Cs: list[float],
) -> float:
    combine = overrides.get("combine", "max")
    if name == "hoeffding":
        value = bounds.hoeffding_radius(sigma, C, n, delta)
    elif name == "bernstein":
        value = bounds.bernstein_radius(sigma, C, n, delta, combine=combine)
    elif name == "subgaussian":
        K = float(overrides.get("K", 2.0 * C))
        value = bounds.subgaussian_radius(K, sigma, n, delta)
    elif name == "noniid_hoeffding":
        value = bounds.noniid_hoeffding_radius(sigmas, Cs, n, delta)
    elif name == "noniid_bernstein":
        value = bounds.noniid_bernstein_radius(sigmas, max(Cs), n, delta, combine=combine)
    else:
        raise ValueError(f"unknown coverage bound {name!r}")
    return value * float(overrides.get("scale", 1.0))


def _trial_estimator(config: ExperimentConfig, trial_tol: float) -> Callable:
    space = config.space
    if config.estimator == "inductive":
        return lambda pts: inductive_barycenter(space, pts)

    def run(pts):
        return empirical_barycenter(space, pts, tol=trial_tol).point

    return run


def _setup_ground_truth(config: ExperimentConfig):
    """Population barycenter, per-variable sigma/C, and the sampling tables."""
    space = config.space
    dists = config.distributions
    b_star = population_barycenter(dists[0])
    if not config.iid:
        check_tol = config.tol
        if check_tol is None:
            check_tol = TRIAL_TOL_REL * (1.0 + max(d.diameter() for d in dists))
        for i, d in enumerate(dists[1:], start=1):
            b_i = population_barycenter(d)
            gap = space.dist(b_star, b_i)
            if gap > check_tol:
                raise ValueError(
                    f"non-i.i.d. mode needs a shared barycenter: distribution {i} "
                    f"({d.label or 'unlabeled'}) is {gap} away from the first"
                )
    sigmas, Cs = [], []
    for d in dists:
        sigmas.append(math.sqrt(frechet_variance(space, d.as_weighted_sample(), b_star)))
        Cs.append(max(space.dist(b_star, x) for x in d.support))
    return b_star, sigmas, Cs


def run_concentration(config: ExperimentConfig) -> TrialReport:
    """Draw n points per trial, estimate the barycenter, and compare the
    distances d(T_n, b*) against the configured bound.

    The boundedness center x0 is taken to be b* itself and C the largest
    support distance from it, the choice that minimizes C.  A trial whose
    barycenter solve fails aborts the run with the trial index.
    """
    t0 = time.perf_counter()
    space = config.space
    dists = config.distributions
    b_star, sigmas, Cs = _setup_ground_truth(config)
    sigma = math.sqrt(sum(s * s for s in sigmas) / len(sigmas))
    C = max(Cs)
    D = max(d.diameter() for d in dists)

    bound_value = _resolve_bound(
        config.bound, config.bound_overrides, config.n, config.delta,
        sigma, C, sigmas, Cs,
    )

    trial_tol = config.tol
    if trial_tol is None:
        trial_tol = TRIAL_TOL_REL * (1.0 + D)
    estimate = _trial_estimator(config, trial_tol)

    cums = [d.cumulative_weights() for d in dists]
    supports = [d.support for d in dists]
    n = config.n
    distances = []
    for t in range(config.trials):
        rng = trial_rng(config.seed, t)
        u = rng.random(n)
        if config.iid:
            idx = np.searchsorted(cums[0], u, side="right")
            pts = [supports[0][i] for i in idx]
        else:
            pts = [
                supports[j][int(np.searchsorted(cums[j], u[j], side="right"))]
                for j in range(n)
            ]
        try:
            t_n = estimate(pts)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"trial {t}: {exc}", exc.point, exc.displacement, exc.iterations
            ) from exc
        distances.append(space.dist(t_n, b_star))

    arr = np.asarray(distances)
    coverage = float(np.mean(arr <= bound_value))
    passed = coverage >= coverage_threshold(config.delta, config.trials)
    conjectural = config.estimator == "empirical" and isinstance(space, MetricTree)
    return TrialReport(
        label=config.label,
        estimator=config.estimator,
        bound_name=config.bound,
        n=config.n,
        delta=config.delta,
        trials=config.trials,
        seed=config.seed,
        sigma=sigma,
        C=C,
        D=D,
        bound_value=bound_value,
        distances=distances,
        mean_sq_distance=float(np.mean(arr**2)),
        quantile=float(np.quantile(arr, 1.0 - config.delta)),
        coverage=coverage,
        passed=passed,
        conjectural=conjectural,
        wall_clock_s=time.perf_counter() - t0,
    )


@dataclass
class SturmReport:
    label: str
    n: int
    trials: int
    seed: int
    mean_sq_distance: float
    bound: float
    stderr: float
    passed: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_sturm_lln(config: ExperimentConfig) -> SturmReport:
    """Check E[d(S_n, b*)^2] <= (sigma_1^2 + ... + sigma_n^2)/n^2 for the
    inductive barycenter, up to three standard errors of the trial mean."""
    if config.estimator != "inductive":
        raise ValueError("the Sturm bound applies to the inductive estimator")
    report = run_concentration(config)
    _, sigmas, _ = _setup_ground_truth(config)
    if config.iid:
        sigmas = [sigmas[0]] * config.n
    bound = bounds.sturm_lln_bound(sigmas, config.n)
    sq = np.asarray(report.distances) ** 2
    stderr = float(np.std(sq, ddof=1) / math.sqrt(len(sq))) if len(sq) > 1 else 0.0
    mean_sq = float(np.mean(sq))
    return SturmReport(
        label=config.label,
        n=config.n,
        trials=config.trials,
        seed=config.seed,
        mean_sq_distance=mean_sq,
        bound=bound,
        stderr=stderr,
        passed=mean_sq <= bound + Z_SLACK * stderr,
    )


@dataclass
class WitnessRow:
    t: float
    empirical: float
    bound: float
    stderr: float
    ok: bool


@dataclass
class WitnessReport:
    C: float
    mean_f: float
    trials: int
    seed: int
    rows: list[WitnessRow]
    passed: bool

    def to_json(self) -> dict:
        return {
            "C": self.C,
            "mean_f": self.mean_f,
            "trials": self.trials,
            "seed": self.seed,
            "rows": [dict(r.__dict__) for r in self.rows],
            "passed": self.passed,
        }


def verify_subgaussian_witness(
    dist: DistributionSpec,
    x0,
    trials: int,
    t_grid: Sequence[float],
    seed: int = 0,
) -> WitnessReport:
    """Tail check for the witness function f = d(., x0): the support sits in
    B(x0, C), so f(X) must satisfy the 4C^2-sub-Gaussian two-sided tail
    2*exp(-t^2/(8 C^2)) up to three binomial standard errors.

    E[f(X)] is computed exactly from the weighted support.
    """
    space = dist.space
    dist.space.check_point(x0)
    atom_f = np.array([space.dist(x, x0) for x in dist.support])
    C = float(atom_f.max())
    weights = np.array([float(w) for w in dist.resolved_weights()])
    mean_f = float(weights @ atom_f)

    rng = trial_rng(seed, 0)
    idx = draw_indices(dist.cumulative_weights(), rng, trials)
    dev = np.abs(atom_f[idx] - mean_f)

    rows = []
    for t in t_grid:
        p_hat = float(np.mean(dev >= t))
        bound = bounds.subgaussian_tail(2.0 * C, t) if C > 0 else 0.0
        se = math.sqrt(p_hat * (1.0 - p_hat) / trials)
        rows.append(WitnessRow(float(t), p_hat, bound, se, p_hat <= bound + Z_SLACK * se))
    return WitnessReport(
        C=C,
        mean_f=mean_f,
        trials=trials,
        seed=seed,
        rows=rows,
        passed=all(r.ok for r in rows),
    )


@dataclass
class PacReport:
    m: int
    trials: int
    successes: int
    frequency: float
    eps_target: float
    delta: float
    D: float
    sigma2: float
    use_bernstein: bool
    c_pac: float
    seed: int
    passed: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def run_pac(
    space: Space,
    points: Sequence,
    eps_target: float,
    delta: float,
    trials: int,
    use_bernstein: bool = False,
    c_pac: float = 1.0,
    seed: int = 0,
    tol: float | None = None,
) -> PacReport:
    """Stochastic barycenter computation: per trial, draw m uniform indices,
    run the inductive recursion on the subsample, and count a success when
    the result lands within eps_target of the full-set barycenter."""
    n = len(points)
    if n < 1:
        raise SpaceError("need at least one point")
    D = sample_diameter(space, points)
    if tol is None:
        tol = GROUND_TRUTH_TOL_REL * (1.0 + D)
    b_star = empirical_barycenter(space, points, tol=tol).point
    sigma2 = frechet_variance(space, WeightedSample(list(points)), b_star)
    if D == 0.0:
        m = 1
    elif use_bernstein:
        m = bounds.pac_sample_size_bernstein(sigma2, D, eps_target, delta, c_pac)
    else:
        m = bounds.pac_sample_size(D, eps_target, delta, c_pac)

    successes = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        idx = rng.integers(0, n, size=m)
        sub = [points[i] for i in idx]
        b_m = inductive_barycenter(space, sub)
        if space.dist(b_m, b_star) <= eps_target:
            successes += 1
    freq = successes / trials
    threshold = 1.0 - delta - Z_SLACK * math.sqrt(delta * (1.0 - delta) / trials)
    return PacReport(
        m=m,
        trials=trials,
        successes=successes,
        frequency=freq,
        eps_target=eps_target,
        delta=delta,
        D=D,
        sigma2=sigma2,
        use_bernstein=use_bernstein,
        c_pac=c_pac,
        seed=seed,
        passed=freq >= threshold,
    )


# ---------------------------------------------------------------------------
# random instances and property suites
# ---------------------------------------------------------------------------


def random_point(space: Space, rng: np.random.Generator):
    """A bounded, well-conditioned random point of the given space."""
    if isinstance(space, Euclidean):
        return rng.standard_normal(space.dim)
    if isinstance(space, SpdAffine):
        S = sym_part(rng.uniform(-1.0, 1.0, (space.p, space.p)))
        return spd_exp(S)
    if isinstance(space, Hyperbolic):
        v = rng.standard_normal(space.dim)
        nrm = math.sqrt(float(v @ v))
        if nrm == 0.0:
            return space.base_point()
        return space.exp_from_base(v / nrm, rng.uniform(0.0, 2.0))
    if isinstance(space, Sphere):
        v = rng.standard_normal(space.dim)
        nrm = math.sqrt(float(v @ v))
        if nrm == 0.0:
            return space.base_point()
        cap = math.pi / (4.0 * math.sqrt(space.kappa))
        return space.exp_from_base(v / nrm, rng.uniform(0.0, cap))
    if isinstance(space, MetricTree):
        eid = int(rng.integers(len(space.edges)))
        return space.edge_point(eid, float(rng.uniform(0.0, space.edges[eid][2])))
    raise SpaceError(f"no random generator for space kind {space.kind!r}")


def random_tuple(space: Space, rng: np.random.Generator, n: int) -> list:
    return [random_point(space, rng) for _ in range(n)]


def perturbed_tuple(space: Space, rng: np.random.Generator, xs: Sequence, scale: float = 0.3) -> list:
    """Move each point a random fraction of the way toward a fresh random
    point; perturbation sizes vary per coordinate."""
    return [
        space.geodesic_point(x, random_point(space, rng), rng.uniform(0.0, scale))
        for x in xs
    ]


@dataclass
class PropertyCheck:
    name: str
    samples: int
    violations: int
    max_excess: float
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "violations": self.violations,
            "max_excess": self.max_excess,
            "witness": self.witness,
            "ok": self.ok,
        }


@dataclass
class PropertySuiteReport:
    space_kind: str
    seed: int
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "space": self.space_kind,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def npc_midpoint_excess(space: Space, x, y, z) -> tuple[float, float]:
    """Signed violation of the midpoint inequality
    d(z,m)^2 <= (d(z,x)^2 + d(z,y)^2)/2 - d(x,y)^2/4 at m the geodesic
    midpoint, plus the squared scale of the triple for tolerance scaling."""
    m = space.geodesic_point(x, y, 0.5)
    dzx = space.dist(z, x)
    dzy = space.dist(z, y)
    dxy = space.dist(x, y)
    lhs = space.dist(z, m) ** 2
    rhs = 0.5 * (dzx**2 + dzy**2) - 0.25 * dxy**2
    return lhs - rhs, dzx**2 + dzy**2 + dxy**2


def npc_property_suite(
    space: Space,
    samples: int = 10_000,
    seed: int = 0,
    tuple_pairs: int = 200,
    n_range: tuple[int, int] = (2, 10),
    solver_tol_rel: float | None = None,
) -> PropertySuiteReport:
    """Randomized verification of the structural properties that hold in
    non-positively curved spaces: the midpoint inequality, constant-speed
    geodesics, and the (1/n)-Lipschitz property of both barycenter maps under
    the L1 product metric.

    Positively curved spaces are rejected; the midpoint inequality is exactly
    what they fail.
    """
    if isinstance(space, Sphere):
        raise SpaceError("the NPC property suite does not apply to positively curved spaces")
    if solver_tol_rel is None:
        solver_tol_rel = 1e-4 if isinstance(space, MetricTree) else 1e-6
    rng = np.random.default_rng(seed)
    checks = []

    worst = -math.inf
    violations = 0
    witness = None
    for _ in range(samples):
        x, y, z = (random_point(space, rng) for _ in range(3))
        excess, sq_scale = npc_midpoint_excess(space, x, y, z)
        slack = 1e-8 * (1.0 + sq_scale)
        worst = max(worst, excess)
        if excess > slack:
            violations += 1
            if witness is None:
                witness = {
                    "x": space.payload_to_json(x),
                    "y": space.payload_to_json(y),
                    "z": space.payload_to_json(z),
                    "excess": excess,
                }
    checks.append(PropertyCheck("midpoint_inequality", samples, violations, worst, witness))

    worst = -math.inf
    violations = 0
    witness = None
    for _ in range(samples):
        x, y = random_point(space, rng), random_point(space, rng)
        s, t = rng.uniform(), rng.uniform()
        d = space.dist(x, y)
        err = abs(space.dist(space.geodesic_point(x, y, s), space.geodesic_point(x, y, t))
                  - abs(s - t) * d)
        excess = err - 1e-8 * (1.0 + d)
        worst = max(worst, excess)
        if excess > 0:
            violations += 1
            if witness is None:
                witness = {"x": space.payload_to_json(x), "y": space.payload_to_json(y),
                           "s": s, "t": t, "error": err}
    checks.append(PropertyCheck("constant_speed", samples, violations, worst, witness))

    for estimator in ("inductive", "empirical"):
        worst = -math.inf
        violations = 0
        witness = None
        for _ in range(tuple_pairs):
            n = int(rng.integers(n_range[0], n_range[1] + 1))
            xs = random_tuple(space, rng, n)
            ys = perturbed_tuple(space, rng, xs)
            d1 = product_l1_dist(space, xs, ys)
            if estimator == "inductive":
                tx = inductive_barycenter(space, xs)
                ty = inductive_barycenter(space, ys)
                slack = 1e-8 * (1.0 + d1)
            else:
                tol = solver_tol_rel * (1.0 + sample_diameter(space, list(xs) + list(ys)))
                tx = empirical_barycenter(space, xs, tol=tol).point
                ty = empirical_barycenter(space, ys, tol=tol).point
                slack = 2.0 * tol + LIPSCHITZ_SLACK_REL * (1.0 + d1)
            excess = space.dist(tx, ty) - d1 / n - slack
            worst = max(worst, excess)
            if excess > 0:
                violations += 1
                if witness is None:
                    witness = {"n": n, "d1": d1, "excess": excess}
        checks.append(
            PropertyCheck(f"lipschitz_{estimator}", tuple_pairs, violations, worst, witness)
        )

    return PropertySuiteReport(space_kind=space.kind, seed=seed, checks=checks)
