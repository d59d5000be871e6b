"""Barycenters (Frechet means) of point sets in geodesic metric spaces.

Two estimators are provided.  The inductive barycenter walks the geodesic
recursion s_1 = x_1, s_k = gamma_{s_{k-1}, x_k}(1/k); it is order-dependent
but needs only geodesics.  The empirical barycenter extends the same
recursion over the periodic repetition of the input and stops once a full
cycle of n steps moves the iterate by at most ``tol`` (cyclic convergence to
the Frechet mean holds in any NPC space).

Weighted barycenters with exactly rational weights are reduced to the uniform
case by replicating each point according to its weight over the common
denominator.  A brute-force grid/candidate minimizer of the Frechet objective
is included as an independent oracle for small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .spaces import Euclidean, MetricTree, Space, SpaceError

DEFAULT_MAX_CYCLES = 100_000
REPLICATION_CAP = 1_000_000


class ConvergenceError(RuntimeError):
    """Cyclic iteration exhausted max_cycles without meeting the tolerance.

    Carries the last iterate and its final per-cycle displacement.
    """

    def __init__(self, message, point=None, displacement=None, iterations=None):
        super().__init__(message)
        self.point = point
        self.displacement = displacement
        self.iterations = iterations


@dataclass
class BarycenterResult:
    point: Any
    iterations: int          # geodesic updates performed
    final_displacement: float
    objective: float         # (1/n) sum_i d(x_i, point)^2

    def to_json(self, space: Space) -> dict:
        return {
            "point": space.payload_to_json(self.point),
            "iterations": self.iterations,
            "final_displacement": self.final_displacement,
            "objective": self.objective,
        }


@dataclass
class GridSearchResult:
    point: Any
    objective: float
    resolution: float | None
    n_candidates: int


def as_fraction(value) -> Fraction:
    """Exact rational from an int, a Fraction, a 'p/q' string, or a float
    (floats convert to their exact binary rational)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpaceError(f"weight {value!r} is not a rational number") from exc
    if isinstance(value, float):
        if not math.isfinite(value):
            raise SpaceError(f"weight {value} is not finite")
        return Fraction(value)
    raise SpaceError(f"cannot interpret {value!r} as a rational weight")


@dataclass
class WeightedSample:
    """A finitely supported measure: points plus exact rational weights
    summing to 1 (uniform when weights is None).  Zero weights are allowed
    and denote atoms that do not contribute."""

    points: list
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        self.points = list(self.points)
        if len(self.points) < 1:
            raise SpaceError("a weighted sample needs at least one point")
        if self.weights is not None:
            ws = tuple(as_fraction(w) for w in self.weights)
            if len(ws) != len(self.points):
                raise SpaceError(
                    f"{len(self.points)} points but {len(ws)} weights"
                )
            if any(w < 0 for w in ws):
                raise SpaceError("weights must be nonnegative")
            total = sum(ws)
            if total != 1:
                raise SpaceError(f"weights must sum to exactly 1, got {total}")
            if all(w == 0 for w in ws):
                raise SpaceError("at least one weight must be positive")
            self.weights = ws

    @property
    def n(self) -> int:
        return len(self.points)

    def resolved_weights(self) -> tuple[Fraction, ...]:
        if self.weights is not None:
            return self.weights
        n = len(self.points)
        return tuple(Fraction(1, n) for _ in self.points)


def sample_diameter(space: Space, points: Sequence, exact_cap: int = 600) -> float:
    """Diameter of a point set.  Exact (all pairs) up to ``exact_cap`` points;
    beyond that the 2 * max_i d(x_0, x_i) upper bound is used, which only
    loosens tolerances derived from it by at most a factor of two."""
    n = len(points)
    if n <= 1:
        return 0.0
    if n <= exact_cap:
        return max(
            space.dist(points[i], points[j])
            for i in range(n)
            for j in range(i + 1, n)
        )
    x0 = points[0]
    return 2.0 * max(space.dist(x0, p) for p in points[1:])


def default_tolerance(space: Space, points: Sequence) -> float:
    return 1e-8 * (1.0 + sample_diameter(space, points))


def frechet_objective(space: Space, points: Sequence, b) -> float:
    return sum(space.dist(x, b) ** 2 for x in points) / len(points)


def inductive_barycenter(space: Space, points: Sequence):
    """s_n from the exact recursion s_1 = x_1, s_k = gamma_{s_{k-1}, x_k}(1/k).

    Order-dependent by construction; in Euclidean space it reproduces the
    running arithmetic mean.
    """
    if len(points) < 1:
        raise SpaceError("need at least one point")
    s = points[0]
    for k, x in enumerate(points[1:], start=2):
        s = space.geodesic_point(s, x, 1.0 / k)
    return s


def empirical_barycenter(
    space: Space,
    points: Sequence,
    tol: float | None = None,
    max_cycles: int = DEFAULT_MAX_CYCLES,
) -> BarycenterResult:
    """Frechet mean by cyclic continuation of the inductive recursion.

    The input is extended periodically and the recursion continued; the
    iteration stops once a full cycle of n steps moves the iterate by at most
    ``tol``, measured d(s_{qn}, s_{(q-1)n}), for two cycles in a row.  A
    single qualifying cycle is not trusted: on branching spaces the cycle
    map can transiently reproduce its input exactly at a point far from the
    limit (consecutive cycle ends coincide, then the iteration moves on), so
    one small displacement does not certify stationarity.  Raises
    :class:`ConvergenceError` if ``max_cycles`` cycles do not reach ``tol``.
    """
    n = len(points)
    if n < 1:
        raise SpaceError("need at least one point")
    if tol is None:
        tol = default_tolerance(space, points)
    if not tol > 0:
        raise SpaceError("tol must be > 0")
    if n == 1:
        return BarycenterResult(points[0], 0, 0.0, 0.0)

    geodesic = space.geodesic_point
    s = points[0]
    k = 1
    # cycle 1 consumes x_2 .. x_n
    for i in range(1, n):
        k += 1
        s = geodesic(s, points[i], 1.0 / k)
    prev_end = s
    small_streak = 0
    disp = math.inf
    for _cycle in range(2, max_cycles + 1):
        for i in range(n):
            k += 1
            s = geodesic(s, points[i], 1.0 / k)
        disp = space.dist(s, prev_end)
        if disp <= tol:
            small_streak += 1
            if small_streak >= 2:
                return BarycenterResult(s, k - 1, disp, frechet_objective(space, points, s))
        else:
            small_streak = 0
        prev_end = s
    raise ConvergenceError(
        f"cyclic barycenter did not converge to {tol} within {max_cycles} cycles "
        f"(last cycle displacement {disp})",
        point=s,
        displacement=disp,
        iterations=k - 1,
    )


def replicate_by_weight(sample: WeightedSample, cap: int = REPLICATION_CAP) -> list:
    """Expand a rational-weight sample into an exact uniform multiset.

    Each point appears w_i * Q times, Q the least common denominator, and the
    copies are interleaved round-robin so the cyclic recursion never sees a
    long monotone run of one atom.
    """
    weights = sample.resolved_weights()
    q = 1
    for w in weights:
        q = q * w.denominator // math.gcd(q, w.denominator)
    if q > cap:
        raise SpaceError(
            f"weight denominators need {q} replicas, above the cap {cap}"
        )
    counts = [int(w * q) for w in weights]
    out = []
    remaining = counts[:]
    while len(out) < q:
        for i, r in enumerate(remaining):
            if r > 0:
                out.append(sample.points[i])
                remaining[i] = r - 1
    return out


def weighted_barycenter(
    space: Space,
    sample: WeightedSample,
    tol: float | None = None,
    max_cycles: int = DEFAULT_MAX_CYCLES,
    replication_cap: int = REPLICATION_CAP,
) -> BarycenterResult:
    """Barycenter of a rationally weighted sample via exact replication.

    For two points with weights (1-t, t) the result matches
    ``geodesic_point(x, y, t)`` within the solver tolerance.
    """
    replicated = replicate_by_weight(sample, cap=replication_cap)
    if tol is None:
        tol = default_tolerance(space, sample.points)
    return empirical_barycenter(space, replicated, tol=tol, max_cycles=max_cycles)


def frechet_variance(space: Space, sample: WeightedSample, b) -> float:
    """sum_i w_i d(x_i, b)^2, the Frechet functional of the sample at b."""
    weights = sample.resolved_weights()
    return float(
        sum(float(w) * space.dist(x, b) ** 2 for w, x in zip(weights, sample.points))
    )


def pairwise_variance_estimate(space: Space, points: Sequence) -> float:
    """(1/n^2) sum_{i,j} d(x_i, x_j)^2, a quadratic-cost upper bound for the
    Frechet variance of the empirical measure."""
    n = len(points)
    if n < 1:
        raise SpaceError("need at least one point")
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += space.dist(points[i], points[j]) ** 2
    return 2.0 * total / (n * n)


def brute_force_barycenter(
    space: Space,
    points: Sequence,
    grid_step: float | None = None,
    candidates: Sequence | None = None,
) -> GridSearchResult:
    """Exact argmin of the Frechet objective over a finite candidate set.

    Euclidean spaces use the closed-form mean; metric trees enumerate all
    vertices plus edge subdivisions at ``grid_step``; any other space needs a
    caller-supplied candidate set.  Intended as a test oracle on small
    instances, not as a production solver.
    """
    if len(points) < 1:
        raise SpaceError("need at least one point")
    if candidates is None:
        if isinstance(space, Euclidean):
            mean = np.mean(np.asarray(points, dtype=float), axis=0)
            return GridSearchResult(mean, frechet_objective(space, points, mean), 0.0, 1)
        if isinstance(space, MetricTree):
            if grid_step is None:
                raise SpaceError("metric tree grid search needs grid_step")
            candidates = space.grid_points(grid_step)
        else:
            raise SpaceError(
                f"{space.kind}: brute force needs an explicit candidate set"
            )
    else:
        candidates = list(candidates)
        if not candidates:
            raise SpaceError("candidate set is empty")
    best = None
    best_obj = math.inf
    for c in candidates:
        obj = frechet_objective(space, points, c)
        if obj < best_obj:
            best, best_obj = c, obj
    return GridSearchResult(best, best_obj, grid_step, len(candidates))
