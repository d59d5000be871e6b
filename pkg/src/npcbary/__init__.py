"""Barycenters in non-positively curved and CAT(k) metric spaces, plus a
Monte Carlo harness for finite-sample concentration bounds."""

from .spaces import (
    AntipodalError,
    Euclidean,
    Hyperbolic,
    MetricTree,
    Space,
    SpaceError,
    SpdAffine,
    Sphere,
    TreePoint,
    point_from_json,
    point_to_json,
    product_l1_dist,
    space_from_json,
    space_to_json,
)
from .barycenter import (
    BarycenterResult,
    ConvergenceError,
    GridSearchResult,
    WeightedSample,
    brute_force_barycenter,
    empirical_barycenter,
    frechet_variance,
    inductive_barycenter,
    pairwise_variance_estimate,
    weighted_barycenter,
)
from .bounds import (
    bernstein_radius,
    cat_kappa_radius,
    hoeffding_radius,
    k_epsilon,
    noniid_bernstein_radius,
    noniid_hoeffding_radius,
    pac_sample_size,
    pac_sample_size_bernstein,
    sturm_lln_bound,
    subgaussian_radius,
    subgaussian_tail,
)
from .experiments import (
    DistributionSpec,
    ExperimentConfig,
    TrialReport,
    npc_property_suite,
    population_barycenter,
    run_concentration,
    run_pac,
    sample,
    verify_sturm_lln,
    verify_subgaussian_witness,
)

__version__ = "0.1.0"

__all__ = [
    "AntipodalError",
    "BarycenterResult",
    "ConvergenceError",
    "DistributionSpec",
    "Euclidean",
    "ExperimentConfig",
    "GridSearchResult",
    "Hyperbolic",
    "MetricTree",
    "Space",
    "SpaceError",
    "SpdAffine",
    "Sphere",
    "TreePoint",
    "TrialReport",
    "WeightedSample",
    "bernstein_radius",
    "brute_force_barycenter",
    "cat_kappa_radius",
    "empirical_barycenter",
    "frechet_variance",
    "hoeffding_radius",
    "inductive_barycenter",
    "k_epsilon",
    "noniid_bernstein_radius",
    "noniid_hoeffding_radius",
    "npc_property_suite",
    "pac_sample_size",
    "pac_sample_size_bernstein",
    "pairwise_variance_estimate",
    "point_from_json",
    "point_to_json",
    "population_barycenter",
    "product_l1_dist",
    "run_concentration",
    "run_pac",
    "sample",
    "space_from_json",
    "space_to_json",
    "sturm_lln_bound",
    "subgaussian_radius",
    "subgaussian_tail",
    "verify_sturm_lln",
    "verify_subgaussian_witness",
    "weighted_barycenter",
]
