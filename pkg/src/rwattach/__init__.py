"""Random-walk attachment graph growth: simulation, urn oracles and drift bounds."""

from .bounds import (
    drift_lower_bernoulli,
    drift_upper_bernoulli,
    leaf_increment_bound,
    leaf_increment_bound_from_mean,
    threshold_lower_root,
    threshold_upper,
)
from .coloring import KColoring, TwoColoring, bipartite_2color, directed_kcolor, kcolor_grow_step
from .config import ConfigError, ExperimentConfig, parse_config
from .core import BACKEND
from .graph import DirectedGraph, Graph, GraphError, InvariantViolation, build_g0
from .growth import BernoulliWalk, FixedWalk, Preferential, StepTrace, Uniform, grow, select_target
from .rng import Xoshiro256, derive_replica_seed
from .runner import run_ensemble, run_urn
from .stats import aggregate, checkpoint_schedule, nonleaf_mean_degree, two_sample_ks
from .urns import UrnRule, UrnState, exact_polya_pmf, urn_run, urn_step

__version__ = "0.1.0"
