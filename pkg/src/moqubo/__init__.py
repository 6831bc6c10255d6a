"""moqubo: multi-objective QUBO scaling toolkit.

Builds multi-objective QUBO problems, rescales their objectives (unit
variance from exact closed-form moments, or range normalization from
roof-dual bounds), solves equal-weight scalarizations, and scores the
resulting non-dominated solutions with an averaged hypervolume.
"""

from .core import (
    DegenerateObjectiveError,
    MultiObjectiveSet,
    QuboFormatError,
    QuboInstance,
    ScalingReport,
    evaluate,
    read_instance,
    read_objective_set,
    scalarize,
    symmetrize,
    write_instance,
    write_objective_set,
)
from .moments import (
    MomentSummary,
    mean_uniform,
    second_moment_uniform,
    standardize,
    std_uniform,
    summarize,
    variance_fast,
)
from .pareto import (
    FrontSet,
    HvProtocol,
    HypervolumeResult,
    SolutionRecord,
    averaged_hypervolume,
    build_protocol,
    dominates,
    hypervolume_exact,
    non_dominated_filter,
)
from .pipeline import (
    ExperimentPlan,
    ExperimentReport,
    run_experiment,
    scaling_summary,
)
from .problems import (
    Family,
    GeneratorConfig,
    Graph,
    barabasi_albert,
    gen_mc01,
    gen_mcb,
    gen_mcz,
    gen_subsum,
    generate,
)
from .roofdual import RangeEstimate, normalize_by_range, roof_dual_lower, roof_dual_range
from .solve import SolveConfig, SolveOutcome, anneal, brute_force, enumerate_objective

__version__ = "0.1.0"

__all__ = [
    "DegenerateObjectiveError",
    "ExperimentPlan",
    "ExperimentReport",
    "Family",
    "FrontSet",
    "GeneratorConfig",
    "Graph",
    "HvProtocol",
    "HypervolumeResult",
    "MomentSummary",
    "MultiObjectiveSet",
    "QuboFormatError",
    "QuboInstance",
    "RangeEstimate",
    "ScalingReport",
    "SolutionRecord",
    "SolveConfig",
    "SolveOutcome",
    "anneal",
    "averaged_hypervolume",
    "barabasi_albert",
    "brute_force",
    "build_protocol",
    "dominates",
    "enumerate_objective",
    "evaluate",
    "gen_mc01",
    "gen_mcb",
    "gen_mcz",
    "gen_subsum",
    "generate",
    "hypervolume_exact",
    "mean_uniform",
    "non_dominated_filter",
    "normalize_by_range",
    "read_instance",
    "read_objective_set",
    "roof_dual_lower",
    "roof_dual_range",
    "run_experiment",
    "scalarize",
    "scaling_summary",
    "second_moment_uniform",
    "standardize",
    "std_uniform",
    "summarize",
    "symmetrize",
    "variance_fast",
    "write_instance",
    "write_objective_set",
]
