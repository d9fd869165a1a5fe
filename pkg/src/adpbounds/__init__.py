"""Exact and approximate dynamic programming with curvature-based performance bounds."""

from .adp import (
    InducedStringFunction,
    VtgApproximator,
    induced_f,
    myopic_vtg,
    optimal_vtg,
    rollout_vtg,
    run_adp,
    table_vtg,
)
from .bounds import (
    CurvatureReport,
    beta,
    rollout_myopic_improvement,
    trajectory_elemental_curvatures,
    trajectory_forward_curvatures,
    verify_thm3,
)
from .control import (
    ControlInstance,
    brute_force_optimal,
    evaluate_trajectory,
    simulate_policy,
    solve_exact_dp,
    value_to_go,
)
from .greedy import GreedyTrace, brute_force_optimum, greedy_string, verify_greedy_bounds
from .instances import builtin_tiny, gen_random_instance, load_instance, save_instance
from .strings import StringFunction, concat, enumerate_strings, is_prefix

__version__ = "0.1.0"
