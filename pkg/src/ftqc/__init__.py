"""Resource planner and empirical verifier for fault-tolerant quantum
computations: density-operator simulation, channel compilation, combined
failure-bound certification, concatenation-level planning, and
majority-vote analysis."""

from . import errors
from .densmat import (
    DensityMatrix,
    HermitianOperator,
    apply_unitary,
    effect_probability,
    make_state,
    maximally_mixed,
    partial_trace,
    pure_state,
    tensor,
    trace_norm,
)
from .channels import (
    Circuit,
    Gate,
    KrausChannel,
    NoiseModel,
    apply,
    circuit_from_json,
    compile_ideal,
    compile_noisy,
    compose,
    depolarizing,
    gate_count,
    unitary_channel,
)
from .kitaev import (
    OutcomeDistribution,
    OverallComputation,
    actual_failure_probability,
    basis_encoding,
    basis_readout,
    computation_from_json,
    ideal_failure_bound,
    outcome_distribution,
)
from .qcc import (
    InputRecord,
    LinkingMaps,
    MixingCheck,
    QccReport,
    alpha_over_inputs,
    alpha_random_search,
    certify_combined_bound,
    implementation_inaccuracy,
    implemented_channel,
    lift,
    lower,
    mix_error_state,
    mixing_inaccuracy_bound_check,
)
from .ftcalc import (
    FtParams,
    PlanResult,
    TradeoffPoint,
    circuit_failure,
    epsilon_budget,
    logical_gate_error,
    max_gate_error,
    required_alpha,
    required_levels,
    tradeoff_curve,
)
from .vote import VotePlan, majority_success, min_repetitions

__version__ = "0.1.0"

__all__ = [
    "errors",
    "DensityMatrix",
    "HermitianOperator",
    "apply_unitary",
    "effect_probability",
    "make_state",
    "maximally_mixed",
    "partial_trace",
    "pure_state",
    "tensor",
    "trace_norm",
    "Circuit",
    "Gate",
    "KrausChannel",
    "NoiseModel",
    "apply",
    "circuit_from_json",
    "compile_ideal",
    "compile_noisy",
    "compose",
    "depolarizing",
    "gate_count",
    "unitary_channel",
    "OutcomeDistribution",
    "OverallComputation",
    "actual_failure_probability",
    "basis_encoding",
    "basis_readout",
    "computation_from_json",
    "ideal_failure_bound",
    "outcome_distribution",
    "InputRecord",
    "LinkingMaps",
    "MixingCheck",
    "QccReport",
    "alpha_over_inputs",
    "alpha_random_search",
    "certify_combined_bound",
    "implementation_inaccuracy",
    "implemented_channel",
    "lift",
    "lower",
    "mix_error_state",
    "mixing_inaccuracy_bound_check",
    "FtParams",
    "PlanResult",
    "TradeoffPoint",
    "circuit_failure",
    "epsilon_budget",
    "logical_gate_error",
    "max_gate_error",
    "required_alpha",
    "required_levels",
    "tradeoff_curve",
    "VotePlan",
    "majority_success",
    "min_repetitions",
]
