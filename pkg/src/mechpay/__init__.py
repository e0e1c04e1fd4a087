"""Payment synthesis and trade-off analysis for tabulated mechanisms.

Given a finite allocation mechanism in tabulated form, this package
decides whether per-agent payments can make it envy-free, truthful, or
both at once, synthesizes such payments when they exist, quantifies the
smallest constraint relaxation when they do not, and handles per-agent
trusted/untrusted constraint selections.  The common engine is a single
negative-cycle detector over a constraint graph, with a compiled kernel
and a pure-Python fallback.
"""

from .cycles import (
    EfficiencyViolation,
    ImplementabilityReport,
    MonotonicityViolation,
    WitnessCycle,
    classify,
    cycle_monotonicity_check,
    find_negative_cycle,
    local_efficiency_check,
)
from .fixtures import (
    EXAMPLES,
    clarke_payments,
    gen_example,
    single_item_loser_compensation_payments,
    single_item_min_vcg_payments,
    welfare_max_allocation,
)
from .graph import (
    EF,
    IC,
    Arc,
    ConstraintGraph,
    Vertex,
    build_graph,
    export_arcs,
    shift_graph,
)
from .kernel import backend_name
from .model import (
    DEFAULT_TOLERANCE,
    AllocationTable,
    Instance,
    InstanceFormatError,
    InstanceValidationError,
    ValuationType,
    load_instance,
    make_instance,
    profile_space,
    serialize_instance,
    validate_instance,
    value_of,
)
from .partition import (
    PartitionPreconditionError,
    PartitionReport,
    PrunedNegativeCycleError,
    TrustPartition,
    partition_payments,
    prune_graph,
)
from .payments import (
    NegativeCycleError,
    PaymentCoverageError,
    PaymentTable,
    ViolationReport,
    compute_payments,
    verify_payments,
)
from .tradeoff import (
    AxisInfeasibleError,
    Frontier,
    FrontierVertex,
    approx_payments,
    is_cycle_correcting,
    min_shift_one_sided,
    pareto_frontier,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationTable",
    "Arc",
    "AxisInfeasibleError",
    "ConstraintGraph",
    "DEFAULT_TOLERANCE",
    "EF",
    "EXAMPLES",
    "EfficiencyViolation",
    "Frontier",
    "FrontierVertex",
    "IC",
    "ImplementabilityReport",
    "Instance",
    "InstanceFormatError",
    "InstanceValidationError",
    "MonotonicityViolation",
    "NegativeCycleError",
    "PartitionPreconditionError",
    "PartitionReport",
    "PaymentCoverageError",
    "PaymentTable",
    "PrunedNegativeCycleError",
    "TrustPartition",
    "ValuationType",
    "Vertex",
    "ViolationReport",
    "WitnessCycle",
    "approx_payments",
    "backend_name",
    "build_graph",
    "clarke_payments",
    "classify",
    "compute_payments",
    "cycle_monotonicity_check",
    "export_arcs",
    "find_negative_cycle",
    "gen_example",
    "is_cycle_correcting",
    "load_instance",
    "local_efficiency_check",
    "make_instance",
    "min_shift_one_sided",
    "pareto_frontier",
    "partition_payments",
    "profile_space",
    "prune_graph",
    "serialize_instance",
    "shift_graph",
    "single_item_loser_compensation_payments",
    "single_item_min_vcg_payments",
    "validate_instance",
    "value_of",
    "verify_payments",
    "welfare_max_allocation",
]
