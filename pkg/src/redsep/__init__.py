"""Finite models for set operations indexed by sequence trees.

The engine works over explicit finite topological spaces.  Subsets are
bitmasks, classes of subsets are extensional, and every advertised law is
checkable by enumeration: evaluation of tree-indexed operations and their
duals, kernels and algebras of point maps, diagonal products, reduction and
separation of classes, and constructive transfer of those properties along
maps.  The suites module quantifies the laws over a bounded catalog and
stores replayable counterexamples where a hypothesis is deliberately
dropped.
"""

from .catalog import all_bases, all_sequences, all_tables, all_topologies
from .classes import (
    CheckResult,
    Ladder,
    LadderLevel,
    ReductionWitness,
    SeparationWitness,
    SetClass,
    borel_ladder,
    check_reduction,
    check_separation,
    complement_class,
    delta_class,
    generate_class,
    reduction_to_separation,
    restrict_class,
)
from .errors import EngineError, InputError, ModeError, PreconditionError, ResourceError
from .hausdorff import (
    MODES,
    PREFIX,
    RANGE,
    Base,
    IndexedFamily,
    canonical_base,
    completion,
    decreasing_replacement,
    dual_eval,
    dual_evaluate,
    evaluate,
    index_to_seq,
    is_decreasing,
    seq_to_index,
)
from .maps import (
    DirectedImageReport,
    MapProps,
    PointMap,
    alg_contains,
    alg_enumerate,
    diagonal_product,
    directed_image_check,
    image_class,
    kernel,
    map_properties,
    preimage_class,
)
from .masks import SubsetMask
from .serialize import canonical_json
from .spaces import (
    FinSpace,
    Partition,
    ProductCodec,
    closed_sets,
    components,
    generate_topology,
    product,
    subspace,
    zero_sets,
)
from .suites import (
    Bounds,
    SuiteResult,
    replay_finding,
    run_suite,
    suite_defaults,
    suite_description,
    suite_names,
)
from .transfer import (
    REDUCTION,
    SEPARATION,
    GapReport,
    HypothesisReport,
    PairTrace,
    TransferReport,
    ZeroWitnessReport,
    pull_back_witnesses,
    transfer_property,
    zero_trace_gap,
    zero_witness_map,
)

__version__ = "0.1.0"

__all__ = [
    "Base",
    "Bounds",
    "CheckResult",
    "DirectedImageReport",
    "EngineError",
    "FinSpace",
    "GapReport",
    "HypothesisReport",
    "IndexedFamily",
    "InputError",
    "Ladder",
    "LadderLevel",
    "MODES",
    "MapProps",
    "ModeError",
    "PREFIX",
    "PairTrace",
    "Partition",
    "PointMap",
    "PreconditionError",
    "ProductCodec",
    "RANGE",
    "REDUCTION",
    "ReductionWitness",
    "ResourceError",
    "SEPARATION",
    "SeparationWitness",
    "SetClass",
    "SubsetMask",
    "SuiteResult",
    "TransferReport",
    "ZeroWitnessReport",
    "alg_contains",
    "alg_enumerate",
    "all_bases",
    "all_sequences",
    "all_tables",
    "all_topologies",
    "borel_ladder",
    "canonical_base",
    "canonical_json",
    "check_reduction",
    "check_separation",
    "closed_sets",
    "complement_class",
    "completion",
    "components",
    "decreasing_replacement",
    "delta_class",
    "diagonal_product",
    "directed_image_check",
    "dual_eval",
    "dual_evaluate",
    "evaluate",
    "generate_class",
    "generate_topology",
    "image_class",
    "index_to_seq",
    "is_decreasing",
    "kernel",
    "map_properties",
    "preimage_class",
    "product",
    "pull_back_witnesses",
    "reduction_to_separation",
    "replay_finding",
    "restrict_class",
    "run_suite",
    "seq_to_index",
    "subspace",
    "suite_defaults",
    "suite_description",
    "suite_names",
    "transfer_property",
    "zero_sets",
    "zero_trace_gap",
    "zero_witness_map",
]
