"""Cipher-suite selection by weighted normalized scoring, plus a pipelined
security-processor dataflow simulator."""

from .catalog import (
    AlgorithmClass,
    AlgorithmMetrics,
    CatalogError,
    MetricCatalog,
    default_catalog,
    dump_catalog,
    load_catalog,
    parse_catalog,
    save_catalog,
)
from .scoring import EsiScorer, WeightVector
from .selection import (
    BudgetInfeasible,
    BudgetRelaxation,
    CompositionSpace,
    MetricBudget,
    SelectionReport,
    SuiteComposition,
    compose_space,
    esi,
    esi_threshold,
    filter_by_budget,
    select,
    select_in_space,
    suite_label,
    sweep,
)
from .simulator import (
    Direction,
    PacketStats,
    SimConfig,
    SimResult,
    Stage,
    StageEvent,
    Topology,
    TopologyComparison,
    compare_topologies,
    run_simulation,
)
from .table1 import reproduce_reference

__version__ = "0.1.0"

__all__ = [
    "AlgorithmClass",
    "AlgorithmMetrics",
    "BudgetInfeasible",
    "BudgetRelaxation",
    "CatalogError",
    "CompositionSpace",
    "Direction",
    "EsiScorer",
    "MetricBudget",
    "MetricCatalog",
    "PacketStats",
    "SelectionReport",
    "SimConfig",
    "SimResult",
    "Stage",
    "StageEvent",
    "SuiteComposition",
    "Topology",
    "TopologyComparison",
    "WeightVector",
    "compare_topologies",
    "compose_space",
    "default_catalog",
    "dump_catalog",
    "esi",
    "esi_threshold",
    "filter_by_budget",
    "load_catalog",
    "parse_catalog",
    "reproduce_reference",
    "run_simulation",
    "save_catalog",
    "select",
    "select_in_space",
    "suite_label",
    "sweep",
]
