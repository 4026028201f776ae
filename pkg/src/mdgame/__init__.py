"""Exact game values for vertex/edge deletion games on simple graphs."""

from .cgt import (
    Comparison,
    DyadicRational,
    EngineError,
    GameId,
    GameStore,
    MemoCapExceeded,
    Outcome,
    ValueName,
)
from .atomic import (
    AtomicCalculator,
    AtomicWeight,
    NotAllSmall,
    NotInteger,
    RemoteStarUnstable,
    StarOrder,
    two_ahead_bound,
)
from .graphs import DEFAULT_COMPONENT_LIMIT, Graph, TooLarge, canonical_form, connected_graphs
from .families import BadParams, FamilyKind, FamilySpec, build
from .rules import (
    EngineContext,
    GraphGameEngine,
    MoveList,
    Oracle,
    Player,
    Variant,
    base_moves,
    canonical_key,
    make_context,
    variant_moves,
)
from .verify import (
    CheckReport,
    CheckRow,
    CrossCheckFailure,
    OracleBudget,
    VerifyConfig,
    check_bias_props,
    check_farstar_paths,
    check_path_value_signs,
    check_table_aw,
    check_winners,
    run_all,
)

__all__ = [
    "AtomicCalculator",
    "AtomicWeight",
    "BadParams",
    "CheckReport",
    "CheckRow",
    "Comparison",
    "CrossCheckFailure",
    "DEFAULT_COMPONENT_LIMIT",
    "DyadicRational",
    "EngineContext",
    "EngineError",
    "FamilyKind",
    "FamilySpec",
    "GameId",
    "GameStore",
    "Graph",
    "GraphGameEngine",
    "MemoCapExceeded",
    "MoveList",
    "NotAllSmall",
    "NotInteger",
    "Oracle",
    "OracleBudget",
    "Outcome",
    "Player",
    "RemoteStarUnstable",
    "StarOrder",
    "TooLarge",
    "ValueName",
    "Variant",
    "VerifyConfig",
    "base_moves",
    "build",
    "canonical_form",
    "canonical_key",
    "check_bias_props",
    "check_farstar_paths",
    "check_path_value_signs",
    "check_table_aw",
    "check_winners",
    "connected_graphs",
    "make_context",
    "run_all",
    "two_ahead_bound",
    "variant_moves",
]
