"""Sterboul-Deming / Koenig-Egervary vertex partition of graphs."""

from .decomposition import (
    GallaiEdmondsDecomposition,
    ReducedForm,
    SdKePartition,
    algorithm1_sdke,
    gallai_edmonds,
    hall_tutte_sd_with_pm,
    is_konig_egervary,
    is_sd_graph,
    larson_sdke,
    max_critical_independent_set,
    reduce,
    reduce_matching,
    sdke,
)
from .errors import BudgetExceeded, GraphParseError, PreconditionError
from .graph import Graph, parse_graph
from .matching import Matching, maximum_matching
from .structures import certify_vertex, sd_oracle, verify_certificate

__all__ = [
    "BudgetExceeded",
    "GallaiEdmondsDecomposition",
    "Graph",
    "GraphParseError",
    "Matching",
    "PreconditionError",
    "ReducedForm",
    "SdKePartition",
    "algorithm1_sdke",
    "certify_vertex",
    "gallai_edmonds",
    "hall_tutte_sd_with_pm",
    "is_konig_egervary",
    "is_sd_graph",
    "larson_sdke",
    "max_critical_independent_set",
    "maximum_matching",
    "parse_graph",
    "reduce",
    "reduce_matching",
    "sd_oracle",
    "sdke",
    "verify_certificate",
]
