"""Exact split-reliability toolkit.

Split reliability of a graph with terminals s and t is the probability,
under independent edge failures, that the surviving edges leave exactly
two components with s in one and t in the other.  This package computes
such polynomials exactly, constructs the graph families with known
closed forms, enumerates connected (n, m) graphs up to isomorphism, and
decides with certificates whether an optimal (n, m) graph exists.
"""

from .errors import (
    BasisError,
    CeilingError,
    EdgeAbsentError,
    FamilyParameterError,
    GraphBuildError,
    GraphFormatError,
    PolynomialFormatError,
    SplitRelError,
    TerminalError,
)
from .graphs import (
    Multigraph,
    TerminalPair,
    automorphisms,
    build,
    canonical_key,
    components,
    contract_edge,
    delete_edge,
    from_weighted,
    is_connected,
    min_st_cut,
    shortest_path_length,
)
from .polynomials import (
    IntPolynomial,
    IntervalSign,
    NVector,
    SignTag,
    from_nvector,
    from_text,
    sign_on_unit_interval,
    to_nvector,
    to_text,
)
from .reliability import (
    DEFAULT_MAX_SLOTS,
    EngineCache,
    SplitResult,
    all_terminal_rel,
    k_terminal_rel,
    pendant_identity_check,
    split_rel_factoring,
    split_rel_oracle,
    split_reliability,
)
from .families import FamilySpec, closed_form_split, construct, expected_ncounts, parse_spec
from .enumeration import enumerate_graphs, enumerate_terminal_classes
from .optimality import (
    DominanceVerdict,
    OptimalityReport,
    compare_near_endpoints,
    dominates,
    expected_exists,
    find_optimal,
    verify_existence_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BasisError",
    "CeilingError",
    "DEFAULT_MAX_SLOTS",
    "DominanceVerdict",
    "EdgeAbsentError",
    "EngineCache",
    "FamilyParameterError",
    "FamilySpec",
    "GraphBuildError",
    "GraphFormatError",
    "IntPolynomial",
    "IntervalSign",
    "Multigraph",
    "NVector",
    "OptimalityReport",
    "PolynomialFormatError",
    "SignTag",
    "SplitRelError",
    "SplitResult",
    "TerminalError",
    "TerminalPair",
    "all_terminal_rel",
    "automorphisms",
    "build",
    "canonical_key",
    "closed_form_split",
    "compare_near_endpoints",
    "components",
    "construct",
    "contract_edge",
    "delete_edge",
    "dominates",
    "enumerate_graphs",
    "enumerate_terminal_classes",
    "expected_exists",
    "expected_ncounts",
    "find_optimal",
    "from_nvector",
    "from_text",
    "from_weighted",
    "is_connected",
    "k_terminal_rel",
    "min_st_cut",
    "parse_spec",
    "pendant_identity_check",
    "shortest_path_length",
    "sign_on_unit_interval",
    "split_rel_factoring",
    "split_rel_oracle",
    "split_reliability",
    "to_nvector",
    "to_text",
    "verify_existence_grid",
]
