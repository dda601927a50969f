"""Monotone Boolean functions of n variables.

Precedence matrix P_n, lexicographic generation of all monotone functions,
binary search for extreme minimal-true / maximal-false vectors, and
identification of an unknown function by membership queries.
"""

from .boolcube import (
    Clause,
    Conjunction,
    TruthTable,
    brute_maxF,
    brute_minT,
    build_matrix,
    clause_table,
    eval_from_maxF,
    eval_from_minT,
    is_monotone,
    precedes,
    precedes_blockdescent,
    precedes_subset,
    row_of,
)
from .errors import (
    ContractViolation,
    InconsistentKnowledgeError,
    MBFError,
    OracleInconsistencyError,
    RecoveryMismatchError,
    ResourceLimitError,
    UnsupportedScaleError,
)
from .generator import GenConfig, GenStats, count_partition, dedekind_count, gen_all, gen_resume, iter_monotone
from .identify import IdentResult, identify, verify_sweep
from .knowledge import KnowledgeStore
from .oracle import MembershipOracle, MinTOracle, TableOracle
from .search import (
    SearchResult,
    SearchWindow,
    gainanov_descend,
    search_first_ext,
    search_first_simple,
    search_last_ext,
    search_last_simple,
)

__version__ = "0.1.0"
