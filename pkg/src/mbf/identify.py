"""Identification of an unknown monotone function by membership queries only.

The learner first locates the LFMT and LLMF positions of the whole cube, then
splits the table into halves g (first coordinate 0) and h (first coordinate
1). The LFMT of f belongs to g and the LLMF of f to h, so each half needs only
its other extreme vector searched before recursing. Recursion stops on
segments that the searches have already pinned down completely.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .boolcube import TruthTable, brute_maxF, brute_minT, check_dim, eval_from_minT
from .errors import (
    ContractViolation,
    InconsistentKnowledgeError,
    OracleInconsistencyError,
    RecoveryMismatchError,
)
from .generator import iter_partition_bits
from .knowledge import KnowledgeStore
from .oracle import MembershipOracle, TableOracle
from .search import SearchWindow, search_first_ext, search_last_ext

MAX_SWEEP_DIM = 6

# Published maximum / average query counts for the full sweep over M_n.
REFERENCE_QUERY_STATS = {
    1: (2, 1.66),
    2: (3, 2.66),
    3: (6, 4.70),
    4: (12, 8.95),
    5: (22, 16.76),
    6: (41, 30.65),
}


@dataclass
class IdentResult:
    min_true: set[int]
    max_false: set[int]
    queries: int
    peak_tpi: int = 0
    peak_tpc: int = 0

    @property
    def m(self) -> int:
        return len(self.min_true) + len(self.max_false)


@dataclass(frozen=True)
class IdFrame:
    left: int
    right: int
    lm1: int
    rm0: int


def _resolve(oracle: MembershipOracle, knowledge: KnowledgeStore, pos: int) -> int:
    value = knowledge.get_fun_value(pos)
    if value is None:
        value = oracle.query(pos)
        knowledge.register(pos, value)
    return value


def locate_extremes(oracle: MembershipOracle,
                    knowledge: KnowledgeStore) -> Optional[tuple[int, int]]:
    """Find the LFMT and LLMF positions of the whole cube.

    Returns None when the function turned out to be constant; the knowledge
    store then already holds the complete answer.
    """
    top = (1 << knowledge.n) - 1
    lm1 = search_first_ext(oracle, knowledge, SearchWindow(0, top))
    # a false value at the returned position means there is no true vector at all
    if _resolve(oracle, knowledge, lm1) == 0:
        return None
    rm0 = search_last_ext(oracle, knowledge, SearchWindow(0, top))
    if _resolve(oracle, knowledge, rm0) == 1:
        return None
    return lm1, rm0


def id_rec(frame: IdFrame, oracle: MembershipOracle, knowledge: KnowledgeStore) -> None:
    """Identify the segment described by ``frame``; results land in ``knowledge``."""
    _id(frame.left, frame.right, frame.lm1, frame.rm0, oracle, knowledge, 0)


def _id(left: int, right: int, lm1: int, rm0: int,
        oracle: MembershipOracle, knowledge: KnowledgeStore, depth: int) -> None:
    assert depth <= 2 * knowledge.n + 2, "recursion deeper than the halving bound"
    if right - left <= 3:
        return
    if lm1 > rm0:
        return  # segment is 0...01...1
    if lm1 + 1 == rm0:
        return  # segment is 0...010 1...1

    # Segments shaped (0,...,0,1)^k: one extra probe at the third position from
    # the right stops their query count from growing with the segment length.
    t = rm0 - 1
    if rm0 + 1 == right and knowledge.get_fun_value(t) is None:
        knowledge.register(t, oracle.query(t))

    m = (left + right) // 2
    if lm1 > m:
        _id(m + 1, right, lm1, rm0, oracle, knowledge, depth + 1)
        return
    if rm0 <= m:
        _id(left, m, lm1, rm0, oracle, knowledge, depth + 1)
        return
    p0 = search_last_ext(oracle, knowledge, SearchWindow(left, m))
    _id(left, m, lm1, p0, oracle, knowledge, depth + 1)
    p1 = search_first_ext(oracle, knowledge, SearchWindow(m + 1, right))
    _id(m + 1, right, p1, rm0, oracle, knowledge, depth + 1)


def identify(oracle: MembershipOracle, n: Optional[int] = None,
             knowledge: Optional[KnowledgeStore] = None) -> IdentResult:
    """Recover the minimal true and maximal false vectors of the oracle's function."""
    if n is None:
        n = oracle.n
    check_dim(n)
    if n != oracle.n:
        raise ContractViolation(f"oracle has n={oracle.n}, asked to identify with n={n}")
    if knowledge is None:
        knowledge = KnowledgeStore(n)
    start = oracle.queries_asked
    try:
        extremes = locate_extremes(oracle, knowledge)
        if extremes is not None:
            lm1, rm0 = extremes
            id_rec(IdFrame(0, (1 << n) - 1, lm1, rm0), oracle, knowledge)
    except InconsistentKnowledgeError as exc:
        raise OracleInconsistencyError(
            f"oracle answers are not monotone: {exc}; query log {oracle.log}"
        ) from exc
    min_true, max_false = knowledge.finalize()
    # Queries are only asked where knowledge is silent, so a lying oracle never
    # trips the store itself; it shows up as an answer the result disagrees with.
    for k, answer in oracle.log[len(oracle.log) - (oracle.queries_asked - start):]:
        if eval_from_minT(min_true, k, n) != answer:
            raise OracleInconsistencyError(
                f"answer f({k})={answer} disagrees with the identified function "
                f"minT={sorted(min_true)}; the oracle is not monotone"
            )
    return IdentResult(min_true, max_false, oracle.queries_asked - start,
                       knowledge.peak_tpi, knowledge.peak_tpc)


# -- exhaustive verification --------------------------------------------------

@dataclass
class SweepReport:
    n: int
    total: int = 0
    q_max: int = 0
    q_total: int = 0
    q_hist: Counter = field(default_factory=Counter)
    # floor(100 q / (n m)) per function, the constant 0 excluded
    ratio_hist: Counter = field(default_factory=Counter)
    peak_tpi_max: int = 0
    peak_tpc_max: int = 0
    # functions (constant 0 excluded) whose larger peak store size exceeded m,
    # and the largest such excess
    peak_over_m: int = 0
    peak_excess_max: int = 0
    settled_by_searches: int = 0
    bound_violations: list = field(default_factory=list)

    @property
    def q_ave(self) -> float:
        return self.q_total / self.total if self.total else 0.0

    @property
    def bound_ok(self) -> bool:
        return not self.bound_violations

    def reference_deviation(self) -> Optional[tuple[int, float]]:
        """(q_max difference, relative q_ave difference) against the published values."""
        ref = REFERENCE_QUERY_STATS.get(self.n)
        if ref is None:
            return None
        q_max_ref, q_ave_ref = ref
        return self.q_max - q_max_ref, (self.q_ave - q_ave_ref) / q_ave_ref

    def merge(self, other: SweepReport) -> None:
        self.total += other.total
        self.q_max = max(self.q_max, other.q_max)
        self.q_total += other.q_total
        self.q_hist.update(other.q_hist)
        self.ratio_hist.update(other.ratio_hist)
        self.peak_tpi_max = max(self.peak_tpi_max, other.peak_tpi_max)
        self.peak_tpc_max = max(self.peak_tpc_max, other.peak_tpc_max)
        self.peak_over_m += other.peak_over_m
        self.peak_excess_max = max(self.peak_excess_max, other.peak_excess_max)
        self.settled_by_searches += other.settled_by_searches
        self.bound_violations.extend(other.bound_violations)


def _sweep_one(report: SweepReport, table: TruthTable) -> None:
    n = table.n
    oracle = TableOracle(table)
    knowledge = KnowledgeStore(n)
    extremes = locate_extremes(oracle, knowledge)
    if knowledge.is_complete():
        report.settled_by_searches += 1
    if extremes is not None:
        id_rec(IdFrame(0, (1 << n) - 1, *extremes), oracle, knowledge)
    min_true, max_false = knowledge.finalize()
    if min_true != brute_minT(table) or max_false != brute_maxF(table):
        raise RecoveryMismatchError(
            f"function {table} (n={n}): got minT={sorted(min_true)} maxF={sorted(max_false)}"
        )
    q = oracle.queries_asked
    m = len(min_true) + len(max_false)
    report.total += 1
    report.q_total += q
    report.q_max = max(report.q_max, q)
    report.q_hist[q] += 1
    is_zero = table.bits == 0
    if is_zero:
        if q != n * m + 1:
            report.bound_violations.append((str(table), q, n * m))
    else:
        if q > n * m:
            report.bound_violations.append((str(table), q, n * m))
        if n * m:
            report.ratio_hist[100 * q // (n * m)] += 1
    report.peak_tpi_max = max(report.peak_tpi_max, knowledge.peak_tpi)
    report.peak_tpc_max = max(report.peak_tpc_max, knowledge.peak_tpc)
    excess = max(knowledge.peak_tpi, knowledge.peak_tpc) - m
    if excess > 0 and not is_zero:
        report.peak_over_m += 1
        report.peak_excess_max = max(report.peak_excess_max, excess)


def _sweep_rows(args: tuple[int, list[int]]) -> SweepReport:
    n, rows = args
    report = SweepReport(n)
    for bits in iter_partition_bits(n, rows):
        _sweep_one(report, TruthTable(n, bits))
    return report


def verify_sweep(n: int, threads: int = 1) -> SweepReport:
    """Identify every function of M_n behind a table oracle and check the result.

    Raises :class:`RecoveryMismatchError` on the first wrong answer. Query-bound
    violations are collected in the report rather than raised.
    """
    check_dim(n)
    if n > MAX_SWEEP_DIM:
        raise ContractViolation(f"full sweeps are limited to n <= {MAX_SWEEP_DIM}")
    width = 1 << n
    report = SweepReport(n)
    _sweep_one(report, TruthTable(n, 0))
    if threads <= 1 or n < 5:
        report.merge(_sweep_rows((n, list(range(width)))))
        return report
    parts = threads * 4
    chunks = [(n, list(range(k, width, parts))) for k in range(parts)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for partial in pool.map(_sweep_rows, chunks):
            report.merge(partial)
    return report
