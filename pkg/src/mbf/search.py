"""Binary search for the lexicographically first minimal true (LFMT) and the
lexicographically last maximal false (LLMF) vector of an unknown monotone
function, plus Gainanov's coordinate walk for comparison.

Windows are dyadic blocks of global cube indices. The bisection works because
in the precedence matrix every row of the upper half of a block has a 1 at the
block's midpoint-minus-one and every row of the lower half has a 0 there.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from .boolcube import check_index
from .knowledge import KnowledgeStore
from .oracle import MembershipOracle


class Kind(str, Enum):
    LFMT = "LFMT"
    LLMF = "LLMF"
    MIN_TRUE = "min_true"
    MAX_FALSE = "max_false"


class SearchWindow(NamedTuple):
    left: int
    right: int

    def check(self, n: int) -> None:
        check_index(self.left, n)
        check_index(self.right, n)
        if self.left > self.right:
            raise ValueError(f"empty window {self}")


@dataclass(frozen=True)
class SearchResult:
    position: int
    kind: Kind
    # 0 for the constant 0 (no true vector), 1 for the constant 1
    constant_detected: Optional[int] = None


def search_first_simple(oracle: MembershipOracle, n: int, *,
                        disambiguate: bool = False) -> SearchResult:
    """Plain bisection for the LFMT vector on the whole cube (n queries)."""
    left, right = 0, (1 << n) - 1
    while left < right:
        m = (left + right) // 2
        if oracle.query(m):
            right = m
        else:
            left = m + 1
    constant = None
    if disambiguate and not oracle.query(left):
        constant = 0
    return SearchResult(left, Kind.LFMT, constant)


def search_last_simple(oracle: MembershipOracle, n: int, *,
                       disambiguate: bool = False) -> SearchResult:
    """Plain bisection for the LLMF vector on the whole cube (n queries)."""
    left, right = 0, (1 << n) - 1
    while left < right:
        m = (left + right) // 2 + 1
        if oracle.query(m):
            right = m - 1
        else:
            left = m
    constant = None
    if disambiguate and oracle.query(right):
        constant = 1
    return SearchResult(right, Kind.LLMF, constant)


def search_first_ext(oracle: MembershipOracle, knowledge: KnowledgeStore,
                     window: SearchWindow, trace: Optional[list] = None) -> int:
    """LFMT position inside ``window``, querying only what knowledge cannot answer.

    Each queried false probe is registered as a clause; when some queried
    probe was true, the final position is registered as an implicant.
    ``trace`` (if given) receives ``(position, value, queried)`` per probe.
    """
    left, right = window
    found = False
    while left < right:
        m = (left + right) // 2
        value = knowledge.get_fun_value(m)
        queried = value is None
        if queried:
            value = oracle.query(m)
            if value:
                found = True
            else:
                knowledge.reg_clause(m)
        if trace is not None:
            trace.append((m, value, queried))
        if value:
            right = m
        else:
            left = m + 1
    if found:
        knowledge.reg_implicant(left)
    return left


def search_last_ext(oracle: MembershipOracle, knowledge: KnowledgeStore,
                    window: SearchWindow, trace: Optional[list] = None) -> int:
    """LLMF position inside ``window``; mirror image of :func:`search_first_ext`."""
    left, right = window
    found = False
    while left < right:
        m = (left + right) // 2 + 1
        value = knowledge.get_fun_value(m)
        queried = value is None
        if queried:
            value = oracle.query(m)
            if value:
                knowledge.reg_implicant(m)
            else:
                found = True
        if trace is not None:
            trace.append((m, value, queried))
        if value:
            right = m - 1
        else:
            left = m
    if found:
        knowledge.reg_clause(right)
    return right


def gainanov_descend(oracle: MembershipOracle, start: int, n: int) -> tuple[int, Kind]:
    """Walk from ``start`` to a minimal true or maximal false vector.

    Coordinates are tried from x_1 to x_n. From a true start each one-coordinate
    is cleared and kept cleared while the value stays 1; from a false start each
    zero-coordinate is set and kept set while the value stays 0.
    """
    check_index(start, n)
    current = start
    if oracle.query(start):
        for k in range(n):
            bit = 1 << (n - 1 - k)
            if current & bit and oracle.query(current ^ bit):
                current ^= bit
        return current, Kind.MIN_TRUE
    for k in range(n):
        bit = 1 << (n - 1 - k)
        if not current & bit and not oracle.query(current | bit):
            current |= bit
    return current, Kind.MAX_FALSE
