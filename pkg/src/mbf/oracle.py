"""Membership oracles: the only channel a learner has to the hidden function."""

from __future__ import annotations

from typing import Iterable

from .boolcube import TruthTable, check_dim, check_index, is_antichain, is_monotone
from .errors import ContractViolation


class MembershipOracle:
    """Answers f(alpha_k) for a fixed hidden monotone f and counts the questions.

    Subclasses implement :meth:`_value`. Every call to :meth:`query` is
    counted and appended to :attr:`log` as ``(k, answer)``.
    """

    def __init__(self, n: int):
        check_dim(n)
        self.n = n
        self.queries_asked = 0
        self.log: list[tuple[int, int]] = []

    def _value(self, k: int) -> int:
        raise NotImplementedError

    def query(self, k: int) -> int:
        check_index(k, self.n)
        answer = self._value(k)
        self.queries_asked += 1
        self.log.append((k, answer))
        return answer

    def reset_count(self) -> None:
        self.queries_asked = 0
        self.log.clear()


class TableOracle(MembershipOracle):
    def __init__(self, table: TruthTable):
        if not is_monotone(table):
            raise ContractViolation(f"table {table} is not monotone")
        super().__init__(table.n)
        self.table = table
        self._bits = table.bits
        self._top = (1 << table.n) - 1

    def _value(self, k: int) -> int:
        return (self._bits >> (self._top - k)) & 1


class MinTOracle(MembershipOracle):
    """Oracle for the disjunction of the conjunctions named by ``min_true``.

    No truth table is built, so n may go well beyond the table cap.
    """

    def __init__(self, min_true: Iterable[int], n: int):
        super().__init__(n)
        items = sorted(set(min_true))
        for i in items:
            check_index(i, n)
        if not is_antichain(items):
            raise ContractViolation(f"{items} is not an antichain")
        self.min_true = tuple(items)

    def _value(self, k: int) -> int:
        for i in self.min_true:
            if i & ~k == 0:
                return 1
        return 0
