"""Partial knowledge of an unknown monotone function.

Known true vectors are kept as a set of pairwise incomparable implicant
indices (each index i stands for the conjunction whose table is row r_i),
known false vectors as incomparable clause indices. A position is known to
be 1 when some implicant index precedes it and known to be 0 when it
precedes some clause index.
"""

from __future__ import annotations

from bisect import insort
from typing import Optional

from .boolcube import check_dim, check_index
from .errors import InconsistentKnowledgeError


class KnowledgeStore:
    def __init__(self, n: int):
        check_dim(n)
        self.n = n
        self.tpi: list[int] = []
        self.tpc: list[int] = []
        self.peak_tpi = 0
        self.peak_tpc = 0

    def get_fun_value(self, pos: int) -> Optional[int]:
        """1 or 0 when derivable from the registered knowledge, else None."""
        for i in self.tpi:
            if i & ~pos == 0:
                return 1
        for j in self.tpc:
            if pos & ~j == 0:
                return 0
        return None

    def reg_implicant(self, idx: int) -> None:
        """Record that f(alpha_idx) = 1, keeping tpi an antichain."""
        check_index(idx, self.n)
        for i in self.tpi:
            if i & ~idx == 0:
                return
        for j in self.tpc:
            if idx & ~j == 0:
                raise InconsistentKnowledgeError(
                    f"implicant {idx} contradicts clause {j} (n={self.n})"
                )
        # c_idx absorbs c_i exactly when idx precedes i
        self.tpi = [i for i in self.tpi if idx & ~i != 0]
        insort(self.tpi, idx)
        self.peak_tpi = max(self.peak_tpi, len(self.tpi))

    def reg_clause(self, idx: int) -> None:
        """Record that f(alpha_idx) = 0, keeping tpc an antichain."""
        check_index(idx, self.n)
        for j in self.tpc:
            if idx & ~j == 0:
                return
        for i in self.tpi:
            if i & ~idx == 0:
                raise InconsistentKnowledgeError(
                    f"clause {idx} contradicts implicant {i} (n={self.n})"
                )
        self.tpc = [j for j in self.tpc if j & ~idx != 0]
        insort(self.tpc, idx)
        self.peak_tpc = max(self.peak_tpc, len(self.tpc))

    def register(self, idx: int, value: int) -> None:
        if value:
            self.reg_implicant(idx)
        else:
            self.reg_clause(idx)

    def unknown_positions(self) -> list[int]:
        """Positions whose value is not yet derivable (scans the whole cube)."""
        return [p for p in range(1 << self.n) if self.get_fun_value(p) is None]

    def is_complete(self) -> bool:
        return all(self.get_fun_value(p) is not None for p in range(1 << self.n))

    def finalize(self) -> tuple[set[int], set[int]]:
        return set(self.tpi), set(self.tpc)

    def __repr__(self) -> str:
        return f"KnowledgeStore(n={self.n}, tpi={self.tpi}, tpc={self.tpc})"
