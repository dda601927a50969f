"""Lexicographic generation of all monotone Boolean functions of n variables.

The generator walks rows of the precedence matrix: every monotone function
other than the constant 0 is the disjunction of the rows named by its
minimal true vectors, and a depth-first walk that only ORs in rows at
zero positions to the right of the last row used visits each such antichain
exactly once. Children are visited from the rightmost zero leftwards, which
makes the emission order lexicographic.

Tables are handled internally as ints (see :mod:`mbf.boolcube`); position p
of a table with N positions lives at int bit N-1-p.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .boolcube import TruthTable, check_dim, check_index, is_monotone, row_bits
from .errors import ContractViolation, UnsupportedScaleError

DEDEKIND_NUMBERS = {
    0: 2,
    1: 3,
    2: 6,
    3: 20,
    4: 168,
    5: 7581,
    6: 7828354,
    7: 2414682040998,
    8: 56130437228687557907788,
}
MAX_COUNT_DIM = 6
_ROW_CACHE_DIM = 12


@dataclass
class GenConfig:
    """Parameters of one generation run.

    ``final_row`` is the last row index the outermost loop visits (rows are
    taken from 2^n-1 downwards); ``None`` means row 0. With ``emit=None`` the
    run only counts.
    """

    n: int
    resume_from: Optional[TruthTable] = None
    final_row: Optional[int] = None
    emit: Optional[Callable[[TruthTable], object]] = None


@dataclass
class GenStats:
    count: int = 0
    max_recursion_depth: int = 0


class _Rows:
    """Rows of a relation matrix keyed by int bit index, filled on demand."""

    def __init__(self, width: int, row_at: Callable[[int], int], cache: bool):
        self.width = width
        self._row_at = row_at
        self._cache: Optional[list] = [None] * width if cache else None

    def __getitem__(self, b: int) -> int:
        cache = self._cache
        if cache is None:
            return self._row_at(self.width - 1 - b)
        row = cache[b]
        if row is None:
            row = cache[b] = self._row_at(self.width - 1 - b)
        return row


def _cube_rows(n: int) -> _Rows:
    return _Rows(1 << n, lambda p: row_bits(p, n), cache=n <= _ROW_CACHE_DIM)


def _push_children(stack: list, g: int, limit_mask: int, depth: int) -> None:
    # zero positions of g inside limit_mask, pushed so the rightmost position pops first
    z = ~g & limit_mask
    while z:
        b = z.bit_length() - 1
        stack.append((g, b, depth))
        z ^= 1 << b


def _walk(rows: _Rows, stack: list) -> Iterator[tuple[int, int]]:
    """Depth-first walk from a prepared stack; yields (table, depth) in order."""
    pop, push = stack.pop, stack.append
    while stack:
        g, b, depth = pop()
        g |= rows[b]
        yield g, depth
        z = ~g & ((1 << b) - 1)
        while z:
            hb = z.bit_length() - 1
            push((g, hb, depth + 1))
            z ^= 1 << hb


def _top_mask(width: int, final_row: Optional[int]) -> int:
    # int bits of positions final_row .. width-1
    if final_row is None:
        return (1 << width) - 1
    return (1 << (width - final_row)) - 1


def _start_stack(width: int, final_row: Optional[int]) -> list:
    stack: list = []
    _push_children(stack, 0, _top_mask(width, final_row), 1)
    return stack


def _resume_stack(rows: _Rows, h: int, final_row: Optional[int]) -> list:
    """Stack state of the walk immediately after the node that emitted h."""
    width = rows.width
    # Path to h: its minimal elements in increasing position order.
    path = []
    g = 0
    for p in range(width):
        b = width - 1 - p
        if (h >> b) & 1 and not (g >> b) & 1:
            path.append(b)
            g |= rows[b]
    if g != h:
        raise ContractViolation("resume point is not an up-set of the relation")

    stack: list = []
    if not path:
        _push_children(stack, 0, _top_mask(width, final_row), 1)
        return stack
    # Top level: unvisited rows left of the first path row.
    top = _top_mask(width, final_row) & ~((1 << (path[0] + 1)) - 1)
    _push_children(stack, 0, top, 1)
    g = 0
    for depth, (b, b_next) in enumerate(zip(path, path[1:]), start=1):
        g |= rows[b]
        # siblings of b_next still pending: zeros strictly between the two rows
        between = ((1 << b) - 1) & ~((1 << (b_next + 1)) - 1)
        _push_children(stack, g, between, depth + 1)
    _push_children(stack, h, (1 << path[-1]) - 1, len(path) + 1)
    return stack


def _check_final_row(n: int, final_row: Optional[int]) -> None:
    if final_row is not None:
        check_index(final_row, n)


def iter_monotone_bits(n: int, resume_from: Optional[TruthTable] = None,
                       final_row: Optional[int] = None) -> Iterator[int]:
    """Monotone tables of n variables as ints, in increasing order.

    Starts with the constant 0 unless resuming, in which case only tables
    strictly after ``resume_from`` are produced.
    """
    for bits, _ in _iter_with_depth(n, resume_from, final_row):
        yield bits


def _iter_with_depth(n, resume_from, final_row):
    check_dim(n, table=True)
    _check_final_row(n, final_row)
    rows = _cube_rows(n)
    if resume_from is None:
        yield 0, 0
        stack = _start_stack(1 << n, final_row)
    else:
        if resume_from.n != n:
            raise ContractViolation(f"resume table has n={resume_from.n}, expected {n}")
        if not is_monotone(resume_from):
            raise ContractViolation(f"resume table {resume_from} is not monotone")
        stack = _resume_stack(rows, resume_from.bits, final_row)
    yield from _walk(rows, stack)


def iter_monotone(n: int, resume_from: Optional[TruthTable] = None,
                  final_row: Optional[int] = None) -> Iterator[TruthTable]:
    for bits in iter_monotone_bits(n, resume_from, final_row):
        yield TruthTable(n, bits)


def gen_all(cfg: GenConfig) -> GenStats:
    """Run the generator described by ``cfg``, feeding each table to ``cfg.emit``."""
    stats = GenStats()
    emit = cfg.emit
    for bits, depth in _iter_with_depth(cfg.n, cfg.resume_from, cfg.final_row):
        stats.count += 1
        if depth > stats.max_recursion_depth:
            stats.max_recursion_depth = depth
        if emit is not None:
            emit(TruthTable(cfg.n, bits))
    return stats


def gen_resume(cfg: GenConfig) -> GenStats:
    if cfg.resume_from is None:
        raise ContractViolation("gen_resume needs resume_from")
    return gen_all(cfg)


def _count_from(rows: _Rows, stack: list) -> int:
    count = 0
    pop, push = stack.pop, stack.append
    while stack:
        g, b = pop()
        g |= rows[b]
        count += 1
        z = ~g & ((1 << b) - 1)
        while z:
            low = z & -z
            push((g, low.bit_length() - 1))
            z ^= low
    return count


def count_partition(n: int, start_rows: Iterable[int]) -> int:
    """Number of monotone functions whose leftmost one sits at one of ``start_rows``.

    The constant 0 has no leftmost one and is never counted here.
    """
    check_dim(n, table=True)
    width = 1 << n
    rows = _cube_rows(n)
    stack = []
    for i in set(start_rows):
        check_index(i, n)
        stack.append((0, width - 1 - i))
    return _count_from(rows, stack)


def iter_partition_bits(n: int, start_rows: Iterable[int]) -> Iterator[int]:
    """Tables whose leftmost one is at one of ``start_rows``, in increasing order."""
    check_dim(n, table=True)
    width = 1 << n
    mask = 0
    for i in start_rows:
        check_index(i, n)
        mask |= 1 << (width - 1 - i)
    stack: list = []
    _push_children(stack, 0, mask, 1)
    for bits, _ in _walk(_cube_rows(n), stack):
        yield bits


def _count_chunk(args: tuple[int, list[int]]) -> int:
    n, chunk = args
    return count_partition(n, chunk)


def dedekind_count(n: int, threads: int = 1) -> int:
    """|M_n| by exhaustive generation, split by outer-loop row."""
    check_dim(n)
    if n > MAX_COUNT_DIM:
        known = DEDEKIND_NUMBERS.get(n)
        hint = f"; the known value is {known}" if known is not None else ""
        raise UnsupportedScaleError(
            f"counting M_{n} by generation is out of reach (n <= {MAX_COUNT_DIM}){hint}"
        )
    width = 1 << n
    if threads <= 1 or n < 4:
        return 1 + count_partition(n, range(width))
    parts = max(1, threads * 4)
    chunks = [(n, list(range(k, width, parts))) for k in range(parts)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return 1 + sum(pool.map(_count_chunk, chunks))


def antichain_bound(n: int) -> int:
    """Size of the largest antichain of {0,1}^n."""
    return math.comb(n, n // 2)


# -- arbitrary finite posets --------------------------------------------------

def iter_upsets(size: int, relation: Callable[[int, int], bool]) -> Iterator[frozenset]:
    """All up-sets of a poset on 0..size-1, in the same lexicographic walk.

    ``relation(a, b)`` must be a partial order whose numbering is a linear
    extension (``relation(a, b)`` implies ``a <= b``). Each up-set is
    identified with the antichain of its minimal elements, so this also
    enumerates all antichains.
    """
    if size < 0:
        raise ContractViolation("poset size must be non-negative")

    def row_at(p: int) -> int:
        out = 0
        for q in range(size):
            if relation(p, q):
                if q < p:
                    raise ContractViolation("element numbering is not a linear extension")
                out |= 1 << (size - 1 - q)
        return out

    rows = _Rows(size, row_at, cache=True)
    yield frozenset()
    for bits, _ in _walk(rows, _start_stack(size, None)):
        yield frozenset(size - 1 - b for b in range(size) if (bits >> b) & 1)


def count_antichains(size: int, relation: Callable[[int, int], bool]) -> int:
    return sum(1 for _ in iter_upsets(size, relation))
