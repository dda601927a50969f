"""The n-cube, the precedence relation and the precedence matrix P_n.

Vectors of {0,1}^n are addressed by their serial number: the integer whose
n-bit binary form is a_1 a_2 ... a_n, with a_1 the most significant bit.

Truth tables are stored as a single Python int of 2^n bits. Position 0 of
the table (the value on the all-zero vector) is the *most significant* bit,
so that printing the int in binary gives the usual left-to-right vector of
values, and comparing two tables as integers is lexicographic comparison.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import ContractViolation, ResourceLimitError

MAX_INDEX_DIM = 63
DEFAULT_TABLE_CAP = 24
MATRIX_CAP = 12


def table_cap() -> int:
    """Largest n for which a truth table may be materialized (env MBF_TABLE_CAP)."""
    raw = os.environ.get("MBF_TABLE_CAP")
    if raw is None:
        return DEFAULT_TABLE_CAP
    try:
        return int(raw)
    except ValueError:
        raise ContractViolation(f"MBF_TABLE_CAP must be an integer, got {raw!r}") from None


def check_dim(n: int, *, table: bool = False) -> None:
    if not isinstance(n, int) or n < 0 or n > MAX_INDEX_DIM:
        raise ContractViolation(f"dimension must be an integer in [0, {MAX_INDEX_DIM}], got {n!r}")
    if table and n > table_cap():
        raise ResourceLimitError(f"n={n} exceeds the truth-table cap {table_cap()} (set MBF_TABLE_CAP)")


def check_index(i: int, n: int) -> None:
    if not 0 <= i < (1 << n):
        raise ContractViolation(f"vector index {i} out of range for n={n}")


def vector(i: int, n: int) -> tuple[int, ...]:
    """Coordinates (a_1, ..., a_n) of the vector with serial number i."""
    return tuple((i >> (n - 1 - k)) & 1 for k in range(n))


def serial(coords: Iterable[int]) -> int:
    out = 0
    for a in coords:
        out = (out << 1) | (1 if a else 0)
    return out


# -- precedence ---------------------------------------------------------------

def precedes_blockdescent(i: int, j: int, n: int) -> int:
    """Cell p[i, j] of P_n by descending through the 2x2 block structure.

    Each step keeps the quarter of P_m containing the cell: the lower-left
    quarter is the zero block, the other three are copies of P_{m-1}.
    """
    check_index(i, n)
    check_index(j, n)
    m = n
    while True:
        if i > j:
            return 0
        if i == j or m <= 1:
            return 1
        m -= 1
        half = (1 << m) - 1
        if i > half:
            i -= half + 1
        if j > half:
            j -= half + 1


def precedes_blockdescent_array(i, j, n: int) -> np.ndarray:
    """Vectorized block descent over arrays of row and column indices."""
    i, j = np.broadcast_arrays(np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
    i, j = i.copy(), j.copy()
    if i.size and (i.min() < 0 or j.min() < 0 or i.max() >= (1 << n) or j.max() >= (1 << n)):
        raise ContractViolation(f"vector index out of range for n={n}")
    result = np.zeros(i.shape, dtype=np.uint8)
    active = np.ones(i.shape, dtype=bool)
    m = n
    while active.any():
        below = active & (i > j)
        active &= ~below
        done = active & ((i == j) | (m <= 1))
        result[done] = 1
        active &= ~done
        m -= 1
        if m < 0:
            break
        half = (1 << m) - 1
        lower = active & (i > half)
        i[lower] -= half + 1
        right = active & (j > half)
        j[right] -= half + 1
    return result


def precedes_subset(i: int, j: int, n: int) -> int:
    """1 iff the vector i precedes j coordinatewise (bits of i are a subset of j's)."""
    check_index(i, n)
    check_index(j, n)
    return 1 if i & ~j == 0 else 0


precedes = precedes_subset


def build_matrix(n: int) -> np.ndarray:
    """Explicit P_n as a uint8 array, assembled from the block rule."""
    check_dim(n)
    if n > MATRIX_CAP:
        raise ResourceLimitError(f"explicit P_n limited to n <= {MATRIX_CAP}, got n={n}")
    p = np.ones((1, 1), dtype=np.uint8)
    for _ in range(n):
        z = np.zeros_like(p)
        p = np.block([[p, p], [z, p]])
    return p


# -- truth tables -------------------------------------------------------------

@dataclass(frozen=True, order=True, slots=True)
class TruthTable:
    """Vector of values of a Boolean function of n variables.

    Ordering between tables of the same n is lexicographic on the value vector.
    """

    n: int
    bits: int

    def __post_init__(self) -> None:
        check_dim(self.n, table=True)
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise ContractViolation(f"table value does not fit in 2^{self.n} bits")

    @property
    def size(self) -> int:
        return 1 << self.n

    def __len__(self) -> int:
        return 1 << self.n

    def __getitem__(self, pos: int) -> int:
        size = 1 << self.n
        if not 0 <= pos < size:
            raise IndexError(pos)
        return (self.bits >> (size - 1 - pos)) & 1

    def __iter__(self):
        return (int(c) for c in str(self))

    def __str__(self) -> str:
        return format(self.bits, f"0{1 << self.n}b")

    def __or__(self, other: TruthTable) -> TruthTable:
        _same_dim(self, other)
        return TruthTable(self.n, self.bits | other.bits)

    def __and__(self, other: TruthTable) -> TruthTable:
        _same_dim(self, other)
        return TruthTable(self.n, self.bits & other.bits)

    def to_hex(self) -> str:
        if self.n < 2:
            raise ContractViolation("hex form needs at least 4 table positions (n >= 2)")
        return "x" + format(self.bits, f"0{(1 << self.n) // 4}x")

    @classmethod
    def from_bitstring(cls, text: str) -> TruthTable:
        n = _dim_of_length(len(text))
        if any(c not in "01" for c in text):
            raise ContractViolation(f"table must contain only 0/1, got {text!r}")
        return cls(n, int(text, 2))

    @classmethod
    def from_hex(cls, text: str) -> TruthTable:
        digits = text[1:] if text[:1] in ("x", "X") else text
        if not digits:
            raise ContractViolation("empty hex table")
        try:
            value = int(digits, 16)
        except ValueError:
            raise ContractViolation(f"malformed hex table {text!r}") from None
        n = _dim_of_length(4 * len(digits))
        return cls(n, value)

    @classmethod
    def parse(cls, text: str) -> TruthTable:
        """Accept either a 0/1 bitstring or an 'x'-prefixed hex string."""
        text = text.strip()
        if text[:1] in ("x", "X"):
            return cls.from_hex(text)
        return cls.from_bitstring(text)

    @classmethod
    def constant(cls, n: int, value: int) -> TruthTable:
        return cls(n, _full(n) if value else 0)

    @classmethod
    def from_values(cls, values: Iterable[int]) -> TruthTable:
        return cls.from_bitstring("".join("1" if v else "0" for v in values))


def _same_dim(a: TruthTable, b: TruthTable) -> None:
    if a.n != b.n:
        raise ContractViolation(f"dimension mismatch: {a.n} vs {b.n}")


def _dim_of_length(length: int) -> int:
    if length <= 0 or length & (length - 1):
        raise ContractViolation(f"table length must be a power of two, got {length}")
    return length.bit_length() - 1


def _full(n: int) -> int:
    return (1 << (1 << n)) - 1


def row_bits(i: int, n: int) -> int:
    """Row r_i of P_n packed as a table int (position 0 most significant)."""
    t, w = 1, 1
    for k in range(n):
        # a set bit leaves the new leading half (coordinate = 0) all zero
        if not (i >> k) & 1:
            t = (t << w) | t
        w <<= 1
    return t


def column_bits(j: int, n: int) -> int:
    """Column j of P_n packed as a table int."""
    t, w = 1, 1
    for k in range(n):
        if (j >> k) & 1:
            t = (t << w) | t
        else:
            t <<= w
        w <<= 1
    return t


def row_of(i: int, n: int) -> TruthTable:
    """Row r_i of P_n, i.e. the table of the conjunction of the variables set in i."""
    check_dim(n, table=True)
    check_index(i, n)
    return TruthTable(n, row_bits(i, n))


def clause_table(j: int, n: int) -> TruthTable:
    """Negated column j of P_n, i.e. the table of the clause of the variables zero in j."""
    check_dim(n, table=True)
    check_index(j, n)
    return TruthTable(n, ~column_bits(j, n) & _full(n))


@dataclass(frozen=True)
class Conjunction:
    """Negation-free conjunction identified by its characteristic vector."""

    index: int
    n: int

    def __post_init__(self) -> None:
        check_dim(self.n)
        check_index(self.index, self.n)

    @property
    def variables(self) -> list[int]:
        return [k + 1 for k in range(self.n) if (self.index >> (self.n - 1 - k)) & 1]

    def table(self) -> TruthTable:
        return row_of(self.index, self.n)

    def __str__(self) -> str:
        names = self.variables
        return "".join(f"x{v}" for v in names) if names else "1"


@dataclass(frozen=True)
class Clause:
    """Negation-free disjunction identified by its anti-characteristic vector."""

    index: int
    n: int

    def __post_init__(self) -> None:
        check_dim(self.n)
        check_index(self.index, self.n)

    @property
    def variables(self) -> list[int]:
        return [k + 1 for k in range(self.n) if not (self.index >> (self.n - 1 - k)) & 1]

    def table(self) -> TruthTable:
        return clause_table(self.index, self.n)

    def __str__(self) -> str:
        names = self.variables
        return " v ".join(f"x{v}" for v in names) if names else "0"


# -- evaluation and structure -------------------------------------------------

def eval_from_minT(min_true: Iterable[int], k: int, n: int) -> int:
    """Value at k of the disjunction of the conjunctions named by min_true."""
    check_index(k, n)
    return 1 if any(i & ~k == 0 for i in min_true) else 0


def eval_from_maxF(max_false: Iterable[int], k: int, n: int) -> int:
    """Value at k of the conjunction of the clauses named by max_false."""
    check_index(k, n)
    return 0 if any(k & ~j == 0 for j in max_false) else 1


def table_from_minT(min_true: Iterable[int], n: int) -> TruthTable:
    check_dim(n, table=True)
    bits = 0
    for i in min_true:
        check_index(i, n)
        bits |= row_bits(i, n)
    return TruthTable(n, bits)


@lru_cache(maxsize=None)
def _low_side_masks(n: int) -> tuple[tuple[int, int], ...]:
    # For stride s, positions p with (p & s) == 0 sit at int bits b with (b & s) != 0.
    size = 1 << n
    ones = (1 << size) - 1
    masks = []
    for k in range(n):
        s = 1 << k
        pattern = ((1 << s) - 1) << s
        masks.append((s, pattern * ones // ((1 << (2 * s)) - 1)))
    return tuple(masks)


def is_monotone_bits(bits: int, n: int) -> bool:
    # Checking neighbours that differ in one coordinate suffices: any chain
    # alpha <= beta decomposes into single-coordinate steps, and <= on values
    # is transitive along the chain.
    for s, low in _low_side_masks(n):
        if ((bits & low) >> s) & ~bits:
            return False
    return True


def is_monotone(t: TruthTable) -> bool:
    return is_monotone_bits(t.bits, t.n)


def is_antichain(indices: Iterable[int]) -> bool:
    items = list(indices)
    for a in range(len(items)):
        for b in range(len(items)):
            if a != b and items[a] & ~items[b] == 0:
                return False
    return True


def _require_monotone(t: TruthTable) -> None:
    if not is_monotone(t):
        raise ContractViolation(f"table {t} is not monotone")


def brute_minT(t: TruthTable) -> set[int]:
    """Minimal true vectors by exhaustive scan."""
    _require_monotone(t)
    s, n = str(t), t.n
    out = set()
    for p, c in enumerate(s):
        if c == "1" and all(s[p ^ (1 << k)] == "0" for k in range(n) if p >> k & 1):
            out.add(p)
    return out


def brute_maxF(t: TruthTable) -> set[int]:
    """Maximal false vectors by exhaustive scan."""
    _require_monotone(t)
    s, n = str(t), t.n
    out = set()
    for p, c in enumerate(s):
        if c == "0" and all(s[p | (1 << k)] == "1" for k in range(n) if not p >> k & 1):
            out.add(p)
    return out
