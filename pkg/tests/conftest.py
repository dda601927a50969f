from __future__ import annotations

import itertools
import re
from functools import lru_cache

import pytest

from mbf.boolcube import TruthTable


def coords(k: int, n: int) -> tuple[int, ...]:
    return tuple(int(c) for c in format(k, f"0{n}b")) if n else ()


@lru_cache(maxsize=None)
def monotone_by_concatenation(n: int) -> tuple[str, ...]:
    """All monotone tables of n variables as bitstrings, sorted.

    Built from the fact that f = g h (g the half with x_1 = 0) is monotone iff
    g and h are monotone and g <= h pointwise.
    """
    if n == 0:
        return ("0", "1")
    lower = monotone_by_concatenation(n - 1)
    out = [
        g + h
        for g in lower
        for h in lower
        if all(a <= b for a, b in zip(g, h))
    ]
    return tuple(sorted(out))


def monotone_tables(n: int) -> list[TruthTable]:
    return [TruthTable.from_bitstring(s) for s in monotone_by_concatenation(n)]


def min_true_by_pairs(bits: str, n: int) -> set[int]:
    """Minimal true vectors by comparing every pair of coordinate tuples."""
    vecs = [coords(k, n) for k in range(1 << n)]
    true = [k for k in range(1 << n) if bits[k] == "1"]
    return {
        k for k in true
        if not any(o != k and all(a <= b for a, b in zip(vecs[o], vecs[k])) for o in true)
    }


def max_false_by_pairs(bits: str, n: int) -> set[int]:
    vecs = [coords(k, n) for k in range(1 << n)]
    false = [k for k in range(1 << n) if bits[k] == "0"]
    return {
        k for k in false
        if not any(o != k and all(a <= b for a, b in zip(vecs[k], vecs[o])) for o in false)
    }


def all_tables(n: int):
    for values in itertools.product("01", repeat=1 << n):
        yield "".join(values)


# -- acceptance reporting -----------------------------------------------------

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::", 1)[1]] = report.outcome.upper()
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance[report.nodeid.split("::", 1)[1]] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    def natural(item):
        return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", item[0])]

    for name, outcome in sorted(_acceptance.items(), key=natural):
        terminalreporter.write_line(f"{outcome:8s} {name}")


@pytest.fixture
def table():
    return TruthTable.parse
