import pytest

from mbf.boolcube import TruthTable, brute_maxF, brute_minT
from mbf.knowledge import KnowledgeStore
from mbf.oracle import TableOracle
from mbf.search import (
    Kind,
    SearchWindow,
    gainanov_descend,
    search_first_ext,
    search_first_simple,
    search_last_ext,
    search_last_simple,
)

from conftest import monotone_by_concatenation

TRACE_FN = "0011001101110111"


def test_search_trace_positions():
    o = TableOracle(TruthTable.parse(TRACE_FN))
    r = search_first_simple(o, 4)
    assert (r.position, r.kind) == (2, Kind.LFMT)
    assert o.log == [(7, 1), (3, 1), (1, 0), (2, 1)]
    o = TableOracle(TruthTable.parse(TRACE_FN))
    r = search_last_simple(o, 4)
    assert (r.position, r.kind) == (12, Kind.LLMF)
    assert o.log == [(8, 0), (12, 0), (14, 1), (13, 1)]


def test_identification_of_trace_function_within_bound():
    from mbf.identify import identify

    r = identify(TableOracle(TruthTable.parse(TRACE_FN)))
    assert (r.min_true, r.max_false) == ({2, 9}, {5, 12})
    assert r.queries <= 4 * r.m


def test_constants_need_disambiguation():
    zero = TableOracle(TruthTable.constant(3, 0))
    r = search_first_simple(zero, 3, disambiguate=True)
    assert r.position == 7 and r.constant_detected == 0 and zero.queries_asked == 4
    one = TableOracle(TruthTable.constant(3, 1))
    r = search_last_simple(one, 3, disambiguate=True)
    assert r.position == 0 and r.constant_detected == 1 and one.queries_asked == 4
    # without the extra query the two extremes look alike
    assert search_first_simple(TableOracle(TruthTable.parse("00000001")), 3).position == 7


@pytest.mark.parametrize("n", range(1, 5))
def test_ext_without_knowledge_matches_simple(n):
    for bits in monotone_by_concatenation(n):
        t = TruthTable.from_bitstring(bits)
        window = SearchWindow(0, (1 << n) - 1)
        o1, o2 = TableOracle(t), TableOracle(t)
        assert search_first_ext(o1, KnowledgeStore(n), window) == search_first_simple(o2, n).position
        assert o1.log == o2.log
        o1, o2 = TableOracle(t), TableOracle(t)
        assert search_last_ext(o1, KnowledgeStore(n), window) == search_last_simple(o2, n).position
        assert o1.log == o2.log


def test_ext_registration_and_trace():
    t = TruthTable.parse(TRACE_FN)
    k = KnowledgeStore(4)
    trace = []
    pos = search_first_ext(TableOracle(t), k, SearchWindow(0, 15), trace)
    assert pos == 2
    assert trace == [(7, 1, True), (3, 1, True), (1, 0, True), (2, 1, True)]
    assert k.tpi == [2] and k.tpc == [1]
    # a second search reuses what is known
    o = TableOracle(t)
    trace = []
    assert search_last_ext(o, k, SearchWindow(0, 15), trace) == 12
    assert (13, 1, True) in trace
    assert 12 in k.tpc


def test_ext_skips_known_positions():
    t = TruthTable.parse(TRACE_FN)
    k = KnowledgeStore(4)
    k.reg_implicant(2)
    o = TableOracle(t)
    trace = []
    search_first_ext(o, k, SearchWindow(0, 15), trace)
    assert [q for _, _, q in trace] == [False, False, True, False]
    assert o.queries_asked == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_subwindow_searches(n):
    # on a dyadic block, ext searches return the extreme of the restricted function
    for bits in monotone_by_concatenation(n)[::3]:
        t = TruthTable.from_bitstring(bits)
        half = 1 << (n - 1)
        for lo in (0, half):
            hi = lo + half - 1
            seg = bits[lo:hi + 1]
            if "1" in seg:
                first_one = lo + seg.index("1")
                assert search_first_ext(TableOracle(t), KnowledgeStore(n), SearchWindow(lo, hi)) == first_one
            if "0" in seg:
                last_zero = lo + seg.rindex("0")
                assert search_last_ext(TableOracle(t), KnowledgeStore(n), SearchWindow(lo, hi)) == last_zero


def test_gainanov_example():
    o = TableOracle(TruthTable.parse("00110111"))
    assert gainanov_descend(o, 7, 3) == (2, Kind.MIN_TRUE)
    o = TableOracle(TruthTable.parse("00110111"))
    assert gainanov_descend(o, 0, 3) == (4, Kind.MAX_FALSE)


@pytest.mark.parametrize("n", range(1, 4))
def test_gainanov_lands_on_extreme_vectors(n):
    for bits in monotone_by_concatenation(n):
        t = TruthTable.from_bitstring(bits)
        for start in range(1 << n):
            o = TableOracle(t)
            v, kind = gainanov_descend(o, start, n)
            assert o.queries_asked <= n + 1
            if kind is Kind.MIN_TRUE:
                assert v in brute_minT(t) and v & ~start == 0
            else:
                assert v in brute_maxF(t) and start & ~v == 0


def test_window_validation():
    with pytest.raises(ValueError):
        SearchWindow(5, 3).check(3)
    with pytest.raises(ValueError):
        SearchWindow(0, 8).check(3)
