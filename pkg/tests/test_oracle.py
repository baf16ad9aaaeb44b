from services import oracle
from services.text.packed_text import load_text


def test_banana_tables():
    tables = oracle.build_tables(load_text("banana"))
    assert tables.sa[1:] == [7, 6, 4, 2, 1, 5, 3]
    assert tables.bwt[1:] == [1, 3, 3, 2, 0, 1, 1]
    assert tables.plcp[1:] == [0, 3, 2, 1, 0, 0, 0]
    assert tables.lcp[1:] == [0, 0, 1, 3, 0, 0, 2]
    assert oracle.irreducible_sum(tables) == 3


def test_lf_and_psi_are_inverse():
    tables = oracle.build_tables(load_text("mississippi"))
    for i in range(1, tables.n + 1):
        assert tables.psi[tables.lf[i]] == i
        assert tables.sa[tables.lf[i]] == (tables.sa[i] - 2) % tables.n + 1


def test_run_starts():
    assert oracle.run_starts("annb$aa") == [1, 2, 4, 5, 6]


def test_lz77_reference_example():
    assert oracle.lz77_reference("zzzzzipzip") == [("z", 0), (1, 4), ("i", 0), ("p", 0), (5, 3)]


def test_lyndon_duval_example():
    assert oracle.lyndon_duval("banana") == [(1, 1, 1), (2, 2, 2), (6, 1, 1)]
    assert oracle.lyndon_duval("aaaa") == [(1, 1, 4)]


def test_textbook_references():
    assert oracle.distinct_substrings_reference("banana") == 15
    assert oracle.longest_k_reference("banana", 2) == 3
    assert oracle.longest_k_reference("banana", 3) == 1
    assert oracle.longest_k_reference("aaaaa", 5) == 1


def test_nsv_psv_reference():
    tables = oracle.build_tables(load_text("banana"))
    nsv, psv = oracle.nsv_psv_reference(tables.sa)
    assert nsv[4] == 5
    assert psv[4] == 0


def test_cross_ranks():
    assert oracle.cross_ranks([2, 0], [1, 3]) == [0, 1]
