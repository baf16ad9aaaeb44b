import io

import pytest

from core.errors import ConstructionError, FormatError, PositionError
from services.rlbwt.rlbwt import Rlbwt, RunAppender
from services.rlbwt.rlbwt_io import read_rlbwt, write_rlbwt


def test_banana_runs(banana):
    rlbwt = banana.nav.rlbwt
    assert rlbwt.starts == (1, 2, 4, 5, 6)
    assert rlbwt.symbols == (1, 3, 2, 0, 1)
    assert rlbwt.r == 5
    assert rlbwt.run_length(1) == 2
    assert rlbwt.decompress() == [1, 3, 3, 2, 0, 1, 1]


def test_rlbwt_rejects_malformed_runs():
    with pytest.raises(ConstructionError):
        Rlbwt(n=3, sigma=2, starts=(2,), symbols=(1,))
    with pytest.raises(ConstructionError):
        Rlbwt(n=3, sigma=2, starts=(1, 2), symbols=(1, 1))
    with pytest.raises(ConstructionError):
        Rlbwt(n=3, sigma=2, starts=(1, 3, 2), symbols=(1, 0, 1))


def test_run_appender_merges_adjacent():
    out = RunAppender()
    out.extend([(1, 2), (1, 3), (0, 0), (2, 1), (0, 1)])
    rlbwt = out.build(sigma=3)
    assert rlbwt.starts == (1, 6, 7)
    assert rlbwt.symbols == (1, 2, 0)
    with pytest.raises(ConstructionError):
        RunAppender().build(sigma=1)


def test_rank_select_match_oracle(navigated):
    nav, bwt = navigated.nav, navigated.tables.bwt
    for c in nav.alphabet:
        running = 0
        assert nav.rank(c, 0) == 0
        for i in range(1, navigated.n + 1):
            if bwt[i] == c:
                running += 1
                assert nav.select(c, running) == i
            assert nav.rank(c, i) == running
        assert nav.count(c) == running


def test_select_out_of_range(banana):
    with pytest.raises(PositionError):
        banana.nav.select(2, 2)
    with pytest.raises(PositionError):
        banana.nav.rank(1, 8)


def test_lf_psi_first_symbol_match_oracle(navigated):
    nav, tables, codes = navigated.nav, navigated.tables, navigated.codes
    for i in range(1, navigated.n + 1):
        assert nav.lf(i) == tables.lf[i]
        assert nav.psi(i) == tables.psi[i]
        assert nav.first_symbol(i) == codes[tables.sa[i] - 1]


def test_lf_within_run(banana):
    nav = banana.nav
    assert nav.lf_within_run(3, 2, nav.lf(2)) == nav.lf(3)
    with pytest.raises(PositionError):
        nav.lf_within_run(4, 2, nav.lf(2))


def test_backward_step(banana):
    nav = banana.nav
    # BWT = a n n b $ a a
    assert nav.backward_step(7, 1) == 4
    assert nav.backward_step(0, 3) == 5
    assert nav.backward_step(3, 2) == 4


def test_backward_search_counts(banana):
    nav = banana.nav
    # a=1, b=2, n=3
    lo, hi = nav.backward_search([1, 3, 1])
    assert hi - lo == 2
    assert banana.tables.sa[lo + 1:hi + 1] == [4, 2]
    assert nav.backward_search([]) == (0, 7)
    lo, hi = nav.backward_search([2, 2])
    assert hi == lo


def test_c_array_for_missing_symbol(banana):
    assert banana.nav.c_array(0) == 0
    assert banana.nav.c_array(2) == 4
    assert banana.nav.c_array(9) == 7


def test_invert_recovers_text(navigated):
    assert navigated.nav.invert() == navigated.codes


def test_rlbwt_file_roundtrip(navigated):
    buffer = io.BytesIO()
    write_rlbwt(navigated.nav.rlbwt, buffer)
    buffer.seek(0)
    assert read_rlbwt(buffer) == navigated.nav.rlbwt


def test_rlbwt_file_errors(banana):
    buffer = io.BytesIO()
    write_rlbwt(banana.nav.rlbwt, buffer)
    data = buffer.getvalue()
    with pytest.raises(FormatError):
        read_rlbwt(io.BytesIO(b"XXXXX" + data[5:]))
    with pytest.raises(FormatError):
        read_rlbwt(io.BytesIO(data[:-3]))
