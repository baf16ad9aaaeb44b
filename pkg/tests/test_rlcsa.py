import io

import pytest

from core.constants import RLCSA_MAGIC
from core.errors import FormatError, ParameterError, PositionError
from services.construction.bwt_builder import build_bwt
from services.rlbwt.rank_select import RankSelectSupport
from services.rlbwt.rlbwt import Rlbwt
from services.support.lf_shortcut import LfShortcutEngine
from services.support.rlcsa import build_rlcsa, chunk_length, read_rlcsa, write_rlcsa
from services.support.sa_isa import SaIsaSupport
from services.text import corpus
from services.text.packed_text import load_text


def _rlcsa(navigated, tau=4, tau2=3):
    nav = navigated.nav
    support = SaIsaSupport(nav, min(3, navigated.n))
    engine = LfShortcutEngine(nav, support, min(tau2, navigated.n))
    return build_rlcsa(engine, tau)


def test_chunk_length():
    assert chunk_length(10, 10, 4) == 1
    assert chunk_length(100, 10, 2) == 4
    assert chunk_length(100, 10, 4) == 2
    assert chunk_length(100, 10, 16) == 1


def test_banana_segment(banana):
    index = _rlcsa(banana, tau=2)
    assert index.sa_segment(3, 3) == [4, 2, 1]
    assert index.sa_at(4) == 2


@pytest.mark.parametrize("tau", [2, 4, 16])
def test_sa_at_matches_oracle(navigated, tau):
    index = _rlcsa(navigated, tau=tau)
    for p in range(1, navigated.n + 1):
        assert index.sa_at(p) == navigated.tables.sa[p]


@pytest.mark.parametrize("tau", [2, 4])
def test_sa_segment_matches_oracle(small_navigated, tau):
    index = _rlcsa(small_navigated, tau=tau)
    sa, n = small_navigated.tables.sa, small_navigated.n
    for p in range(1, n + 1):
        for length in range(0, n - p + 2):
            assert index.sa_segment(p, length) == sa[p:p + length]


def test_full_segment_on_repetitive_text(navigator_for):
    navigated = navigator_for(corpus.mutated_repeat(32, 8, 0.01, seed=2))
    index = _rlcsa(navigated, tau=2)
    assert index.sa_segment(1, navigated.n) == navigated.tables.sa[1:]
    assert index.level_count >= 1


def test_descent_depth_recorded(navigated):
    index = _rlcsa(navigated, tau=2)
    starts = set(navigated.nav.rlbwt.starts)
    for p in range(1, navigated.n + 1):
        index.stats.reset()
        index.sa_at(p)
        expected = 0 if p in starts else index.level_count + 1
        assert index.stats.max_steps == expected


def test_query_bounds(banana):
    index = _rlcsa(banana)
    with pytest.raises(PositionError):
        index.sa_at(0)
    with pytest.raises(PositionError):
        index.sa_segment(6, 3)
    with pytest.raises(ParameterError):
        _rlcsa(banana, tau=1)


def test_rlcsa_file_roundtrip(navigated):
    index = _rlcsa(navigated, tau=2)
    buffer = io.BytesIO()
    write_rlcsa(index, buffer)
    buffer.seek(0)
    restored = read_rlcsa(buffer)
    assert restored.level_count == index.level_count
    assert restored.stored_words() == index.stored_words()
    assert restored.sa_segment(1, navigated.n) == navigated.tables.sa[1:]


def test_rlcsa_file_errors(banana):
    buffer = io.BytesIO()
    write_rlcsa(_rlcsa(banana), buffer)
    data = buffer.getvalue()
    with pytest.raises(FormatError):
        read_rlcsa(io.BytesIO(b"RCSA0" + data[5:]))
    with pytest.raises(FormatError):
        read_rlcsa(io.BytesIO(data[:-8]))
    with pytest.raises(FormatError):
        read_rlcsa(io.BytesIO(data[:40]))


def _unary_engine(n: int) -> tuple[LfShortcutEngine, int]:
    """a^n$ 的 BWT 是 a^n $，SA 为 n+1, n, …, 1"""
    nav = RankSelectSupport(Rlbwt(n=n + 1, sigma=2, starts=(1, n + 1), symbols=(1, 0)))
    return LfShortcutEngine(nav, SaIsaSupport(nav, 16), 16), n + 1


def _built_engine(raw: str) -> LfShortcutEngine:
    nav = RankSelectSupport(build_bwt(load_text(raw)))
    return LfShortcutEngine(nav, SaIsaSupport(nav, 16), 16)


def _serialized(index) -> bytes:
    buffer = io.BytesIO()
    write_rlcsa(index, buffer)
    return buffer.getvalue()


def test_serialized_size_matches_stored_words(navigated):
    for tau in (2, 4):
        index = _rlcsa(navigated, tau=tau)
        assert len(_serialized(index)) == len(RLCSA_MAGIC) + 8 * index.stored_words()


def test_unary_text_is_small_and_correct():
    engine, n = _unary_engine(2000)
    index = build_rlcsa(engine, 4)
    assert index.sa_segment(1, n) == list(range(n, 0, -1))
    assert len(_serialized(index)) < 8 * n


def _check_repeat_index(engine: LfShortcutEngine, tau: int):
    n, r = engine.nav.n, engine.nav.rlbwt.r
    assert 16 * r <= n
    index = build_rlcsa(engine, tau)
    assert len(_serialized(index)) < 8 * n
    for p in range(1, n + 1, 97):
        assert index.sa_at(p) == engine.support.sa(p)
    assert index.sa_segment(n // 2, 40) == [engine.support.sa(p) for p in range(n // 2, n // 2 + 40)]


def test_mutated_repeat_is_below_eight_bytes_per_symbol():
    _check_repeat_index(_built_engine(corpus.mutated_repeat(256, 32, 1e-3, seed=1)), 4)


@pytest.mark.slow
def test_large_mutated_repeat_is_below_eight_bytes_per_symbol():
    engine = _built_engine(corpus.mutated_repeat(1024, 100, 1e-3, seed=1))
    for tau in (4, 8):
        _check_repeat_index(engine, tau)


def test_tau_trades_size_for_depth(navigator_for):
    navigated = navigator_for(corpus.mutated_repeat(64, 16, 1e-2, seed=3))
    n = navigated.n
    indexes = {tau: _rlcsa(navigated, tau=tau) for tau in (2, 4, 16)}
    sizes = {tau: len(_serialized(index)) for tau, index in indexes.items()}
    assert sizes[16] >= sizes[4] >= sizes[2]
    depths = {}
    for tau, index in indexes.items():
        assert index.sa_segment(1, n) == navigated.tables.sa[1:]
        depths[tau] = index.stats.max_steps
    assert depths[16] <= depths[4] <= depths[2]
