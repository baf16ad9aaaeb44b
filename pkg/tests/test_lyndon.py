import pytest

from core.models import LyndonRun
from services import oracle
from services.factorization.lyndon import factor_starts, lyndon_factorize


def test_banana_runs(banana):
    runs = banana.index(tau=2, tau2=2).lyndon
    assert runs == [LyndonRun(1, 1, 1), LyndonRun(2, 2, 2), LyndonRun(6, 1, 1)]


def test_unary_is_one_run(navigator_for):
    runs = navigator_for("aaaa").index().lyndon
    assert runs == [LyndonRun(1, 1, 4)]


def test_lyndon_word_is_single_factor(navigator_for):
    runs = navigator_for("aab").index().lyndon
    assert runs == [LyndonRun(1, 3, 1)]


@pytest.mark.parametrize("tau2", [1, 3])
def test_matches_duval(navigated, tau2):
    index = navigated.index(tau=3, tau2=tau2)
    runs = index.lyndon
    expected = oracle.lyndon_duval(navigated.codes[:-1])
    assert [(r.start, r.length, r.exponent) for r in runs] == expected


def test_factor_starts_are_prefix_minima(small_navigated):
    engine = small_navigated.index().lce
    codes = small_navigated.codes
    last = small_navigated.n - 1
    expected, best = [], None
    for i in range(1, last + 1):
        suffix = codes[i - 1:]
        if best is None or suffix < best:
            expected.append(i)
            best = suffix
    assert factor_starts(engine) == expected


def test_runs_bounded_by_phrases(navigated):
    index = navigated.index()
    assert len(index.lyndon) < 2 * index.lz77.z


def test_runs_cover_text(navigated):
    runs = lyndon_factorize(navigated.index().lce)
    assert runs[0].start == 1
    for prev, cur in zip(runs, runs[1:]):
        assert cur.start == prev.start + prev.length * prev.exponent
    assert sum(r.length * r.exponent for r in runs) == navigated.n - 1
