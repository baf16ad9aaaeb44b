import random

import pytest

from core.errors import PositionError
from services import oracle
from services.support.lf_shortcut import LfShortcutEngine, SparseTableRmq
from services.support.sa_isa import SaIsaSupport


def test_sparse_table_rmq_matches_scan():
    rng = random.Random(3)
    values = [rng.randrange(10) for _ in range(40)]
    rmq = SparseTableRmq(values)
    assert len(rmq) == 40
    for lo in range(40):
        for hi in range(lo, 40):
            window = values[lo:hi + 1]
            assert rmq.argmin(lo, hi) == lo + window.index(min(window))
    with pytest.raises(PositionError):
        rmq.argmin(5, 4)


@pytest.mark.parametrize("tau2", [1, 2, 5])
def test_shortcut_matches_oracle(navigated, tau2):
    tau2 = min(tau2, navigated.n)
    nav, tables = navigated.nav, navigated.tables
    engine = LfShortcutEngine(nav, SaIsaSupport(nav, min(3, navigated.n)), tau2)
    starts = nav.rlbwt.starts
    for width in (1, 2, 4):
        for s in range(1, navigated.n - width + 2):
            e = s + width - 1
            cut = engine.shortcut(s, e)
            assert (cut.distance, cut.target) == oracle.lf_distance_reference(tables, starts, s, e)
            assert starts[cut.run] <= cut.target


def test_run_samples(banana):
    engine = LfShortcutEngine(banana.nav, SaIsaSupport(banana.nav, 2), 2)
    assert engine.run_starts == (1, 2, 4, 5, 6)
    assert engine.run_sa == (7, 6, 2, 1, 5)
    assert engine.sample_count >= banana.nav.rlbwt.r


def test_anchor_run(banana):
    engine = LfShortcutEngine(banana.nav, SaIsaSupport(banana.nav, 2), 2)
    assert engine.anchor_run(4) == 2
    assert engine.anchor_run(3) == 2
    assert engine.anchor_run(1) == 0


def test_shortcut_rejects_bad_block(banana):
    engine = LfShortcutEngine(banana.nav, SaIsaSupport(banana.nav, 2), 2)
    with pytest.raises(PositionError):
        engine.shortcut(3, 2)
    with pytest.raises(PositionError):
        engine.shortcut(1, 8)
