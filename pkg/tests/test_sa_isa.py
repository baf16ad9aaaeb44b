import pytest

from core.errors import ConstructionError, ParameterError, PositionError
from services.rlbwt.rank_select import RankSelectSupport
from services.rlbwt.rlbwt import Rlbwt
from services.support.sa_isa import SaIsaSupport


def test_banana_examples(banana):
    support = SaIsaSupport(banana.nav, 2)
    assert support.sa(4) == 2
    assert support.isa(1) == 5
    assert support.primary == 5


@pytest.mark.parametrize("tau", [1, 2, 4, 16])
def test_sa_isa_phi_match_oracle(navigated, tau):
    tau = min(tau, navigated.n)
    support = SaIsaSupport(navigated.nav, tau)
    tables = navigated.tables
    for i in range(1, navigated.n + 1):
        assert support.sa(i) == tables.sa[i]
        assert support.isa(i) == tables.isa[i]
        assert support.phi(i) == tables.phi[i]


@pytest.mark.parametrize("tau", [1, 3, 5])
def test_walks_bounded_by_tau(navigated, tau):
    tau = min(tau, navigated.n)
    support = SaIsaSupport(navigated.nav, tau)
    for i in range(1, navigated.n + 1):
        support.sa(i)
        support.isa(i)
    assert support.stats.max_steps < tau
    assert support.stats.queries == 2 * navigated.n


def test_sample_positions(navigator_for):
    navigated = navigator_for("abracadabra")
    n = navigated.n
    support = SaIsaSupport(navigated.nav, 5)
    positions = sorted(pos for _, pos in support.samples())
    assert positions == [2, 7, 12]
    assert support.sample_count == (n - 1) // 5 + 1
    for row, pos in support.samples():
        assert navigated.tables.sa[row] == pos
    assert support.sample_bytes == 3 * 8 * support.sample_count


def test_single_sample_when_tau_is_n(banana):
    support = SaIsaSupport(banana.nav, banana.n)
    assert support.sample_count == 1
    assert [support.sa(i) for i in range(1, 8)] == banana.tables.sa[1:]


def test_parameter_checks(banana):
    with pytest.raises(ParameterError):
        SaIsaSupport(banana.nav, 0)
    with pytest.raises(ParameterError):
        SaIsaSupport(banana.nav, 8)
    support = SaIsaSupport(banana.nav, 2)
    with pytest.raises(PositionError):
        support.sa(0)
    with pytest.raises(PositionError):
        support.isa(8)


def test_requires_unique_sentinel():
    nav = RankSelectSupport(Rlbwt.from_bwt([1, 0, 0, 2]))
    with pytest.raises(ConstructionError):
        SaIsaSupport(nav, 1)
