import io
import math

import pytest

from core.errors import ConstructionError, FormatError, PositionError
from services import oracle
from services.support.plcp import (
    IrreducibleList,
    LceEngine,
    build_irreducible,
    expand_to_plcpsucc,
    read_plcp,
    write_plcp,
)
from services.support.sa_isa import SaIsaSupport
from services.tau.tau_runs import build_name_index


def _engine(navigated, tau=2, tau2=2):
    tau, tau2 = min(tau, navigated.n), min(tau2, navigated.n)
    support = SaIsaSupport(navigated.nav, tau)
    return LceEngine(navigated.nav, support, build_name_index(navigated.nav, tau2))


def test_banana_lce(banana):
    engine = _engine(banana)
    assert engine.lce(2, 4) == 3
    assert engine.lce(1, 1) == 7
    assert engine.lce(1, 2) == 0


@pytest.mark.parametrize("tau2", [1, 2, 3, 5])
def test_lce_matches_brute_force(small_navigated, tau2):
    engine = _engine(small_navigated, tau=3, tau2=tau2)
    codes = small_navigated.codes
    n = small_navigated.n
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            expected = oracle.lcp_of(codes[a - 1:], codes[b - 1:])
            assert engine.lce(a, b) == expected
            if a != b:
                length, order = engine.lce_compare(a, b)
                assert length == expected
                assert (order < 0) == (codes[a - 1:] < codes[b - 1:])


def test_lce_bounds(banana):
    engine = _engine(banana)
    with pytest.raises(PositionError):
        engine.lce(0, 3)
    assert engine.compare(2, 4) == 1
    assert engine.compare(4, 2) == -1


def test_banana_plcp_bits(banana):
    engine = _engine(banana)
    irreducible = build_irreducible(banana.nav, engine.support, engine)
    assert irreducible.items() == [(1, 0), (2, 3), (5, 0), (6, 0), (7, 0)]
    assert irreducible.total == 3
    assert irreducible.max_value == 3
    plcp = expand_to_plcpsucc(irreducible, banana.n)
    assert plcp.set_positions() == [2, 7, 8, 9, 10, 12, 14]
    assert plcp.values() == [0, 3, 2, 1, 0, 0, 0]
    assert plcp.get(3) == 2


def test_plcp_matches_oracle(navigated):
    engine = _engine(navigated, tau=4, tau2=3)
    irreducible = build_irreducible(navigated.nav, engine.support, engine)
    plcp = expand_to_plcpsucc(irreducible, navigated.n)
    assert plcp.values() == navigated.tables.plcp[1:]
    assert irreducible.total == oracle.irreducible_sum(navigated.tables)
    assert len(irreducible) == navigated.nav.rlbwt.r
    n = navigated.n
    assert irreducible.total <= n * math.log2(n)


def test_expand_rejects_inconsistent_values():
    with pytest.raises(ConstructionError):
        expand_to_plcpsucc(IrreducibleList(n=3, positions=(2,), values=(0,)), 3)
    with pytest.raises(ConstructionError):
        expand_to_plcpsucc(IrreducibleList(n=3, positions=(1,), values=(1,)), 3)


def test_plcp_file_roundtrip(navigated):
    engine = _engine(navigated)
    plcp = expand_to_plcpsucc(build_irreducible(navigated.nav, engine.support, engine), navigated.n)
    buffer = io.BytesIO()
    write_plcp(plcp, buffer)
    assert len(buffer.getvalue()) == 5 + 8 + (2 * navigated.n + 7) // 8
    buffer.seek(0)
    restored = read_plcp(buffer)
    assert restored.n == plcp.n
    assert restored.values() == plcp.values()


def test_plcp_file_errors(banana):
    engine = _engine(banana)
    plcp = expand_to_plcpsucc(build_irreducible(banana.nav, engine.support, engine), banana.n)
    buffer = io.BytesIO()
    write_plcp(plcp, buffer)
    data = buffer.getvalue()
    with pytest.raises(FormatError):
        read_plcp(io.BytesIO(b"PLCP2" + data[5:]))
    with pytest.raises(FormatError):
        read_plcp(io.BytesIO(data[:-1]))
    with pytest.raises(FormatError):
        read_plcp(io.BytesIO(data[:-2] + b"\xff\xff"))
