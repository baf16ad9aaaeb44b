from __future__ import annotations

from array import array
from bisect import bisect_left

from core.errors import ConstructionError, ParameterError, PositionError
from core.logger import get_logger
from core.models import QueryStats
from services.rlbwt.rank_select import RankSelectSupport
from services.tau.tau_runs import TauRuns, enumerate_tau_runs


class SaIsaSupport:
    """
    SA/ISA 随机访问。
    从 $ 行出发反复做 LF^τ，依次落在文本位置 n, n-τ, n-2τ, … 的行上，
    这些 (行, 位置) 对即为采样。sa 向左走 LF 直到命中采样，isa 从右侧最近的采样往回走。
    """

    def __init__(self, nav: RankSelectSupport, tau: int):
        if not 1 <= tau <= nav.n:
            raise ParameterError(f"τ 超出范围 [1, {nav.n}]：{tau}")
        if nav.count(0) != 1:
            raise ConstructionError("SA/ISA 采样需要恰好一个编码为 0 的哨兵")
        self.nav = nav
        self.n = nav.n
        self.tau = tau
        self.stats = QueryStats()
        self.log = get_logger("RlIndex.sa_isa")

        self.runs: TauRuns = enumerate_tau_runs(nav, tau, substrings=False, lf_samples=True)
        # BWT 为 $ 的行对应文本位置 1
        self.primary = nav.select(0, 1)

        by_position = []
        row, pos = nav.lf(self.primary), self.n
        by_position.append((pos, row))
        while pos - tau >= 1:
            row = self.runs.lf_tau_at(row)
            pos -= tau
            by_position.append((pos, row))
        # 下标 t 对应位置 n - tτ
        self._isa_rows = array("Q", (row for _, row in by_position))
        pairs = sorted((row, pos) for pos, row in by_position)
        self._sa_rows = array("Q", (row for row, _ in pairs))
        self._sa_values = array("Q", (pos for _, pos in pairs))
        self.log.debug(f"SA/ISA 采样：τ={tau}，采样数 {len(pairs)}，|R_τ|={len(self.runs.starts)}")

    @property
    def sample_count(self) -> int:
        return len(self._sa_rows)

    @property
    def sample_bytes(self) -> int:
        """三张采样表（各为 u64 数组）占用的字节数"""
        tables = (self._isa_rows, self._sa_rows, self._sa_values)
        return sum(len(t) * t.itemsize for t in tables)

    def samples(self) -> list[tuple[int, int]]:
        """按行号排序的 (行, 文本位置)"""
        return list(zip(self._sa_rows, self._sa_values))

    def _sampled(self, row: int) -> int | None:
        k = bisect_left(self._sa_rows, row)
        if k < len(self._sa_rows) and self._sa_rows[k] == row:
            return self._sa_values[k]
        return None

    def sa(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PositionError(f"SA 下标越界：{i}（n={self.n}）")
        row, steps = i, 0
        while True:
            value = self._sampled(row)
            if value is not None:
                break
            if row == self.primary:
                value = 1
                break
            row = self.nav.lf(row)
            steps += 1
        self.stats.record(steps)
        return value + steps

    def isa(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise PositionError(f"ISA 下标越界：{j}（n={self.n}）")
        t = (self.n - j) // self.tau
        row = self._isa_rows[t]
        steps = (self.n - t * self.tau) - j
        for _ in range(steps):
            row = self.nav.lf(row)
        self.stats.record(steps)
        return row

    def phi(self, j: int) -> int:
        """Φ[j] = SA[ISA[j] - 1]；最小后缀没有前驱，返回 0"""
        row = self.isa(j)
        return 0 if row == 1 else self.sa(row - 1)
