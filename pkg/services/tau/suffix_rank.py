from __future__ import annotations

from bisect import bisect_left

from core.errors import ConstructionError, ParameterError, PositionError
from core.logger import get_logger
from core.models import QueryStats
from services.rlbwt.rank_select import RankSelectSupport
from services.rlbwt.rlbwt import Rlbwt
from services.tau.tau_runs import TauRuns, assign_names, enumerate_tau_runs


class SuffixRankSupport:
    """
    跨串后缀秩：给定 S 的某个后缀在 S 中的秩，求 S' 中严格小于它的后缀个数。

    两串的 τ-子串联合命名后，S' 的 τ-游程序列就是一条"名字 BWT"，
    在其上做后向搜索一次前进 τ 个符号。采样点取 S 中长度为 τ 倍数的后缀。
    """

    def __init__(
        self,
        source: RankSelectSupport,
        target: RankSelectSupport,
        tau: int,
        source_runs: TauRuns,
        source_names: tuple[int, ...],
        name_table: RankSelectSupport,
        sample_rows: list[int],
        sample_ranks: list[int],
        last_row: int,
    ):
        self.tau = tau
        self._source = source
        self._target = target
        self._source_runs = source_runs
        self._source_names = source_names
        self._name_table = name_table
        self._rows = sample_rows
        self._ranks = sample_ranks
        self._last_row = last_row
        self.stats = QueryStats()

    @classmethod
    def build(
        cls,
        source: RankSelectSupport,
        target: RankSelectSupport,
        tau: int,
        source_last: int,
    ) -> SuffixRankSupport:
        """source_last 是 S 末尾的唯一符号，用来定位整串所在的行"""
        if tau < 1:
            raise ParameterError(f"τ 至少为 1：{tau}")
        if source.n < 1 or target.n < 1:
            raise ParameterError("两个串都不能为空")
        if source.count(source_last) != 1:
            raise ConstructionError("S 的末尾符号必须在 S 中唯一")
        if target.count(source_last):
            raise ConstructionError("S 的末尾符号不能出现在 S' 中")

        log = get_logger("RlIndex.tau")
        source_runs = enumerate_tau_runs(source, tau, substrings=True, lf_samples=True)
        target_runs = enumerate_tau_runs(target, tau, substrings=True, lf_samples=False)
        source_names, target_names = assign_names([source_runs.substrings, target_runs.substrings])
        log.debug(f"τ={tau}：|R_τ(S)|={len(source_runs.starts)}，|R_τ(S')|={len(target_runs.starts)}")

        # S' 上按 τ-游程展开的名字序列，相邻游程名字必然不同
        name_table = RankSelectSupport(
            Rlbwt(
                n=target.n,
                sigma=max(target_names) + 1,
                starts=target_runs.starts,
                symbols=tuple(target_names),
            )
        )

        primary = source.select(source_last, 1)
        samples = []
        row, rank = primary, 0
        k = 1
        while k * tau <= source.n:
            name = source_names[source_runs.run_index(row)]
            rank = name_table.backward_step(rank, name)
            row = source_runs.lf_tau_at(row)
            samples.append((row, rank))
            k += 1
        samples.sort()

        return cls(
            source=source,
            target=target,
            tau=tau,
            source_runs=source_runs,
            source_names=tuple(source_names),
            name_table=name_table,
            sample_rows=[row for row, _ in samples],
            sample_ranks=[rank for _, rank in samples],
            last_row=source.lf(primary),
        )

    @property
    def sample_count(self) -> int:
        return len(self._rows)

    def samples(self) -> list[tuple[int, int]]:
        return list(zip(self._rows, self._ranks))

    def suffix_rank(self, i: int) -> int:
        """i 为 S 后缀在 S 中的秩（0 起点，即行号减一）"""
        if not 0 <= i < self._source.n:
            raise PositionError(f"秩越界：{i}（m={self._source.n}）")
        row = i + 1
        symbols = []
        for _ in range(self.tau + 1):
            k = bisect_left(self._rows, row)
            if k < len(self._rows) and self._rows[k] == row:
                rank = self._ranks[k]
                break
            symbols.append(self._source.first_symbol(row))
            if row == self._last_row:
                # 吃掉末尾符号后是空后缀，秩为 0
                rank = 0
                break
            row = self._source.psi(row)
        else:
            raise ConstructionError(f"从秩 {i} 出发 {self.tau} 步内没有遇到采样")

        for c in reversed(symbols):
            rank = self._target.backward_step(rank, c)
        self.stats.record(len(symbols))
        return rank
