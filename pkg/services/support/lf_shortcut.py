from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Sequence

from core.errors import ParameterError, PositionError
from core.logger import get_logger
from core.models import QueryStats
from services.rlbwt.rank_select import RankSelectSupport
from services.support.sa_isa import SaIsaSupport


class SparseTableRmq:
    """静态区间最小值：O(N log N) 预处理，查询返回最小值所在下标（并列取最左）"""

    def __init__(self, values: Sequence[int]):
        self.values = list(values)
        size = len(self.values)
        self._table: list[list[int]] = [list(range(size))]
        width = 1
        while width * 2 <= size:
            prev = self._table[-1]
            row = []
            for i in range(size - width * 2 + 1):
                a, b = prev[i], prev[i + width]
                row.append(b if self.values[b] < self.values[a] else a)
            self._table.append(row)
            width *= 2

    def __len__(self) -> int:
        return len(self.values)

    def argmin(self, lo: int, hi: int) -> int:
        """闭区间 [lo, hi]，0 起点"""
        if not 0 <= lo <= hi < len(self.values):
            raise PositionError(f"RMQ 区间非法：[{lo}, {hi}]")
        level = (hi - lo + 1).bit_length() - 1
        row = self._table[level]
        a, b = row[lo], row[hi - (1 << level) + 1]
        return b if self.values[b] < self.values[a] else a


@dataclass(frozen=True)
class LfShortcut:
    """块的 LF 距离 d、块起点的像 LF^d[s] 以及该像所在游程"""
    distance: int
    target: int
    run: int


class LfShortcutEngine:
    """
    对任意行区间 [s..e] 求 LF 距离与 LF 捷径。

    不可约位置（游程起点的 SA 值）之间每隔 τ₂ 取一个文本位置 p+tτ₂，
    其行 ISA[p+tτ₂] 的 LF 距离恰为 tτ₂。查询时把块沿 LF 平移至多 τ₂ 步：
    像中出现游程起点就直接得到答案，否则在像覆盖的采样上做 RMQ。
    """

    def __init__(self, nav: RankSelectSupport, support: SaIsaSupport, tau2: int):
        if tau2 < 1:
            raise ParameterError(f"τ₂ 至少为 1：{tau2}")
        self.nav = nav
        self.support = support
        self.n = nav.n
        self.tau2 = tau2
        self.stats = QueryStats()
        log = get_logger("RlIndex.shortcut")

        starts = nav.rlbwt.starts
        self.run_starts: tuple[int, ...] = starts
        self.run_sa: tuple[int, ...] = tuple(support.sa(b) for b in starts)

        irreducible = sorted(zip(self.run_sa, starts))
        samples = []
        for k, (p, row) in enumerate(irreducible):
            gap = (irreducible[k + 1][0] if k + 1 < len(irreducible) else self.n + 1) - p
            for t in range(0, gap, tau2):
                key = row if t == 0 else support.isa(p + t)
                samples.append((key, t, row))
        samples.sort()
        self._keys = [key for key, _, _ in samples]
        self._targets = [target for _, _, target in samples]
        self._rmq = SparseTableRmq([value for _, value, _ in samples])
        log.debug(f"LF 捷径采样：τ₂={tau2}，{len(samples)} 个，r={len(starts)}")

    @property
    def sample_count(self) -> int:
        return len(self._keys)

    def anchor_run(self, target: int) -> int:
        """像中第一个游程起点所在的游程：target 本身是起点则为其游程，否则是下一个"""
        k = bisect_right(self.run_starts, target) - 1
        return k if self.run_starts[k] == target else k + 1

    def shortcut(self, s: int, e: int) -> LfShortcut:
        if not 1 <= s <= e <= self.n:
            raise PositionError(f"块区间非法：[{s}, {e}]（n={self.n}）")
        span = e - s
        best, best_target = None, None
        x = s
        steps = 0
        for delta in range(self.tau2):
            if best is not None and delta >= best:
                break
            k = bisect_left(self.run_starts, x)
            if k < len(self.run_starts) and self.run_starts[k] <= x + span:
                best, best_target = delta, x
                break
            lo = bisect_left(self._keys, x)
            hi = bisect_right(self._keys, x + span) - 1
            if lo <= hi:
                t = self._rmq.argmin(lo, hi)
                candidate = delta + self._rmq.values[t]
                if best is None or candidate < best:
                    # 像中各行在 LF^v 下不碰游程起点，整体平移
                    best = candidate
                    best_target = self._targets[t] - (self._keys[t] - x)
            x = self.nav.lf(x)
            steps += 1
        if best is None:
            raise PositionError(f"块 [{s}, {e}] 在 τ₂={self.tau2} 步内没有找到 LF 距离")
        self.stats.record(steps)
        k = bisect_right(self.run_starts, best_target) - 1
        return LfShortcut(distance=best, target=best_target, run=k)
