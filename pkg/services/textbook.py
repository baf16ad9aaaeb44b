"""不同子串计数与出现至少 k 次的最长子串"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from core.errors import ParameterError
from core.logger import get_logger
from services.rlbwt.rank_select import RankSelectSupport
from services.support.lf_shortcut import LfShortcutEngine
from services.support.plcp import IrreducibleList, PlcpSucc
from services.support.sa_isa import SaIsaSupport


def _reducible_sum(value: int, gap: int) -> int:
    """从 value 起逐个减一、共 gap 项的 PLCP 之和"""
    if value < gap:
        return value * (value + 1) // 2
    return gap * (value - gap) + gap * (gap + 1) // 2


def distinct_substrings(irreducible: IrreducibleList, n: int) -> int:
    """
    d(T$) = n(n+1)/2 - ΣPLCP，ΣPLCP 只需不可约值与相邻不可约位置的间距。
    含 $ 的子串恰是 T$ 的 n 个后缀，扣掉后即为 T 的不同子串数。
    """
    positions = list(irreducible.positions) + [n + 1]
    total = 0
    for k, value in enumerate(irreducible.values):
        total += _reducible_sum(value, positions[k + 1] - positions[k])
    return n * (n + 1) // 2 - total - n


def _window_minima(values: Sequence[int], width: int) -> list[int]:
    """每个长度 width 窗口的最小值"""
    out = []
    queue: deque[int] = deque()
    for i, v in enumerate(values):
        while queue and values[queue[-1]] >= v:
            queue.pop()
        queue.append(i)
        if queue[0] <= i - width:
            queue.popleft()
        if i >= width - 1:
            out.append(values[queue[0]])
    return out


def _window_maxima(values: Sequence[int], width: int) -> list[int]:
    return [-v for v in _window_minima([-v for v in values], width)]


class KTimesSupport:
    """
    max_i min_{j=0..k-2} LCP[i+j]。
    LCP[2..n] 切成长度 τ+k-2、相互重叠 k-2 的块，任何 k-1 个连续值都落在某一块内。
    LF 捷径把块搬到含游程起点的像上，且 LCP[块] = LCP[像] - d，
    所以只需为游程起点附近的每种对齐方式预先算好块内答案。
    """

    def __init__(
        self,
        nav: RankSelectSupport,
        support: SaIsaSupport,
        plcp: PlcpSucc,
        engine: LfShortcutEngine | None,
        tau: int,
    ):
        if tau < 1:
            raise ParameterError(f"分块大小至少为 1：{tau}")
        self.nav = nav
        self.support = support
        self.plcp = plcp
        self.engine = engine
        self.n = nav.n
        self.tau = tau
        self.log = get_logger("RlIndex.textbook")

    def lcp(self, i: int) -> int:
        return 0 if i == 1 else self.plcp.get(self.support.sa(i))

    def dense(self, k: int) -> int:
        self._check_k(k)
        values = [self.lcp(i) for i in range(2, self.n + 1)]
        if len(values) < k - 1:
            return 0
        return max(_window_minima(values, k - 1))

    def _check_k(self, k: int):
        if k < 2:
            raise ParameterError(f"k 至少为 2：{k}")
        if k > self.n:
            raise ParameterError(f"k 不能超过 n={self.n}：{k}")

    def blocks(self, k: int) -> list[tuple[int, int]]:
        size = self.tau + k - 2
        out = []
        s = 2
        while s + k - 2 <= self.n:
            out.append((s, min(self.n, s + size - 1)))
            s += self.tau
        return out

    def shared_block(self, s: int, e: int) -> list[int]:
        """用 LF 捷径由像重建 LCP[s..e]（要求 s 不是游程起点）"""
        cut = self.engine.shortcut(s, e)
        return [self.lcp(cut.target + t) - cut.distance for t in range(e - s + 1)]

    def _alignment_table(self, size: int, width: int) -> dict[int, int]:
        """像的起点 q ∈ [b-size+1, b] 时，[q..q+size-1] 内的最大窗口最小值"""
        cache: dict[int, int] = {}
        table: dict[int, int] = {}
        for b in self.nav.rlbwt.starts:
            lo, hi = max(2, b - size + 1), min(self.n, b + size - 1)
            if hi - lo + 1 < size:
                continue
            values = []
            for i in range(lo, hi + 1):
                if i not in cache:
                    cache[i] = self.lcp(i)
                values.append(cache[i])
            best = _window_maxima(_window_minima(values, width), size - width + 1)
            for offset, value in enumerate(best):
                q = lo + offset
                if q > b:
                    break
                table[q] = value
        return table

    def compressed(self, k: int) -> int:
        self._check_k(k)
        if self.engine is None:
            raise ParameterError("共享分块需要 LF 捷径引擎")
        width = k - 1
        size = self.tau + k - 2
        table = self._alignment_table(size, width)
        answer = 0
        for s, e in self.blocks(k):
            if e - s + 1 < size or self.nav.rlbwt.is_run_start(s):
                values = [self.lcp(i) for i in range(s, e + 1)]
                if len(values) >= width:
                    answer = max(answer, max(_window_minima(values, width)))
                continue
            cut = self.engine.shortcut(s, e)
            answer = max(answer, table[cut.target] - cut.distance)
        return answer


def longest_k_occurring(support: KTimesSupport, k: int, dense: bool = False) -> int:
    value = support.dense(k) if dense else support.compressed(k)
    support.log.debug(f"k={k}：最长长度 {value}（{'稠密' if dense else '共享分块'}）")
    return value
