from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Sequence

from core.errors import ConstructionError, PositionError
from services.rlbwt.rlbwt import Rlbwt


class RankSelectSupport:
    """
    游程 BWT 上的 rank/select、LF/Ψ 与单步后向搜索。

    游程按 (符号, 起点) 重新排序，每个游程记下该符号在其起点之前的出现次数；
    所有查询都是在这份有序列表上二分。
    """

    def __init__(self, rlbwt: Rlbwt):
        self.rlbwt = rlbwt
        self.n = rlbwt.n

        order = sorted(range(rlbwt.r), key=lambda k: (rlbwt.symbols[k], rlbwt.starts[k]))
        self._rank_keys: list[tuple[int, int]] = []
        self._select_keys: list[tuple[int, int]] = []
        self._lengths: list[int] = []
        self._prefix: list[int] = []
        totals: dict[int, int] = {}
        for k in order:
            symbol, start = rlbwt.symbols[k], rlbwt.starts[k]
            before = totals.get(symbol, 0)
            length = rlbwt.run_length(k)
            self._rank_keys.append((symbol, start))
            self._select_keys.append((symbol, before))
            self._lengths.append(length)
            self._prefix.append(before)
            totals[symbol] = before + length

        # C 数组：按符号升序累计
        self._alphabet: list[int] = sorted(totals)
        self._totals = totals
        self._c_values: list[int] = []
        acc = 0
        for symbol in self._alphabet:
            self._c_values.append(acc)
            acc += totals[symbol]
        self._c = dict(zip(self._alphabet, self._c_values))

    # ---------------- 计数 ----------------

    @property
    def alphabet(self) -> list[int]:
        return list(self._alphabet)

    def count(self, c: int) -> int:
        return self._totals.get(c, 0)

    def c_array(self, c: int) -> int:
        """BWT 中严格小于 c 的符号个数；c 不出现时同样有定义"""
        value = self._c.get(c)
        if value is not None:
            return value
        k = bisect_left(self._alphabet, c)
        return self._c_values[k] if k < len(self._alphabet) else self.n

    def rank(self, c: int, i: int) -> int:
        if not 0 <= i <= self.n:
            raise PositionError(f"rank 位置越界：{i}（n={self.n}）")
        k = bisect_right(self._rank_keys, (c, i)) - 1
        if k < 0 or self._rank_keys[k][0] != c:
            return 0
        start = self._rank_keys[k][1]
        return self._prefix[k] + min(i - start + 1, self._lengths[k])

    def select(self, c: int, k: int) -> int:
        total = self._totals.get(c, 0)
        if not 1 <= k <= total:
            raise PositionError(f"select({c}, {k}) 越界：该符号共出现 {total} 次")
        t = bisect_right(self._select_keys, (c, k - 1)) - 1
        return self._rank_keys[t][1] + (k - 1 - self._prefix[t])

    # ---------------- 导航 ----------------

    def bwt_at(self, i: int) -> int:
        return self.rlbwt.symbol_at(i)

    def first_symbol(self, i: int) -> int:
        """F 列：第 i 个后缀的首符号"""
        if not 1 <= i <= self.n:
            raise PositionError(f"位置越界：{i}（n={self.n}）")
        return self._alphabet[bisect_left(self._c_values, i) - 1]

    def lf(self, i: int) -> int:
        c = self.bwt_at(i)
        return self._c[c] + self.rank(c, i)

    def psi(self, i: int) -> int:
        c = self.first_symbol(i)
        return self.select(c, i - self._c[c])

    def lf_within_run(self, i: int, anchor: int, anchor_lf: int) -> int:
        """同一游程内 LF 只是平移：LF[i] = LF[i'] + (i - i')"""
        if self.rlbwt.run_index(i) != self.rlbwt.run_index(anchor):
            raise PositionError(f"位置 {i} 与 {anchor} 不在同一游程")
        return anchor_lf + (i - anchor)

    def backward_step(self, i: int, c: int) -> int:
        """模式 P 的秩为 i 时，cP 的秩"""
        return self.c_array(c) + self.rank(c, i)

    def backward_search(self, pattern: Sequence[int]) -> tuple[int, int]:
        """
        返回 (lo, hi)：lo 为严格小于 P 的后缀数，hi 为小于等于 P 前缀块的后缀数，
        出现次数为 hi - lo。空模式对应 (0, n)。
        """
        lo, hi = 0, self.n
        for c in reversed(pattern):
            lo = self.backward_step(lo, c)
            hi = self.backward_step(hi, c)
            if lo >= hi:
                return lo, lo
        return lo, hi

    def invert(self) -> list[int]:
        """由 BWT 还原文本（要求唯一的最小哨兵编码 0）"""
        if self.count(0) != 1:
            raise ConstructionError("还原文本需要恰好一个编码为 0 的哨兵")
        out = []
        x = self.select(0, 1)
        for _ in range(self.n):
            out.append(self.bwt_at(x))
            x = self.lf(x)
        out.reverse()
        return out
