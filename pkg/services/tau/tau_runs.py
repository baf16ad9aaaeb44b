from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from core.errors import ParameterError, PositionError
from services.rlbwt.rank_select import RankSelectSupport


@dataclass(frozen=True)
class TauRuns:
    """
    τ-游程：相邻行共享前 τ 个前驱符号的最大区间。
    starts 即 R_τ；substrings[k] 是第 k 个 τ-游程的 τ-子串（文本顺序），
    lf_tau[k] 是其起点的 LF^τ 值。
    """
    tau: int
    n: int
    starts: tuple[int, ...]
    substrings: tuple[tuple[int, ...], ...] | None = None
    lf_tau: tuple[int, ...] | None = None

    def run_index(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PositionError(f"位置越界：{i}（n={self.n}）")
        return bisect_right(self.starts, i) - 1

    def lf_tau_at(self, i: int) -> int:
        if self.lf_tau is None:
            raise PositionError("未保存 LF^τ 采样")
        k = self.run_index(i)
        return self.lf_tau[k] + (i - self.starts[k])

    def substring_at(self, i: int) -> tuple[int, ...]:
        if self.substrings is None:
            raise PositionError("未保存 τ-子串")
        return self.substrings[self.run_index(i)]


def enumerate_tau_runs(
    nav: RankSelectSupport,
    tau: int,
    *,
    substrings: bool = True,
    lf_samples: bool = True,
) -> TauRuns:
    """
    Q_0 是游程起点，Q_j = { Ψ[i] : i ∈ Q_{j-1}, Ψ[i] ∉ Q_0 }，R_τ 为 Q_0..Q_{τ-1} 之并。
    只有 Q_0 的 τ-子串靠 τ 次 LF 求出；沿 Ψ 链往后的成员由前驱平移一位得到。
    """
    if tau < 1:
        raise ParameterError(f"τ 至少为 1：{tau}")

    roots = nav.rlbwt.starts
    root_set = set(roots)
    sub: dict[int, tuple[int, ...]] = {}
    lft: dict[int, int] = {}

    if substrings or lf_samples:
        for b in roots:
            symbols = []
            x = b
            for _ in range(tau):
                symbols.append(nav.bwt_at(x))
                x = nav.lf(x)
            if substrings:
                symbols.reverse()
                sub[b] = tuple(symbols)
            if lf_samples:
                lft[b] = x

    members = list(roots)
    frontier = list(roots)
    for _ in range(tau - 1):
        following = []
        for i in frontier:
            p = nav.psi(i)
            if p in root_set:
                continue
            following.append(p)
            if substrings:
                sub[p] = sub[i][1:] + (nav.first_symbol(i),)
            if lf_samples:
                # LF^τ[Ψ[i]] = LF^{τ-1}[i] = Ψ[LF^τ[i]]
                lft[p] = nav.psi(lft[i])
        if not following:
            break
        members.extend(following)
        frontier = following

    members.sort()
    return TauRuns(
        tau=tau,
        n=nav.n,
        starts=tuple(members),
        substrings=tuple(sub[b] for b in members) if substrings else None,
        lf_tau=tuple(lft[b] for b in members) if lf_samples else None,
    )


def assign_names(groups: Sequence[Sequence[tuple[int, ...]]]) -> list[list[int]]:
    """
    对若干组等长 τ-子串做 LSD 排序并赋予保序名字：
    名字相同当且仅当子串相同，名字的大小关系即子串的字典序。
    """
    items = [s for group in groups for s in group]
    if not items:
        return [[] for _ in groups]
    width = len(items[0])
    order = list(range(len(items)))
    # list.sort 是稳定排序，逐位从低到高即 LSD
    for pos in range(width - 1, -1, -1):
        order.sort(key=lambda t: items[t][pos])

    names = [0] * len(items)
    name = -1
    previous = None
    for t in order:
        if previous is None or items[t] != items[previous]:
            name += 1
        names[t] = name
        previous = t

    out = []
    offset = 0
    for group in groups:
        out.append(names[offset:offset + len(group)])
        offset += len(group)
    return out


@dataclass(frozen=True)
class TauNameIndex:
    """单个文本的 τ-游程及其保序名字"""
    tau: int
    n: int
    starts: tuple[int, ...]
    names: tuple[int, ...]
    lf_tau: tuple[int, ...]

    def name_at(self, i: int) -> int:
        """第 i 行之前 τ 个符号（循环）的名字"""
        if not 1 <= i <= self.n:
            raise PositionError(f"位置越界：{i}（n={self.n}）")
        return self.names[bisect_right(self.starts, i) - 1]


def build_name_index(nav: RankSelectSupport, tau: int) -> TauNameIndex:
    runs = enumerate_tau_runs(nav, tau)
    (names,) = assign_names([runs.substrings])
    return TauNameIndex(tau=tau, n=runs.n, starts=runs.starts, names=tuple(names), lf_tau=runs.lf_tau)
