from __future__ import annotations

from core.logger import get_logger
from core.models import LyndonRun
from services.support.plcp import LceEngine


def factor_starts(engine: LceEngine) -> list[int]:
    """
    因子起点恰是后缀的从左到右前缀最小值（$ 视为最小）。
    候选 i 与当前最小 m 比较 ℓ = lce(i, m) 后的一个符号；
    若 i 不更小，i+1..i+ℓ 也都不会更小，直接跳到 i+ℓ+1。
    """
    last = engine.n - 1
    starts = [1]
    current = 1
    i = 2
    while i <= last:
        length, order = engine.lce_compare(i, current)
        if order < 0:
            starts.append(i)
            current = i
            i += 1
        else:
            i += length + 1
    return starts


def lyndon_factorize(engine: LceEngine) -> list[LyndonRun]:
    """去掉哨兵后的文本 T[1..n-1] 的 Lyndon 分解，相同的相邻因子合并为 f^e"""
    log = get_logger("RlIndex.lyndon")
    last = engine.n - 1
    if last < 1:
        return []
    starts = factor_starts(engine)
    bounds = starts + [last + 1]

    runs: list[LyndonRun] = []
    for k in range(len(starts)):
        start, length = bounds[k], bounds[k + 1] - bounds[k]
        if runs:
            prev = runs[-1]
            prev_last = prev.start + (prev.exponent - 1) * prev.length
            if prev.length == length and engine.lce(prev_last, start) >= length:
                runs[-1] = LyndonRun(start=prev.start, length=length, exponent=prev.exponent + 1)
                continue
        runs.append(LyndonRun(start=start, length=length, exponent=1))
    log.info(f"Lyndon 分解完成：m={len(runs)}，因子总数 {len(starts)}")
    return runs
