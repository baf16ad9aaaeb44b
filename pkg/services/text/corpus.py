"""确定性语料生成：随机、周期、Fibonacci、带突变的重复块"""

from __future__ import annotations

import random

from core.constants import DEFAULT_REPEAT_ALPHABET, GEN_HEADER_PREFIX
from core.errors import ParameterError


def fibonacci_word(order: int) -> str:
    """F_1 = b, F_2 = a, F_k = F_{k-1} F_{k-2}"""
    if order < 1:
        raise ParameterError(f"Fibonacci 阶数至少为 1：{order}")
    prev, cur = "b", "a"
    if order == 1:
        return prev
    for _ in range(order - 2):
        prev, cur = cur, cur + prev
    return cur


def random_text(n: int, sigma: int, seed: int) -> list[int]:
    if n < 1 or sigma < 1:
        raise ParameterError(f"随机文本参数非法：n={n}, sigma={sigma}")
    rng = random.Random(seed)
    return [rng.randrange(sigma) for _ in range(n)]


def periodic_text(period: str, copies: int) -> str:
    if not period or copies < 1:
        raise ParameterError("周期串与重复次数必须非空/为正")
    return period * copies


def mutated_repeat(
    block: int,
    copies: int,
    mut_rate: float,
    seed: int,
    alphabet: str = DEFAULT_REPEAT_ALPHABET,
) -> str:
    """随机基块重复 copies 次，每个位置以 mut_rate 概率替换为另一个符号"""
    if block < 1 or copies < 1:
        raise ParameterError(f"重复语料参数非法：block={block}, copies={copies}")
    if not 0.0 <= mut_rate <= 1.0:
        raise ParameterError(f"突变率应在 [0, 1]：{mut_rate}")
    if len(alphabet) < 2 and mut_rate > 0:
        raise ParameterError("突变至少需要两个字母")
    rng = random.Random(seed)
    base = [rng.choice(alphabet) for _ in range(block)]
    out = []
    for _ in range(copies):
        for ch in base:
            if mut_rate and rng.random() < mut_rate:
                ch = rng.choice([c for c in alphabet if c != ch])
            out.append(ch)
    return "".join(out)


def gen_header(kind: str, **params) -> bytes:
    """生成首行注释头，记录生成器参数（含种子）"""
    fields = " ".join(f"{k}={v}" for k, v in params.items())
    return GEN_HEADER_PREFIX + f" {kind} {fields}".rstrip().encode("ascii") + b"\n"
