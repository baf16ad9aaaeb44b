from __future__ import annotations

import math
import struct
from collections import deque
from dataclasses import dataclass
from typing import BinaryIO, Callable, Iterable, Sequence

from core.constants import LZ77_MAGIC, LZ77_TAG_COPY, LZ77_TAG_LITERAL
from core.errors import FormatError, ParameterError, PositionError
from core.logger import get_logger
from core.models import Lz77Phrase, QueryStats
from services.rlbwt.rank_select import RankSelectSupport
from services.support.lf_shortcut import LfShortcutEngine
from services.support.plcp import LceEngine
from services.support.sa_isa import SaIsaSupport

_COUNT = struct.Struct("<Q")
_RECORD = struct.Struct("<BQQ")


class _BlockMinTree:
    """块最小值上的线段树，支持按方向找第一个小于阈值的块"""

    def __init__(self, values: Sequence[int]):
        self.count = len(values)
        self.size = 1 << max(0, math.ceil(math.log2(self.count or 1)))
        self.tree = [math.inf] * (2 * self.size)
        for i, v in enumerate(values):
            self.tree[self.size + i] = v
        for node in range(self.size - 1, 0, -1):
            self.tree[node] = min(self.tree[2 * node], self.tree[2 * node + 1])

    def _find_first(self, node, nl, nr, lo, target):
        if nr < lo or self.tree[node] >= target:
            return None
        if nl == nr:
            return nl
        mid = (nl + nr) // 2
        left = self._find_first(2 * node, nl, mid, lo, target)
        if left is not None:
            return left
        return self._find_first(2 * node + 1, mid + 1, nr, lo, target)

    def _find_last(self, node, nl, nr, hi, target):
        if nl > hi or self.tree[node] >= target:
            return None
        if nl == nr:
            return nl
        mid = (nl + nr) // 2
        right = self._find_last(2 * node + 1, mid + 1, nr, hi, target)
        if right is not None:
            return right
        return self._find_last(2 * node, nl, mid, hi, target)

    def first_below(self, lo: int, target: int) -> int | None:
        """下标 ≥ lo 且值 < target 的最左块"""
        if lo >= self.count:
            return None
        return self._find_first(1, 0, self.size - 1, lo, target)

    def last_below(self, hi: int, target: int) -> int | None:
        """下标 ≤ hi 且值 < target 的最右块"""
        if hi < 0:
            return None
        return self._find_last(1, 0, self.size - 1, hi, target)


class NsvPsvSupport:
    """
    按大小 τ 把 SA 分块，保存每块最小值 (值, 位置)。
    只有像中含游程起点的窗口显式求最小值；其余完整块经 LF 捷径落到这些窗口上，
    SA[(j-1)τ+1..jτ] = d + SA[q..q+τ-1]，最小值平移 d 即可。
    """

    def __init__(
        self,
        nav: RankSelectSupport,
        support: SaIsaSupport,
        engine: LfShortcutEngine | None,
        tau: int,
        dense: bool = False,
    ):
        if not 1 <= tau <= nav.n:
            raise ParameterError(f"分块大小超出范围 [1, {nav.n}]：{tau}")
        if engine is None and not dense:
            raise ParameterError("共享分块需要 LF 捷径引擎")
        self.nav = nav
        self.support = support
        self.engine = engine
        self.n = nav.n
        self.tau = tau
        self.dense = dense
        self.stats = QueryStats()
        log = get_logger("RlIndex.nsv_psv")

        block_count = (self.n + tau - 1) // tau
        window = {} if dense else self._boundary_windows()
        minima: list[tuple[int, int]] = []
        shared = 0
        for j in range(block_count):
            s, e = self.block_range(j)
            if dense or e - s + 1 < tau:
                minima.append(self._explicit_min(s, e))
                continue
            cut = engine.shortcut(s, e)
            value, pos = window[cut.target]
            minima.append((value + cut.distance, s + (pos - cut.target)))
            shared += cut.distance > 0
        self.minima = minima
        self._tree = _BlockMinTree([v for v, _ in minima])
        log.debug(f"NSV/PSV：τ={tau}，{block_count} 块，其中 {shared} 块经 LF 捷径共享，窗口表 {len(window)} 项")

    def block_range(self, j: int) -> tuple[int, int]:
        s = j * self.tau + 1
        return s, min(self.n, s + self.tau - 1)

    def _explicit_min(self, s: int, e: int) -> tuple[int, int]:
        return min((self.support.sa(i), i) for i in range(s, e + 1))

    def _boundary_windows(self) -> dict[int, tuple[int, int]]:
        """所有起点落在 [b-τ+1, b] 内的长度 τ 窗口的最小值，用滑动窗口求出"""
        tau, n = self.tau, self.n
        cache: dict[int, int] = {}
        table: dict[int, tuple[int, int]] = {}
        for b in self.nav.rlbwt.starts:
            lo, hi = max(1, b - tau + 1), min(n, b + tau - 1)
            if hi - lo + 1 < tau:
                continue
            queue: deque[tuple[int, int]] = deque()
            for i in range(lo, hi + 1):
                if i not in cache:
                    cache[i] = self.support.sa(i)
                value = cache[i]
                while queue and queue[-1][0] > value:
                    queue.pop()
                queue.append((value, i))
                q = i - tau + 1
                if q < lo:
                    continue
                while queue[0][1] < q:
                    queue.popleft()
                if q <= b:
                    table[q] = queue[0]
        return table

    def block_min(self, j: int) -> tuple[int, int]:
        return self.minima[j]

    def _scan(self, rows: Iterable[int], value: int) -> int:
        steps = 0
        for x in rows:
            steps += 1
            if self.support.sa(x) < value:
                self.stats.record(steps)
                return x
        self.stats.record(steps)
        return 0

    def nsv(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PositionError(f"NSV 下标越界：{i}（n={self.n}）")
        value = self.support.sa(i)
        j = (i - 1) // self.tau
        _, e = self.block_range(j)
        found = self._scan(range(i + 1, e + 1), value)
        if found:
            return found
        k = self._tree.first_below(j + 1, value)
        if k is None:
            return 0
        s, e = self.block_range(k)
        return self._scan(range(s, e + 1), value)

    def psv(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PositionError(f"PSV 下标越界：{i}（n={self.n}）")
        value = self.support.sa(i)
        j = (i - 1) // self.tau
        s, _ = self.block_range(j)
        found = self._scan(range(i - 1, s - 1, -1), value)
        if found:
            return found
        k = self._tree.last_below(j - 1, value)
        if k is None:
            return 0
        s, e = self.block_range(k)
        return self._scan(range(e, s - 1, -1), value)


@dataclass(frozen=True)
class Lz77Parsing:
    """T[1..n-1] 的贪心 LZ77 短语；字面量的 source 为符号编码"""
    phrases: tuple[Lz77Phrase, ...]
    length: int

    @property
    def z(self) -> int:
        return len(self.phrases)


def parse(
    nav: RankSelectSupport,
    support: SaIsaSupport,
    nsv_psv: NsvPsvSupport,
    engine: LceEngine,
) -> Lz77Parsing:
    """
    短语起点 j 处取 i = ISA[j]，PSV/NSV 给出字典序相邻且位置更靠前的两个后缀，
    两者与 j 的 lce 较长者即最长前缀因子；长度相同时取 PSV，都为 0 时输出字面量。
    """
    log = get_logger("RlIndex.lz77")
    n = nav.n
    phrases = []
    j = 1
    while j <= n - 1:
        i = support.isa(j)
        ip, inn = nsv_psv.psv(i), nsv_psv.nsv(i)
        jp = support.sa(ip) if ip else 0
        jn = support.sa(inn) if inn else 0
        lp = engine.lce(jp, j) if jp else 0
        ln = engine.lce(jn, j) if jn else 0
        if ln > lp:
            phrases.append(Lz77Phrase(source=jn, length=ln))
            j += ln
        elif lp > 0:
            phrases.append(Lz77Phrase(source=jp, length=lp))
            j += lp
        else:
            phrases.append(Lz77Phrase(source=nav.first_symbol(i), length=0))
            j += 1
    log.info(f"LZ77 完成：z={len(phrases)}，n={n - 1}")
    return Lz77Parsing(phrases=tuple(phrases), length=n - 1)


def decode(parsing: Lz77Parsing | Sequence[Lz77Phrase]) -> list[int]:
    """逐短语复制，允许来源与自身重叠"""
    phrases = parsing.phrases if isinstance(parsing, Lz77Parsing) else parsing
    out: list[int] = []
    for phrase in phrases:
        if phrase.is_literal:
            out.append(phrase.source)
            continue
        if not 1 <= phrase.source <= len(out):
            raise FormatError(f"短语来源 {phrase.source} 不在已解码的前缀内（长度 {len(out)}）")
        start = phrase.source - 1
        for t in range(phrase.length):
            out.append(out[start + t])
    return out


def format_phrases(parsing: Lz77Parsing, render: Callable[[int], str] = str) -> list[str]:
    """文本格式：字面量 `L <符号>`，复制 `C <位置> <长度>`"""
    lines = []
    for phrase in parsing.phrases:
        if phrase.is_literal:
            lines.append(f"L {render(phrase.source)}")
        else:
            lines.append(f"C {phrase.source} {phrase.length}")
    return lines


def write_binary(parsing: Lz77Parsing, stream: BinaryIO):
    stream.write(LZ77_MAGIC)
    stream.write(_COUNT.pack(parsing.z))
    for phrase in parsing.phrases:
        if phrase.is_literal:
            stream.write(_RECORD.pack(LZ77_TAG_LITERAL, phrase.source, 0))
        else:
            stream.write(_RECORD.pack(LZ77_TAG_COPY, phrase.source, phrase.length))


def read_binary(stream: BinaryIO) -> Lz77Parsing:
    magic = stream.read(len(LZ77_MAGIC))
    if magic != LZ77_MAGIC:
        raise FormatError(f"魔数不符：{magic!r}")
    header = stream.read(_COUNT.size)
    if len(header) != _COUNT.size:
        raise FormatError("LZ77 头部被截断")
    (z,) = _COUNT.unpack(header)
    body = stream.read(_RECORD.size * z)
    if len(body) != _RECORD.size * z:
        raise FormatError("LZ77 记录被截断")
    phrases = []
    for tag, a, b in _RECORD.iter_unpack(body):
        if tag == LZ77_TAG_LITERAL:
            phrases.append(Lz77Phrase(source=a, length=0))
        elif tag == LZ77_TAG_COPY:
            if b == 0:
                raise FormatError("复制短语长度为 0")
            phrases.append(Lz77Phrase(source=a, length=b))
        else:
            raise FormatError(f"未知的短语标签：{tag}")
    return Lz77Parsing(phrases=tuple(phrases), length=sum(p.span for p in phrases))
