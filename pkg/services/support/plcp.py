from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO

from bitarray import bitarray, frozenbitarray
from bitarray.util import count_n

from core.constants import PLCP_MAGIC
from core.errors import ConstructionError, FormatError, PositionError
from core.logger import get_logger
from core.models import QueryStats
from services.rlbwt.rank_select import RankSelectSupport
from services.support.sa_isa import SaIsaSupport
from services.tau.tau_runs import TauNameIndex

_U64 = struct.Struct("<Q")
_ONE = bitarray("1", endian="little")


class LceEngine:
    """
    lce(j1, j2) = lcp(T[j1..n], T[j2..n])。
    先以 τ₂ 为步长比较 τ-子串名字（第 j+τ₂ 个后缀所在行的名字就是 T[j..j+τ₂-1]），
    不相等后再沿 Ψ 逐个比较首符号，至多 τ₂ 步。
    """

    def __init__(self, nav: RankSelectSupport, support: SaIsaSupport, names: TauNameIndex):
        if names.n != nav.n:
            raise ConstructionError("名字索引与 BWT 长度不一致")
        self.nav = nav
        self.support = support
        self.names = names
        self.n = nav.n
        self.tau2 = names.tau
        self.stats = QueryStats()

    def _block_name(self, j: int) -> int:
        """T[j..j+τ₂-1] 的名字；位置 n+1 按循环视为 1"""
        follow = j + self.tau2
        row = self.support.primary if follow == self.n + 1 else self.support.isa(follow)
        return self.names.name_at(row)

    def lce(self, j1: int, j2: int) -> int:
        n = self.n
        if not (1 <= j1 <= n and 1 <= j2 <= n):
            raise PositionError(f"LCE 位置越界：({j1}, {j2})（n={n}）")
        if j1 == j2:
            return n - j1 + 1

        tau2 = self.tau2
        length, steps = 0, 0
        a, b = j1, j2
        while max(a, b) + tau2 <= n + 1:
            steps += 1
            if self._block_name(a) != self._block_name(b):
                break
            length += tau2
            a += tau2
            b += tau2

        if a <= n and b <= n:
            x, y = self.support.isa(a), self.support.isa(b)
            while a <= n and b <= n:
                if self.nav.first_symbol(x) != self.nav.first_symbol(y):
                    break
                length += 1
                steps += 1
                a += 1
                b += 1
                x, y = self.nav.psi(x), self.nav.psi(y)
        self.stats.record(steps)
        return length

    def lce_compare(self, j1: int, j2: int) -> tuple[int, int]:
        """(lce, 大小)：大小为负表示后缀 j1 更小"""
        length = self.lce(j1, j2)
        if j1 == j2:
            return length, 0
        # 哨兵唯一，不相同的后缀一定在 n 之前分出大小
        c1 = self.nav.first_symbol(self.support.isa(j1 + length))
        c2 = self.nav.first_symbol(self.support.isa(j2 + length))
        return length, -1 if c1 < c2 else 1

    def compare(self, j1: int, j2: int) -> int:
        return self.lce_compare(j1, j2)[1]


@dataclass(frozen=True)
class IrreducibleList:
    """按文本位置排序的不可约 PLCP 值"""
    n: int
    positions: tuple[int, ...]
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.positions)

    def items(self) -> list[tuple[int, int]]:
        return list(zip(self.positions, self.values))

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def max_value(self) -> int:
        return max(self.values) if self.values else 0


def build_irreducible(nav: RankSelectSupport, support: SaIsaSupport, engine: LceEngine) -> IrreducibleList:
    """对每个游程起点 b 求 LCP[b] = lce(SA[b-1], SA[b])；b = 1 时为 0"""
    log = get_logger("RlIndex.plcp")
    pairs = []
    for b in nav.rlbwt.starts:
        j = support.sa(b)
        value = 0 if b == 1 else engine.lce(support.sa(b - 1), j)
        pairs.append((j, value))
    pairs.sort()
    result = IrreducibleList(
        n=nav.n,
        positions=tuple(j for j, _ in pairs),
        values=tuple(v for _, v in pairs),
    )
    log.info(f"不可约 LCP：{len(result)} 项，总和 {result.total}")
    return result


@dataclass(frozen=True)
class PlcpSucc:
    """
    长度 2n 的位向量：对每个 j，第 2j+PLCP[j] 位（1 起点）置 1。
    PLCP[j] = select(j) - 2j。
    """
    n: int
    bits: frozenbitarray

    def select(self, k: int) -> int:
        """第 k 个 1 的位置（1 起点）"""
        if not 1 <= k <= self.n:
            raise PositionError(f"select 越界：{k}（n={self.n}）")
        return count_n(self.bits, k)

    def get(self, j: int) -> int:
        return self.select(j) - 2 * j

    def values(self) -> list[int]:
        """PLCP[1..n]"""
        out = []
        for index in self.bits.search(_ONE):
            out.append(index + 1 - 2 * (len(out) + 1))
        return out

    def set_positions(self) -> list[int]:
        return [index + 1 for index in self.bits.search(_ONE)]


def expand_to_plcpsucc(irreducible: IrreducibleList, n: int) -> PlcpSucc:
    """可约位置满足 PLCP[j] = PLCP[j-1] - 1，沿文本顺序一次扫描补全"""
    if n < 1:
        raise ConstructionError("文本长度必须为正")
    bits = bitarray(2 * n, endian="little")
    bits.setall(0)
    known = dict(irreducible.items())
    if 1 not in known:
        raise ConstructionError("位置 1 必须是不可约位置")
    value = 0
    for j in range(1, n + 1):
        value = known[j] if j in known else value - 1
        if value < 0:
            raise ConstructionError(f"PLCP[{j}] 推得负值 {value}")
        bits[2 * j + value - 1] = 1
    return PlcpSucc(n=n, bits=frozenbitarray(bits))


def write_plcp(plcp: PlcpSucc, stream: BinaryIO):
    stream.write(PLCP_MAGIC)
    stream.write(_U64.pack(plcp.n))
    stream.write(plcp.bits.tobytes())


def read_plcp(stream: BinaryIO) -> PlcpSucc:
    magic = stream.read(len(PLCP_MAGIC))
    if magic != PLCP_MAGIC:
        raise FormatError(f"魔数不符：{magic!r}")
    header = stream.read(_U64.size)
    if len(header) != _U64.size:
        raise FormatError("PLCP1 头部被截断")
    (n,) = _U64.unpack(header)
    size = (2 * n + 7) // 8
    body = stream.read(size)
    if len(body) != size:
        raise FormatError("PLCP1 位向量被截断")
    bits = bitarray(endian="little")
    bits.frombytes(body)
    del bits[2 * n:]
    if bits.count(1) != n:
        raise FormatError(f"PLCP1 置位数 {bits.count(1)} 与 n={n} 不符")
    return PlcpSucc(n=n, bits=frozenbitarray(bits))
