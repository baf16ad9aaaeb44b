"""
游程压缩后缀数组。

顶层查找表 LT 把 [1..n] 切成大小 2H₀、相互重叠 H₀ 的块；
之后每一层在每个游程起点 b 周围放 4τ-1 个大小 2H 的块（H 逐层缩小 τ 倍），
最后一层之下直接保存游程起点附近的 SA 片段。
每个块记录 LF 距离 d 与捷径 LF^d[s]，查询时逐层把长度至多 α 的片段搬到离游程起点更近的地方，
累计的 d 之和加回片段值即得 SA。

块起点、片段范围都能由游程起点、块下标和层的块大小推出，不写入文件。
"""

from __future__ import annotations

import math
import struct
from array import array
from bisect import bisect_right
from dataclasses import dataclass
from typing import BinaryIO, Iterable

from bitarray import bitarray
from bitarray.util import ba2int, int2ba, zeros

from core.constants import RLCSA_MAGIC
from core.errors import FormatError, ParameterError, PositionError
from core.logger import get_logger
from core.models import QueryStats
from services.support.lf_shortcut import LfShortcutEngine

_U64 = struct.Struct("<Q")
_HEADER_FIELDS = 13
_WORD_BITS = 64


@dataclass(frozen=True)
class ShortcutBlock:
    distance: int
    anchor: int     # 像中第一个游程起点所属游程的下标
    offset: int     # run_starts[anchor] - LF^d[s]，落在 [0, 块长)


@dataclass(frozen=True)
class RlcsaLevel:
    """blocks[k][i + 2τ] 是第 k 个游程起点处的第 i 个块，被裁成空的位置为 None"""
    level: int
    block_size: int
    blocks: tuple[tuple[ShortcutBlock | None, ...], ...]


@dataclass(frozen=True)
class SaSegment:
    lo: int
    values: array

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1


@dataclass(frozen=True)
class FieldWidths:
    """打包时各字段的位宽"""
    position: int
    distance: int
    anchor: int
    offset: int

    @property
    def block(self) -> int:
        return self.distance + self.anchor + self.offset


class Rlcsa:
    def __init__(
        self,
        n: int,
        sigma: int,
        tau: int,
        chunk: int,
        top_size: int,
        run_starts: tuple[int, ...],
        run_sa: tuple[int, ...],
        lookup: tuple[ShortcutBlock, ...],
        levels: tuple[RlcsaLevel, ...],
        segments: tuple[SaSegment, ...],
    ):
        self.n = n
        self.sigma = sigma
        self.tau = tau
        self.chunk = chunk
        self.top_size = top_size
        self.run_starts = run_starts
        self.run_sa = run_sa
        self.lookup = lookup
        self.levels = levels
        self.segments = segments
        self.stats = QueryStats()

    @property
    def r(self) -> int:
        return len(self.run_starts)

    @property
    def level_count(self) -> int:
        return len(self.levels)

    def _blocks(self) -> Iterable[ShortcutBlock]:
        yield from self.lookup
        for level in self.levels:
            for row in level.blocks:
                yield from (block for block in row if block is not None)

    def field_widths(self) -> FieldWidths:
        distance = anchor = offset = 0
        for block in self._blocks():
            distance = max(distance, block.distance)
            anchor = max(anchor, block.anchor)
            offset = max(offset, block.offset)
        return FieldWidths(
            position=self.n.bit_length(),
            distance=distance.bit_length(),
            anchor=anchor.bit_length(),
            offset=offset.bit_length(),
        )

    def payload_bits(self, widths: FieldWidths | None = None) -> int:
        widths = widths or self.field_widths()
        bits = 2 * self.r * widths.position + len(self.lookup) * widths.block
        for level in self.levels:
            bits += widths.position
            for row in level.blocks:
                bits += sum(1 + widths.block if block is not None else 1 for block in row)
        bits += sum(len(seg.values) for seg in self.segments) * widths.position
        return bits

    def stored_words(self) -> int:
        """RCSA1 文件中头部与打包载荷占用的 64 位字数"""
        return _HEADER_FIELDS + math.ceil(self.payload_bits() / _WORD_BITS)

    def _follow(self, block: ShortcutBlock, q: int, start: int) -> int:
        target = self.run_starts[block.anchor] - block.offset
        return target + (q - start)

    def _descend(self, q: int, length: int) -> list[int]:
        """把 [q..q+length-1] 逐层搬到游程起点附近，返回该片段的 SA 值"""
        j = (q - 1) // self.top_size
        block = self.lookup[j]
        d_sum = block.distance
        q = self._follow(block, q, j * self.top_size + 1)
        anchor = block.anchor
        depth = 1
        for level in self.levels:
            b = self.run_starts[anchor]
            i = (q - b) // level.block_size
            i = max(-2 * self.tau, min(2 * self.tau - 2, i))
            block = level.blocks[anchor][i + 2 * self.tau]
            d_sum += block.distance
            q = self._follow(block, q, max(1, b + i * level.block_size))
            anchor = block.anchor
            depth += 1
        segment = self.segments[anchor]
        offset = q - segment.lo
        self.stats.record(depth)
        return [v + d_sum for v in segment.values[offset:offset + length]]

    def sa_at(self, p: int) -> int:
        if not 1 <= p <= self.n:
            raise PositionError(f"SA 下标越界：{p}（n={self.n}）")
        k = bisect_right(self.run_starts, p) - 1
        if self.run_starts[k] == p:
            self.stats.record(0)
            return self.run_sa[k]
        return self._descend(p, 1)[0]

    def sa_segment(self, p: int, length: int) -> list[int]:
        if length < 0 or p < 1 or p + length - 1 > self.n:
            raise PositionError(f"SA 区间越界：起点 {p}，长度 {length}（n={self.n}）")
        out: list[int] = []
        q = p
        end = p + length - 1
        while q <= end:
            size = min(self.chunk, end - q + 1)
            out.extend(self._descend(q, size))
            q += size
        return out


def chunk_length(n: int, r: int, tau: int) -> int:
    """α = max(1, ceil(log_τ(n/r)))"""
    if n <= r:
        return 1
    ratio = n / r
    alpha = 1
    while tau ** alpha < ratio:
        alpha += 1
    return alpha


def segment_bounds(b: int, last_size: int, n: int) -> tuple[int, int]:
    """游程起点 b 周围保存显式 SA 的闭区间"""
    reach = 2 * last_size - 1
    return max(1, b - reach), min(n, b + reach)


def build_rlcsa(engine: LfShortcutEngine, tau: int) -> Rlcsa:
    if tau < 2:
        raise ParameterError(f"RLCSA 的 τ 至少为 2：{tau}")
    log = get_logger("RlIndex.rlcsa")
    nav, support = engine.nav, engine.support
    n, r = nav.n, nav.rlbwt.r
    starts = engine.run_starts

    chunk = chunk_length(n, r, tau)
    top = max(chunk, math.ceil(n / r))
    log.debug(f"RLCSA 参数：τ={tau}，α={chunk}，H₀={top}")

    def make_block(s: int, e: int) -> ShortcutBlock:
        cut = engine.shortcut(s, e)
        anchor = engine.anchor_run(cut.target)
        return ShortcutBlock(distance=cut.distance, anchor=anchor, offset=starts[anchor] - cut.target)

    lookup = tuple(
        make_block(s, min(n, s + 2 * top - 1))
        for s in range(1, n + 1, top)
    )

    levels = []
    size = top
    while size > chunk:
        size = max(chunk, math.ceil(size / tau))
        rows = []
        for b in starts:
            row = []
            for i in range(-2 * tau, 2 * tau - 1):
                s = max(1, b + i * size)
                e = min(n, b + i * size + 2 * size - 1)
                row.append(make_block(s, e) if s <= e else None)
            rows.append(tuple(row))
        levels.append(RlcsaLevel(level=len(levels) + 1, block_size=size, blocks=tuple(rows)))
        log.debug(f"第 {len(levels)} 层：块大小 {size}")

    segments = []
    for b in starts:
        lo, hi = segment_bounds(b, size, n)
        segments.append(SaSegment(lo=lo, values=array("Q", (support.sa(i) for i in range(lo, hi + 1)))))

    index = Rlcsa(
        n=n,
        sigma=nav.rlbwt.sigma,
        tau=tau,
        chunk=chunk,
        top_size=top,
        run_starts=starts,
        run_sa=engine.run_sa,
        lookup=lookup,
        levels=tuple(levels),
        segments=tuple(segments),
    )
    log.info(f"RLCSA 构建完成：{len(levels)} 层，{index.stored_words()} 个机器字")
    return index


# ---------------- RCSA1 ----------------
# 头部为 13 个 u64；载荷是按固定位宽首尾相接、补齐到 64 位整数倍的小端位流

class _BitWriter:
    def __init__(self):
        self.bits = bitarray(endian="little")

    def put(self, value: int, width: int):
        if width:
            self.bits.extend(int2ba(value, length=width, endian="little"))

    def put_block(self, block: ShortcutBlock, widths: FieldWidths):
        self.put(block.distance, widths.distance)
        self.put(block.anchor, widths.anchor)
        self.put(block.offset, widths.offset)

    def words(self) -> bitarray:
        self.bits.extend(zeros(-len(self.bits) % _WORD_BITS, endian="little"))
        return self.bits


class _BitReader:
    def __init__(self, bits: bitarray):
        self.bits = bits
        self.pos = 0

    def get(self, width: int) -> int:
        if not width:
            return 0
        if self.pos + width > len(self.bits):
            raise FormatError("RCSA1 载荷被截断")
        value = ba2int(self.bits[self.pos:self.pos + width])
        self.pos += width
        return value

    def get_block(self, widths: FieldWidths) -> ShortcutBlock:
        return ShortcutBlock(
            distance=self.get(widths.distance),
            anchor=self.get(widths.anchor),
            offset=self.get(widths.offset),
        )


def write_rlcsa(index: Rlcsa, stream: BinaryIO):
    widths = index.field_widths()
    writer = _BitWriter()
    for v in index.run_starts:
        writer.put(v, widths.position)
    for v in index.run_sa:
        writer.put(v, widths.position)
    for block in index.lookup:
        writer.put_block(block, widths)
    for level in index.levels:
        writer.put(level.block_size, widths.position)
        for row in level.blocks:
            for block in row:
                writer.put(int(block is not None), 1)
                if block is not None:
                    writer.put_block(block, widths)
    for segment in index.segments:
        for v in segment.values:
            writer.put(v, widths.position)
    payload = writer.words()

    stream.write(RLCSA_MAGIC)
    header = (
        index.n, index.sigma, index.r, index.tau, index.level_count, index.chunk,
        index.top_size, len(index.lookup), widths.position, widths.distance,
        widths.anchor, widths.offset, len(payload) // _WORD_BITS,
    )
    for v in header:
        stream.write(_U64.pack(v))
    stream.write(payload.tobytes())


def read_rlcsa(stream: BinaryIO) -> Rlcsa:
    magic = stream.read(len(RLCSA_MAGIC))
    if magic != RLCSA_MAGIC:
        raise FormatError(f"魔数不符：{magic!r}")
    data = stream.read(_U64.size * _HEADER_FIELDS)
    if len(data) != _U64.size * _HEADER_FIELDS:
        raise FormatError("RCSA1 头部被截断")
    (n, sigma, r, tau, level_count, chunk, top, lookup_count,
     w_pos, w_dist, w_anchor, w_off, word_count) = (v for (v,) in _U64.iter_unpack(data))
    if tau < 2 or r < 1 or top < 1 or max(w_pos, w_dist, w_anchor, w_off) > _WORD_BITS:
        raise FormatError("RCSA1 头部参数非法")
    widths = FieldWidths(position=w_pos, distance=w_dist, anchor=w_anchor, offset=w_off)

    body = stream.read(word_count * _U64.size)
    if len(body) != word_count * _U64.size:
        raise FormatError("RCSA1 载荷被截断")
    bits = bitarray(endian="little")
    bits.frombytes(body)
    reader = _BitReader(bits)

    run_starts = tuple(reader.get(w_pos) for _ in range(r))
    run_sa = tuple(reader.get(w_pos) for _ in range(r))
    lookup = tuple(reader.get_block(widths) for _ in range(lookup_count))
    per_run = 4 * tau - 1
    levels = []
    size = top
    for level in range(1, level_count + 1):
        size = reader.get(w_pos)
        rows = []
        for _ in range(r):
            row = []
            for _ in range(per_run):
                present = reader.get(1)
                row.append(reader.get_block(widths) if present else None)
            rows.append(tuple(row))
        levels.append(RlcsaLevel(level=level, block_size=size, blocks=tuple(rows)))
    segments = []
    for b in run_starts:
        lo, hi = segment_bounds(b, size, n)
        segments.append(SaSegment(lo=lo, values=array("Q", (reader.get(w_pos) for _ in range(lo, hi + 1)))))
    for block in lookup:
        if block.anchor >= r:
            raise FormatError("RCSA1 块指向不存在的游程")
    return Rlcsa(
        n=n, sigma=sigma, tau=tau, chunk=chunk, top_size=top,
        run_starts=run_starts, run_sa=run_sa, lookup=lookup,
        levels=tuple(levels), segments=tuple(segments),
    )
