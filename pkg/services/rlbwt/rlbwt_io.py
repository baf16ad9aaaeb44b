"""RLBW1 格式：魔数后接小端 u64 n、u32 sigma、u64 r，以及 r 条 (u64 起点, u32 符号)"""

from __future__ import annotations

import struct
from typing import BinaryIO

from core.constants import RLBWT_MAGIC
from core.errors import ConstructionError, FormatError
from services.rlbwt.rlbwt import Rlbwt

_HEADER = struct.Struct("<QIQ")
_RECORD = struct.Struct("<QI")


def write_rlbwt(rlbwt: Rlbwt, stream: BinaryIO):
    if rlbwt.sigma >= 1 << 32 or max(rlbwt.symbols) >= 1 << 32:
        raise FormatError("RLBW1 只能保存 32 位以内的符号编码")
    stream.write(RLBWT_MAGIC)
    stream.write(_HEADER.pack(rlbwt.n, rlbwt.sigma, rlbwt.r))
    for start, symbol in zip(rlbwt.starts, rlbwt.symbols):
        stream.write(_RECORD.pack(start, symbol))


def read_rlbwt(stream: BinaryIO) -> Rlbwt:
    magic = stream.read(len(RLBWT_MAGIC))
    if magic != RLBWT_MAGIC:
        raise FormatError(f"魔数不符：{magic!r}")
    header = stream.read(_HEADER.size)
    if len(header) != _HEADER.size:
        raise FormatError("RLBW1 头部被截断")
    n, sigma, r = _HEADER.unpack(header)
    body = stream.read(_RECORD.size * r)
    if len(body) != _RECORD.size * r:
        raise FormatError("RLBW1 记录被截断")
    starts, symbols = [], []
    for start, symbol in _RECORD.iter_unpack(body):
        starts.append(start)
        symbols.append(symbol)
    try:
        return Rlbwt(n=n, sigma=sigma, starts=tuple(starts), symbols=tuple(symbols))
    except ConstructionError as e:
        raise FormatError(f"RLBW1 内容不合法：{e}") from e
