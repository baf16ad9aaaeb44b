from __future__ import annotations

import sys
from pathlib import Path

from core.constants import GEN_HEADER_PREFIX, TEXT_FORMAT_INTS, TEXT_FORMAT_RAW
from core.errors import TextInputError
from services.text.packed_text import PackedText, RawText, load_text


def strip_gen_header(data: bytes) -> bytes:
    """去掉 gen 命令写入的首行注释头"""
    if data.startswith(GEN_HEADER_PREFIX):
        newline = data.find(b"\n")
        return b"" if newline < 0 else data[newline + 1:]
    return data


def parse_int_sequence(data: bytes) -> list[int]:
    """整数序列格式：首行 `n sigma`，随后每行一个十进制编码"""
    lines = [line.strip() for line in data.decode("ascii", errors="strict").splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise TextInputError("整数序列文件为空")
    header = lines[0].split()
    if len(header) != 2:
        raise TextInputError(f"整数序列头部应为 `n sigma`：{lines[0]!r}")
    try:
        n, sigma = int(header[0]), int(header[1])
        codes = [int(line) for line in lines[1:]]
    except ValueError as e:
        raise TextInputError(f"整数序列格式错误：{e}") from e
    if len(codes) != n:
        raise TextInputError(f"头部声明 {n} 个编码，实际 {len(codes)} 个")
    if any(c < 0 or c >= sigma for c in codes):
        raise TextInputError(f"存在超出 [0, {sigma}) 的编码")
    return codes


def format_int_sequence(codes: list[int], sigma: int) -> bytes:
    lines = [f"{len(codes)} {sigma}"] + [str(c) for c in codes]
    return ("\n".join(lines) + "\n").encode("ascii")


def read_raw(source: str) -> RawText:
    """读取文本载荷；source 为 '-' 时读取 stdin"""
    if source == "-":
        data = sys.stdin.buffer.read()
    else:
        path = Path(source)
        if not path.is_file():
            raise TextInputError(f"输入文件不存在：{source}")
        data = path.read_bytes()
    return strip_gen_header(data)


def read_text(source: str, text_format: str = TEXT_FORMAT_RAW) -> PackedText:
    data = read_raw(source)
    if text_format == TEXT_FORMAT_INTS:
        return load_text(parse_int_sequence(data))
    if text_format != TEXT_FORMAT_RAW:
        raise TextInputError(f"未知的文本格式：{text_format}")
    return load_text(data)
