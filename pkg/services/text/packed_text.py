from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence, Union

from bitarray import bitarray, frozenbitarray
from bitarray.util import ba2int, int2ba

from core.constants import WORD_BITS
from core.errors import ParameterError, PositionError, TextInputError

RawText = Union[bytes, bytearray, str, Sequence[int]]

KIND_BYTES = "bytes"
KIND_STR = "str"
KIND_INTS = "ints"


def bits_for(sigma: int) -> int:
    """编码 [0, sigma) 所需的定长位数（至少 1 位）"""
    return max(1, (sigma - 1).bit_length())


def pack_codes(codes: Sequence[int], bits: int) -> frozenbitarray:
    payload = bitarray(endian="big")
    for code in codes:
        payload.extend(int2ba(code, length=bits, endian="big"))
    return frozenbitarray(payload)


@dataclass(frozen=True)
class PackedText:
    """
    定长位打包的文本：
    - 末尾 sentinels 个哨兵编码为 0..p-1，从左到右递增
    - 其余符号按原字母表升序编号，整体上移 p
    """
    n: int
    sigma: int
    bits: int
    payload: frozenbitarray
    sentinels: int
    alphabet: tuple
    kind: str = KIND_INTS

    def access(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise PositionError(f"文本位置越界：{j}（n={self.n}）")
        offset = (j - 1) * self.bits
        return ba2int(self.payload[offset:offset + self.bits])

    def codes(self) -> list[int]:
        bits = self.bits
        payload = self.payload
        return [ba2int(payload[o:o + bits]) for o in range(0, self.n * bits, bits)]

    @property
    def user_length(self) -> int:
        return self.n - self.sentinels

    def symbol_of(self, code: int) -> Any:
        """编码还原成原符号；哨兵没有原符号"""
        if code < self.sentinels or code >= self.sigma:
            raise PositionError(f"编码 {code} 不对应原字母表符号")
        return self.alphabet[code - self.sentinels]

    def decode(self) -> RawText:
        """还原去掉哨兵的原始输入"""
        symbols = [self.symbol_of(c) for c in self.codes()[:self.user_length]]
        if self.kind == KIND_BYTES:
            return bytes(symbols)
        if self.kind == KIND_STR:
            return "".join(symbols)
        return symbols

    def with_sentinels(self, count: int) -> PackedText:
        """换成 count 个哨兵的同一文本（构建时用于整除填充）"""
        if count < 1:
            raise ParameterError(f"哨兵个数至少为 1：{count}")
        shift = count - self.sentinels
        body = [c + shift for c in self.codes()[:self.user_length]]
        return _assemble(body, count, self.alphabet, self.kind)


def _assemble(body: list[int], sentinels: int, alphabet: tuple, kind: str) -> PackedText:
    sigma = len(alphabet) + sentinels
    bits = bits_for(sigma)
    if bits > WORD_BITS:
        raise TextInputError(f"字母表过大：需要 {bits} 位，超过机器字宽 {WORD_BITS}")
    codes = body + list(range(sentinels))
    return PackedText(
        n=len(codes),
        sigma=sigma,
        bits=bits,
        payload=pack_codes(codes, bits),
        sentinels=sentinels,
        alphabet=alphabet,
        kind=kind,
    )


def load_text(raw: RawText, sentinels: int = 1) -> PackedText:
    """把字节串、字符串或整数序列装入 PackedText，并追加哨兵"""
    if isinstance(raw, (bytes, bytearray)):
        symbols, kind = list(raw), KIND_BYTES
    elif isinstance(raw, str):
        symbols, kind = list(raw), KIND_STR
    else:
        symbols, kind = list(raw), KIND_INTS
        if any(not isinstance(s, int) for s in symbols):
            raise TextInputError("整数序列中含有非整数元素")
    if not symbols:
        raise TextInputError("输入为空")
    if sentinels < 1:
        raise ParameterError(f"哨兵个数至少为 1：{sentinels}")

    alphabet = tuple(sorted(set(symbols)))
    rank = {s: i + sentinels for i, s in enumerate(alphabet)}
    return _assemble([rank[s] for s in symbols], sentinels, alphabet, kind)


@dataclass(frozen=True)
class SuperText:
    """
    超字母表文本 T_i：每 width 个原符号合成一个超符号。
    编码高位在前，数值序与块的字典序一致。
    """
    text: PackedText
    width: int

    @property
    def length(self) -> int:
        return self.text.n // self.width

    @property
    def base(self) -> int:
        """超符号编码空间大小 sigma^width"""
        return self.text.sigma ** self.width

    def access(self, j: int) -> int:
        if not 1 <= j <= self.length:
            raise PositionError(f"超文本位置越界：{j}（长度 {self.length}）")
        sigma = self.text.sigma
        first = (j - 1) * self.width + 1
        code = 0
        for t in range(self.width):
            code = code * sigma + self.text.access(first + t)
        return code

    def codes(self) -> list[int]:
        sigma = self.text.sigma
        flat = self.text.codes()
        out = []
        for start in range(0, len(flat), self.width):
            code = 0
            for c in flat[start:start + self.width]:
                code = code * sigma + c
            out.append(code)
        return out


def regroup(text: PackedText, width: int) -> SuperText:
    if width < 1 or text.n % width:
        raise ParameterError(f"分组宽度 {width} 不能整除文本长度 {text.n}")
    if width * text.bits > WORD_BITS:
        raise ParameterError(f"分组宽度 {width} 超出机器字（{text.bits} 位/符号）")
    return SuperText(text=text, width=width)
