from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from core.errors import ConstructionError, PositionError, TextInputError


@dataclass(frozen=True)
class Rlbwt:
    """游程压缩 BWT：游程起点 λ_1 < … < λ_r 与游程符号 c_1..c_r"""
    n: int
    sigma: int
    starts: tuple[int, ...]
    symbols: tuple[int, ...]

    def __post_init__(self):
        if not self.starts or self.starts[0] != 1:
            raise ConstructionError("游程起点必须从 1 开始")
        if len(self.starts) != len(self.symbols):
            raise ConstructionError("游程起点与符号数量不一致")
        for k in range(1, len(self.starts)):
            if self.starts[k] <= self.starts[k - 1]:
                raise ConstructionError(f"游程起点未严格递增：第 {k} 个")
            if self.symbols[k] == self.symbols[k - 1]:
                raise ConstructionError(f"相邻游程符号相同：第 {k} 个")
        if self.starts[-1] > self.n:
            raise ConstructionError("游程起点超出 n")

    @classmethod
    def from_bwt(cls, bwt: Sequence[int], sigma: int | None = None) -> Rlbwt:
        if not len(bwt):
            raise TextInputError("BWT 为空")
        starts, symbols = [], []
        for i, c in enumerate(bwt, start=1):
            if not symbols or symbols[-1] != c:
                starts.append(i)
                symbols.append(c)
        if sigma is None:
            sigma = max(symbols) + 1
        return cls(n=len(bwt), sigma=sigma, starts=tuple(starts), symbols=tuple(symbols))

    @property
    def r(self) -> int:
        return len(self.starts)

    def run_end(self, k: int) -> int:
        """第 k 个游程（0 起点）的最后位置"""
        return self.starts[k + 1] - 1 if k + 1 < len(self.starts) else self.n

    def run_length(self, k: int) -> int:
        return self.run_end(k) - self.starts[k] + 1

    def run_index(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise PositionError(f"BWT 位置越界：{i}（n={self.n}）")
        return bisect_right(self.starts, i) - 1

    def symbol_at(self, i: int) -> int:
        return self.symbols[self.run_index(i)]

    def is_run_start(self, i: int) -> bool:
        k = self.run_index(i)
        return self.starts[k] == i

    def iter_runs(self) -> Iterator[tuple[int, int, int]]:
        """依次给出 (起点, 终点, 符号)"""
        for k, (start, symbol) in enumerate(zip(self.starts, self.symbols)):
            yield start, self.run_end(k), symbol

    def decompress(self) -> list[int]:
        out: list[int] = []
        for start, end, symbol in self.iter_runs():
            out.extend([symbol] * (end - start + 1))
        return out


class RunAppender:
    """按顺序追加 (符号, 长度)，自动合并相邻同符号游程"""

    def __init__(self):
        self._starts: list[int] = []
        self._symbols: list[int] = []
        self._length = 0

    def append(self, symbol: int, length: int):
        if length <= 0:
            return
        if not self._symbols or self._symbols[-1] != symbol:
            self._starts.append(self._length + 1)
            self._symbols.append(symbol)
        self._length += length

    def extend(self, runs: Iterable[tuple[int, int]]):
        for symbol, length in runs:
            self.append(symbol, length)

    @property
    def length(self) -> int:
        return self._length

    def build(self, sigma: int) -> Rlbwt:
        if not self._length:
            raise ConstructionError("没有追加任何游程")
        return Rlbwt(n=self._length, sigma=sigma, starts=tuple(self._starts), symbols=tuple(self._symbols))
