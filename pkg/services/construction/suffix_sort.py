from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence

from core.constants import SA_BACKEND_COMPARISON, SA_BACKEND_INDUCED
from core.errors import ParameterError


class ISuffixSorter(ABC):
    """后缀数组后端接口"""

    name: str = ""

    @abstractmethod
    def sort(self, codes: Sequence[int]) -> list[int]:
        """返回 1 起点的后缀起始位置，按字典序排列"""


class ComparisonSuffixSorter(ISuffixSorter):
    """直接按切片比较排序，只适合测试与小输入"""

    name = SA_BACKEND_COMPARISON

    def sort(self, codes: Sequence[int]) -> list[int]:
        seq = list(codes)
        return [j + 1 for j in sorted(range(len(seq)), key=lambda j: seq[j:])]


class InducedSuffixSorter(ISuffixSorter):
    """
    诱导排序（SA-IS）。
    字母表先压缩成稠密编号，超符号编码再大也只按出现过的种类分桶。
    末尾补一个虚拟空后缀，结果的第 0 项即为它，返回前去掉。
    """

    name = SA_BACKEND_INDUCED

    def sort(self, codes: Sequence[int]) -> list[int]:
        if not codes:
            return []
        alphabet = sorted(set(codes))
        dense = {c: i for i, c in enumerate(alphabet)}
        string = [dense[c] for c in codes]
        sa = self._induced(string, len(alphabet))
        return [p + 1 for p in sa[1:]]

    # ---------------- SA-IS ----------------

    def _induced(self, string: list[int], alphabet_size: int) -> list[int]:
        is_s = self._classify(string)
        sizes = self._bucket_sizes(string, alphabet_size)

        guessed = self._guess_lms(string, sizes, is_s)
        self._induce_l(string, guessed, sizes, is_s)
        self._induce_s(string, guessed, sizes, is_s)

        summary, summary_alphabet, offsets = self._summarise(string, guessed, is_s)
        summary_sa = self._summary_sa(summary, summary_alphabet)

        result = self._accurate_lms(string, sizes, summary_sa, offsets)
        self._induce_l(string, result, sizes, is_s)
        self._induce_s(string, result, sizes, is_s)
        return result

    @staticmethod
    def _classify(string: list[int]) -> list[bool]:
        """True 为 S 型；虚拟空后缀是 S 型，最后一个真实符号是 L 型"""
        n = len(string)
        is_s = [False] * (n + 1)
        is_s[n] = True
        for i in range(n - 2, -1, -1):
            a, b = string[i], string[i + 1]
            is_s[i] = a < b or (a == b and is_s[i + 1])
        return is_s

    @staticmethod
    def _is_lms(offset: int, is_s: list[bool]) -> bool:
        return offset > 0 and is_s[offset] and not is_s[offset - 1]

    def _lms_equal(self, string: list[int], is_s: list[bool], a: int, b: int) -> bool:
        n = len(string)
        if a == n or b == n:
            return False
        i = 0
        while True:
            a_lms = self._is_lms(a + i, is_s)
            b_lms = self._is_lms(b + i, is_s)
            if i > 0 and a_lms and b_lms:
                return True
            if a_lms != b_lms:
                return False
            if string[a + i] != string[b + i]:
                return False
            i += 1

    @staticmethod
    def _bucket_sizes(string: list[int], alphabet_size: int) -> list[int]:
        sizes = [0] * alphabet_size
        for c in string:
            sizes[c] += 1
        return sizes

    @staticmethod
    def _bucket_heads(sizes: list[int]) -> list[int]:
        heads, offset = [], 1
        for size in sizes:
            heads.append(offset)
            offset += size
        return heads

    @staticmethod
    def _bucket_tails(sizes: list[int]) -> list[int]:
        tails, offset = [], 1
        for size in sizes:
            offset += size
            tails.append(offset - 1)
        return tails

    def _guess_lms(self, string: list[int], sizes: list[int], is_s: list[bool]) -> list[int]:
        sa = [-1] * (len(string) + 1)
        tails = self._bucket_tails(sizes)
        for i in range(len(string)):
            if not self._is_lms(i, is_s):
                continue
            c = string[i]
            sa[tails[c]] = i
            tails[c] -= 1
        sa[0] = len(string)
        return sa

    def _induce_l(self, string: list[int], sa: list[int], sizes: list[int], is_s: list[bool]):
        heads = self._bucket_heads(sizes)
        for i in range(len(sa)):
            if sa[i] == -1:
                continue
            j = sa[i] - 1
            if j < 0 or is_s[j]:
                continue
            c = string[j]
            sa[heads[c]] = j
            heads[c] += 1

    def _induce_s(self, string: list[int], sa: list[int], sizes: list[int], is_s: list[bool]):
        tails = self._bucket_tails(sizes)
        for i in range(len(sa) - 1, -1, -1):
            j = sa[i] - 1
            if j < 0 or not is_s[j]:
                continue
            c = string[j]
            sa[tails[c]] = j
            tails[c] -= 1

    def _summarise(self, string: list[int], sa: list[int], is_s: list[bool]) -> tuple[list[int], int, list[int]]:
        names = [-1] * (len(string) + 1)
        name = 0
        last = sa[0]
        names[last] = name
        for offset in sa[1:]:
            if not self._is_lms(offset, is_s):
                continue
            if not self._lms_equal(string, is_s, last, offset):
                name += 1
            last = offset
            names[offset] = name

        offsets, summary = [], []
        for index, value in enumerate(names):
            if value != -1:
                offsets.append(index)
                summary.append(value)
        return summary, name + 1, offsets

    def _summary_sa(self, summary: list[int], alphabet_size: int) -> list[int]:
        if alphabet_size == len(summary):
            # 名字互不相同，直接按桶放置
            out = [-1] * (len(summary) + 1)
            out[0] = len(summary)
            for x, y in enumerate(summary):
                out[y + 1] = x
            return out
        return self._induced(summary, alphabet_size)

    def _accurate_lms(self, string: list[int], sizes: list[int], summary_sa: list[int], offsets: list[int]) -> list[int]:
        sa = [-1] * (len(string) + 1)
        tails = self._bucket_tails(sizes)
        for i in range(len(summary_sa) - 1, 1, -1):
            index = offsets[summary_sa[i]]
            c = string[index]
            sa[tails[c]] = index
            tails[c] -= 1
        sa[0] = len(string)
        return sa


def make_suffix_sorter(name: str) -> ISuffixSorter:
    if name == SA_BACKEND_INDUCED:
        return InducedSuffixSorter()
    if name == SA_BACKEND_COMPARISON:
        return ComparisonSuffixSorter()
    raise ParameterError(f"未知的后缀数组后端：{name}")
