"""
暴力参考实现，仅用于测试与 --verify 校验。

所有数组均以 1 为起点：下标 0 处放置占位值 0，
因此 tables.sa[i] 就是 SA[i]。
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from services.text.packed_text import PackedText


@dataclass(frozen=True)
class OracleTables:
    n: int
    sa: list[int]
    isa: list[int]
    lcp: list[int]
    plcp: list[int]
    bwt: list[int]
    lf: list[int]
    psi: list[int]
    phi: list[int]


def _as_codes(text: PackedText | Sequence[int]) -> list[int]:
    if isinstance(text, PackedText):
        return text.codes()
    return list(text)


def suffix_array(codes: Sequence[int]) -> list[int]:
    """显式比较排序；返回 1 起点的位置列表（不含占位）"""
    seq = list(codes)
    if seq and max(seq) < 256 and min(seq) >= 0:
        data = bytes(seq)
        return [j + 1 for j in sorted(range(len(data)), key=lambda j: data[j:])]
    return [j + 1 for j in sorted(range(len(seq)), key=lambda j: seq[j:])]


def bwt_of(codes: Sequence[int]) -> list[int]:
    seq = list(codes)
    n = len(seq)
    return [seq[(p - 2) % n] for p in suffix_array(seq)]


def lcp_of(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


def build_tables(text: PackedText | Sequence[int]) -> OracleTables:
    codes = _as_codes(text)
    n = len(codes)
    sa = [0] + suffix_array(codes)
    isa = [0] * (n + 1)
    for i in range(1, n + 1):
        isa[sa[i]] = i
    lcp = [0] * (n + 1)
    for i in range(2, n + 1):
        lcp[i] = lcp_of(codes[sa[i] - 1:], codes[sa[i - 1] - 1:])
    plcp = [0] * (n + 1)
    for i in range(1, n + 1):
        plcp[sa[i]] = lcp[i]
    bwt = [0] + [codes[(sa[i] - 2) % n] for i in range(1, n + 1)]
    lf = [0] * (n + 1)
    psi = [0] * (n + 1)
    for i in range(1, n + 1):
        prev = sa[i] - 1 if sa[i] > 1 else n
        lf[i] = isa[prev]
        psi[lf[i]] = i
    phi = [0] * (n + 1)
    for i in range(2, n + 1):
        phi[sa[i]] = sa[i - 1]
    return OracleTables(n=n, sa=sa, isa=isa, lcp=lcp, plcp=plcp, bwt=bwt, lf=lf, psi=psi, phi=phi)


def run_starts(seq: Sequence) -> list[int]:
    """1 起点的游程起点"""
    return [i + 1 for i in range(len(seq)) if i == 0 or seq[i] != seq[i - 1]]


def irreducible_sum(tables: OracleTables) -> int:
    bwt = tables.bwt
    return sum(tables.lcp[i] for i in range(2, tables.n + 1) if bwt[i] != bwt[i - 1])


def lz77_reference(symbols: Sequence) -> list[tuple]:
    """贪心 LZ77；同长度的来源取最小位置。字面量记为 (符号, 0)"""
    seq = list(symbols)
    n = len(seq)
    out = []
    i = 0
    while i < n:
        best_len, best_src = 0, 0
        for p in range(i):
            length = 0
            while i + length < n and seq[p + length] == seq[i + length]:
                length += 1
            if length > best_len:
                best_len, best_src = length, p + 1
        if best_len == 0:
            out.append((seq[i], 0))
            i += 1
        else:
            out.append((best_src, best_len))
            i += best_len
    return out


def lyndon_duval(symbols: Sequence) -> list[tuple[int, int, int]]:
    """Duval 算法，输出 (起点, 因子长度, 指数)"""
    s = list(symbols)
    n = len(s)
    out: list[tuple[int, int, int]] = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        length = j - k
        start, exponent = i, 0
        while i <= k:
            i += length
            exponent += 1
        if out and out[-1][1] == length and s[out[-1][0] - 1:out[-1][0] - 1 + length] == s[start:start + length]:
            first, _, e = out.pop()
            out.append((first, length, e + exponent))
        else:
            out.append((start + 1, length, exponent))
    return out


def distinct_substrings_reference(symbols: Sequence) -> int:
    s = tuple(symbols)
    return len({s[i:j] for i in range(len(s)) for j in range(i + 1, len(s) + 1)})


def longest_k_reference(symbols: Sequence, k: int) -> int:
    """出现至少 k 次的最长子串长度（允许重叠）"""
    s = tuple(symbols)
    n = len(s)
    best = 0
    for length in range(1, n + 1):
        counts: dict[tuple, int] = {}
        found = False
        for i in range(n - length + 1):
            key = s[i:i + length]
            counts[key] = counts.get(key, 0) + 1
            if counts[key] >= k:
                found = True
                break
        if not found:
            break
        best = length
    return best


def nsv_psv_reference(sa: Sequence[int]) -> tuple[list[int], list[int]]:
    """sa 为带占位的 1 起点数组"""
    n = len(sa) - 1
    nsv = [0] * (n + 1)
    psv = [0] * (n + 1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if sa[j] < sa[i]:
                nsv[i] = j
                break
        for j in range(i - 1, 0, -1):
            if sa[j] < sa[i]:
                psv[i] = j
                break
    return nsv, psv


def lf_distance_reference(tables: OracleTables, starts: Sequence[int], s: int, e: int) -> tuple[int, int]:
    """块 [s..e] 的 LF 距离与 LF 捷径，逐位置暴力迭代"""
    start_set = set(starts)
    best = None
    for x in range(s, e + 1):
        d, y = 0, x
        while y not in start_set:
            y = tables.lf[y]
            d += 1
        if best is None or d < best:
            best = d
    y = s
    for _ in range(best):
        y = tables.lf[y]
    return best, y


def cross_ranks(s: Sequence[int], s_prime: Sequence[int]) -> list[int]:
    """对 s 的每个后缀（按字典序排名 0..m-1）给出 s' 中严格更小的后缀个数"""
    s, s_prime = list(s), list(s_prime)
    others = sorted(tuple(s_prime[j:]) for j in range(len(s_prime)))
    own = sorted(tuple(s[j:]) for j in range(len(s)))
    out = []
    pointer = 0
    for suffix in own:
        while pointer < len(others) and others[pointer] < suffix:
            pointer += 1
        out.append(pointer)
    return out
