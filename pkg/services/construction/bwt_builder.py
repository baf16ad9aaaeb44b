"""
按轮次倍增构建游程 BWT。

打包因子 2^k 把文本切成超符号串 T_k，先用后缀数组后端求出它的 BWT；
之后每一轮 i = k-1..0 由 T_{i+1} 的游程 BWT 得到 T_i 的游程 BWT：
T_{i+1} 即 S_o（S 的奇数位配对），先诱导出 S_e（偶数位配对）的 BWT，
再借助跨串后缀秩把两者交错合并，只保留低半部分（次符号）。
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from core.config import IndexConfig, resolve_log_squared
from core.constants import WORD_BITS
from core.errors import ConstructionError, ParameterError, VerificationError
from core.logger import get_logger
from core.models import RoundRecord
from services import oracle
from services.construction.suffix_sort import ISuffixSorter, make_suffix_sorter
from services.rlbwt.rank_select import RankSelectSupport
from services.rlbwt.rlbwt import Rlbwt, RunAppender
from services.tau.suffix_rank import SuffixRankSupport
from services.text.packed_text import PackedText, regroup


@dataclass
class RoundState:
    """第 round_index 轮结束时的状态：T_i 及其游程 BWT"""
    round_index: int
    text: PackedText
    width: int
    rlbwt: Rlbwt

    @property
    def runs(self) -> int:
        return self.rlbwt.r

    def record(self) -> RoundRecord:
        return RoundRecord(round_index=self.round_index, length=self.rlbwt.n, runs=self.rlbwt.r)


@dataclass
class BuildResult:
    rlbwt: Rlbwt
    exponent: int
    padding: int
    padded_rlbwt: Rlbwt
    rounds: list[RoundRecord] = field(default_factory=list)


class _MinorRuns:
    """只看次符号（code % base）时的游程划分"""

    def __init__(self, rlbwt: Rlbwt, base: int):
        self.starts: list[int] = []
        self.ends: list[int] = []
        self.symbols: list[int] = []
        for start, end, code in rlbwt.iter_runs():
            minor = code % base
            if self.symbols and self.symbols[-1] == minor:
                self.ends[-1] = end
            else:
                self.starts.append(start)
                self.ends.append(end)
                self.symbols.append(minor)

    def locate(self, x: int) -> int:
        return bisect_right(self.starts, x) - 1

    def pieces(self, lo: int, hi: int):
        """[lo..hi] 被次符号游程切成的 (符号, 长度) 片段"""
        k = self.locate(lo)
        pos = lo
        while pos <= hi:
            end = min(self.ends[k], hi)
            yield self.symbols[k], end - pos + 1
            pos = end + 1
            k += 1


# ---------------- 参数 ----------------

def _max_width_exponent(bits: int) -> int:
    k = 0
    while (1 << (k + 1)) * bits <= WORD_BITS:
        k += 1
    return k


def choose_packing_exponent(n: int, sigma: int, bits: int, override: int | None = None) -> int:
    """σ^(2^k) ≤ n 且 2^k·bits ≤ 字宽 的最大 k"""
    if override is not None:
        if override < 0 or (1 << override) * bits > WORD_BITS:
            raise ParameterError(f"打包指数 {override} 超出机器字（{bits} 位/符号）")
        return override
    k = 0
    while sigma ** (1 << (k + 1)) <= n and (1 << (k + 1)) * bits <= WORD_BITS:
        k += 1
    return k


def padding_for(user_length: int, exponent: int) -> int:
    """使 user_length + p 被 2^k 整除的最小 p ≥ 1"""
    width = 1 << exponent
    p = 1
    while (user_length + p) % width:
        p += 1
    return p


def pad(text: PackedText, exponent: int) -> tuple[PackedText, int]:
    """补足哨兵到 2^k 的整数倍；哨兵变多导致位宽增长时会降低 k"""
    while True:
        p = padding_for(text.user_length, exponent)
        padded = text.with_sentinels(p)
        if exponent == 0 or (1 << exponent) * padded.bits <= WORD_BITS:
            return padded, exponent
        exponent = min(exponent - 1, _max_width_exponent(padded.bits))


def merge_tau(length: int, override: int | None = None) -> int:
    """合并轮使用的 τ：默认 ceil(log2 |S|)^2，且不超过 |S_o|"""
    return max(1, min(length // 2, resolve_log_squared(length, override)))


# ---------------- 各阶段 ----------------

def base_case(text: PackedText, exponent: int, sorter: ISuffixSorter) -> Rlbwt:
    """T_k 的游程 BWT，由后缀数组直接得到"""
    supertext = regroup(text, 1 << exponent)
    codes = supertext.codes()
    m = len(codes)
    bwt = [codes[(p - 2) % m] for p in sorter.sort(codes)]
    return Rlbwt.from_bwt(bwt, sigma=supertext.base)


def induce_even(nav_o: RankSelectSupport, base: int) -> Rlbwt:
    """
    由 S_o 的游程 BWT 诱导 S_e 的游程 BWT。
    S_e 的后缀按 (BWT_o 次符号, 行号) 排序，所以把 S_o 的游程按 (次符号, 起点) 排好即得 S_e 的行序；
    每行 BWT_e = 次符号(BWT_o[LF_o(i)])·base + 主符号(BWT_o[i])。
    """
    rlbwt = nav_o.rlbwt
    minor_runs = _MinorRuns(rlbwt, base)
    order = sorted(range(rlbwt.r), key=lambda k: (rlbwt.symbols[k] % base, rlbwt.starts[k]))
    out = RunAppender()
    for k in order:
        start, code = rlbwt.starts[k], rlbwt.symbols[k]
        length = rlbwt.run_length(k)
        major = code // base
        lb = nav_o.lf(start)
        for minor, size in minor_runs.pieces(lb, lb + length - 1):
            out.append(minor * base + major, size)
    return out.build(sigma=base * base)


def merge(
    nav_o: RankSelectSupport,
    nav_e: RankSelectSupport,
    rank_oe: SuffixRankSupport,
    rank_eo: SuffixRankSupport,
    base: int,
) -> Rlbwt:
    """
    交错合并 S_o 与 S_e 的 BWT，只保留次符号，得到 S 的游程 BWT。
    rank_oe 给出比 S_o 某行更小的 S_e 后缀数，rank_eo 反之。
    每次循环产出一整段输出游程，查询次数与游程数成正比。
    """
    if nav_o.n != nav_e.n:
        raise ConstructionError(f"S_o 与 S_e 长度不一致：{nav_o.n} != {nav_e.n}")
    mo = me = nav_o.n
    runs_o = _MinorRuns(nav_o.rlbwt, base)
    runs_e = _MinorRuns(nav_e.rlbwt, base)

    def cross_oe(row: int) -> int:
        return rank_oe.suffix_rank(row - 1)

    def cross_eo(row: int) -> int:
        return rank_eo.suffix_rank(row - 1)

    out = RunAppender()
    x = y = 1
    while x <= mo and y <= me:
        ko, ke = runs_o.locate(x), runs_e.locate(y)
        xe, co = runs_o.ends[ko], runs_o.symbols[ko]
        ye, ce = runs_e.ends[ke], runs_e.symbols[ke]
        if co == ce:
            # 两侧当前游程同符号：输出游程一直延续到 o 行 xe+1 或 e 行 ye+1 出现为止
            if xe < mo and (ye == me or cross_oe(xe + 1) <= ye):
                nx, ny = xe + 1, cross_oe(xe + 1) + 1
            elif ye < me:
                nx, ny = cross_eo(ye + 1) + 1, ye + 1
            else:
                nx, ny = mo + 1, me + 1
            out.append(co, (nx - x) + (ny - y))
            x, y = nx, ny
        elif cross_oe(x) <= y - 1:
            last = min(xe, cross_eo(y))
            out.append(co, last - x + 1)
            x = last + 1
        else:
            last = min(ye, cross_oe(x))
            out.append(ce, last - y + 1)
            y = last + 1

    for runs, pos, limit in ((runs_o, x, mo), (runs_e, y, me)):
        if pos <= limit:
            out.extend(runs.pieces(pos, limit))
    return out.build(sigma=base)


def strip_padding(rlbwt: Rlbwt, padding: int) -> Rlbwt:
    """
    去掉第 2..p 行（以哨兵 1..p-1 开头的后缀），得到单哨兵文本的 BWT。
    编码 p-1 重映射为 $，其余 c ≥ p 映射为 c-p+1。
    """
    if padding == 1:
        return rlbwt
    out = RunAppender()
    for start, end, code in rlbwt.iter_runs():
        if code == padding - 1:
            symbol = 0
        elif code >= padding:
            symbol = code - padding + 1
        else:
            symbol = None
        for a, b in ((start, min(end, 1)), (max(start, padding + 1), end)):
            if a > b:
                continue
            if symbol is None:
                raise ConstructionError(f"哨兵编码 {code} 出现在保留行 {a}..{b}")
            out.append(symbol, b - a + 1)
    return out.build(sigma=rlbwt.sigma - padding + 1)


# ---------------- 构建器 ----------------

class BwtBuilder:
    def __init__(self, config: IndexConfig | None = None, sorter: ISuffixSorter | None = None):
        self.config = config or IndexConfig()
        self.sorter = sorter or make_suffix_sorter(self.config.sa_backend)
        self.log = get_logger("RlIndex.builder")

    def build(self, text: PackedText) -> BuildResult:
        cfg = self.config
        exponent = choose_packing_exponent(text.n, text.sigma, text.bits, cfg.packing_exponent)
        padded, exponent = pad(text, exponent)
        padding = padded.sentinels
        self.log.debug(f"打包指数 k={exponent}（2^k={1 << exponent}），补齐哨兵 p={padding}，n={padded.n}")

        rlbwt = base_case(padded, exponent, self.sorter)
        state = RoundState(round_index=exponent, text=padded, width=1 << exponent, rlbwt=rlbwt)
        rounds = [state.record()]
        self._check_round(state)
        self.log.info(f"基础轮 k={exponent}：|T_k|={rlbwt.n}，r={rlbwt.r}（后端 {self.sorter.name}）")

        for i in range(exponent - 1, -1, -1):
            state = self._round(padded, i, state)
            rounds.append(state.record())
            self._check_round(state)
            self.log.info(f"第 {i} 轮完成：|T_{i}|={state.rlbwt.n}，r_{i}={state.runs}")

        final = strip_padding(state.rlbwt, padding)
        self.log.info(f"BWT 构建完成：n={final.n}，r={final.r}")
        return BuildResult(rlbwt=final, exponent=exponent, padding=padding, padded_rlbwt=state.rlbwt, rounds=rounds)

    def _round(self, padded: PackedText, i: int, previous: RoundState) -> RoundState:
        width = 1 << i
        current = regroup(padded, width)
        base = current.base
        m = current.length
        half = m // 2

        nav_o = RankSelectSupport(previous.rlbwt)
        nav_e = RankSelectSupport(induce_even(nav_o, base))

        last_o = regroup(padded, width * 2).access(half)
        last_e = current.access(m) * base + current.access(1)
        tau = merge_tau(m, self.config.merge_tau)
        self.log.debug(f"第 {i} 轮：|S|={m}，r_o={nav_o.rlbwt.r}，r_e={nav_e.rlbwt.r}，τ={tau}")

        rank_oe = SuffixRankSupport.build(nav_o, nav_e, tau, last_o)
        rank_eo = SuffixRankSupport.build(nav_e, nav_o, tau, last_e)
        merged = merge(nav_o, nav_e, rank_oe, rank_eo, base)
        return RoundState(round_index=i, text=padded, width=width, rlbwt=merged)

    def _check_round(self, state: RoundState):
        if not self.config.verify_rounds:
            return
        codes = regroup(state.text, state.width).codes()
        if state.rlbwt.decompress() != oracle.bwt_of(codes):
            raise VerificationError(f"第 {state.round_index} 轮的 BWT 与参考结果不一致")
        self.log.debug(f"第 {state.round_index} 轮校验通过")


def build_bwt(text: PackedText, config: IndexConfig | None = None) -> Rlbwt:
    return BwtBuilder(config).build(text).rlbwt

