"""
索引服务：按配置解析各 τ 参数，按需（惰性）构建各层结构，并提供与暴力参考实现的比对。
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

from core.config import IndexConfig, resolve_log_squared
from core.errors import VerificationError
from core.logger import get_logger
from core.models import LyndonRun, RoundRecord
from services import oracle
from services.construction.bwt_builder import BuildResult, BwtBuilder
from services.factorization import lz77
from services.factorization.lyndon import lyndon_factorize
from services.rlbwt.rank_select import RankSelectSupport
from services.rlbwt.rlbwt import Rlbwt
from services.support.lf_shortcut import LfShortcutEngine
from services.support.plcp import (
    IrreducibleList,
    LceEngine,
    PlcpSucc,
    build_irreducible,
    expand_to_plcpsucc,
)
from services.support.rlcsa import Rlcsa, build_rlcsa
from services.support.sa_isa import SaIsaSupport
from services.tau.tau_runs import TauNameIndex, build_name_index
from services.text.packed_text import PackedText
from services.textbook import KTimesSupport, distinct_substrings, longest_k_occurring


@dataclass(frozen=True)
class IndexParameters:
    tau: int
    tau2: int
    block_tau: int
    rlcsa_tau: int

    @classmethod
    def resolve(cls, n: int, cfg: IndexConfig) -> 'IndexParameters':
        """默认 ceil(log2 n)^2；所有值都截断到 n 以内"""
        return cls(
            tau=min(n, resolve_log_squared(n, cfg.tau)),
            tau2=min(n, resolve_log_squared(n, cfg.tau2)),
            block_tau=min(n, resolve_log_squared(n, cfg.block_tau)),
            rlcsa_tau=cfg.rlcsa_tau,
        )


class TextIndex:
    """一份文本上的全部支持结构；text 为 None 时（只有 RLBWT）不能做符号还原"""

    def __init__(
        self,
        rlbwt: Rlbwt,
        config: IndexConfig,
        text: PackedText | None = None,
        build: BuildResult | None = None,
    ):
        self.rlbwt = rlbwt
        self.config = config
        self.text = text
        self.build_result = build
        self.n = rlbwt.n
        self.params = IndexParameters.resolve(self.n, config)
        self.log = get_logger("RlIndex.index")
        self.log.debug(
            f"参数：τ₁={self.params.tau}，τ₂={self.params.tau2}，"
            f"块大小={self.params.block_tau}，RLCSA τ={self.params.rlcsa_tau}"
        )

    @property
    def rounds(self) -> list[RoundRecord]:
        return self.build_result.rounds if self.build_result else []

    @cached_property
    def nav(self) -> RankSelectSupport:
        return RankSelectSupport(self.rlbwt)

    @cached_property
    def support(self) -> SaIsaSupport:
        return SaIsaSupport(self.nav, self.params.tau)

    @cached_property
    def names(self) -> TauNameIndex:
        return build_name_index(self.nav, self.params.tau2)

    @cached_property
    def lce(self) -> LceEngine:
        return LceEngine(self.nav, self.support, self.names)

    @cached_property
    def shortcuts(self) -> LfShortcutEngine:
        return LfShortcutEngine(self.nav, self.support, self.params.tau2)

    @cached_property
    def irreducible(self) -> IrreducibleList:
        return build_irreducible(self.nav, self.support, self.lce)

    @cached_property
    def plcp(self) -> PlcpSucc:
        return expand_to_plcpsucc(self.irreducible, self.n)

    @cached_property
    def nsv_psv(self) -> lz77.NsvPsvSupport:
        dense = self.config.dense_fallback
        engine = None if dense else self.shortcuts
        return lz77.NsvPsvSupport(self.nav, self.support, engine, self.params.block_tau, dense=dense)

    @cached_property
    def ktimes(self) -> KTimesSupport:
        engine = None if self.config.dense_fallback else self.shortcuts
        return KTimesSupport(self.nav, self.support, self.plcp, engine, self.params.block_tau)

    @cached_property
    def lz77(self) -> lz77.Lz77Parsing:
        return lz77.parse(self.nav, self.support, self.nsv_psv, self.lce)

    @cached_property
    def lyndon(self) -> list[LyndonRun]:
        return lyndon_factorize(self.lce)

    def rlcsa(self, tau: int | None = None) -> Rlcsa:
        return build_rlcsa(self.shortcuts, tau or self.params.rlcsa_tau)

    def distinct_substrings(self) -> int:
        return distinct_substrings(self.irreducible, self.n)

    def longest_k(self, k: int) -> int:
        return longest_k_occurring(self.ktimes, k, dense=self.config.dense_fallback)

    def encode_pattern(self, pattern: Any) -> list[int] | None:
        """模式转成文本编码；含字母表外符号时返回 None"""
        if self.text is None:
            return list(pattern)
        rank = {s: i + self.text.sentinels for i, s in enumerate(self.text.alphabet)}
        codes = []
        for symbol in pattern:
            if symbol not in rank:
                return None
            codes.append(rank[symbol])
        return codes

    def count(self, pattern: Any) -> tuple[int, int]:
        """返回 (lo, hi)：匹配行为 lo+1..hi"""
        codes = self.encode_pattern(pattern)
        if codes is None:
            return 0, 0
        return self.nav.backward_search(codes)

    def locate(self, pattern: Any, index: Rlcsa | None = None) -> list[int]:
        lo, hi = self.count(pattern)
        if hi <= lo:
            return []
        index = index or self.rlcsa()
        return sorted(index.sa_segment(lo + 1, hi - lo))


class IndexService:
    def __init__(self, config: IndexConfig):
        self.config = config
        self.log = get_logger("RlIndex.service")

    def build(self, text: PackedText) -> TextIndex:
        result = BwtBuilder(self.config).build(text)
        index = TextIndex(result.rlbwt, self.config, text=text, build=result)
        if self._should_verify(index.n):
            self.verify_bwt(index)
        return index

    def from_rlbwt(self, rlbwt: Rlbwt) -> TextIndex:
        return TextIndex(rlbwt, self.config)

    def _should_verify(self, n: int) -> bool:
        if not self.config.verify:
            return False
        if n > self.config.verify_limit:
            self.log.warning(f"n={n} 超过校验上限 {self.config.verify_limit}，跳过参考比对")
            return False
        return True

    def should_verify(self, index: TextIndex) -> bool:
        return self._should_verify(index.n)

    # ---------------- 参考比对 ----------------

    @staticmethod
    def _codes(index: TextIndex) -> list[int]:
        if index.text is not None:
            return index.text.codes()
        return index.nav.invert()

    def verify_bwt(self, index: TextIndex):
        expected = oracle.bwt_of(self._codes(index))
        if index.rlbwt.decompress() != expected:
            raise VerificationError("BWT 与参考结果不一致")
        self.log.info("BWT 参考比对通过")

    def verify_plcp(self, index: TextIndex):
        tables = oracle.build_tables(self._codes(index))
        if index.plcp.values() != tables.plcp[1:]:
            raise VerificationError("PLCP 与参考结果不一致")
        self.log.info("PLCP 参考比对通过")

    def verify_sa(self, index: TextIndex, values: Sequence[int], start: int):
        tables = oracle.build_tables(self._codes(index))
        if list(values) != tables.sa[start:start + len(values)]:
            raise VerificationError(f"SA[{start}..] 与参考结果不一致")

    def verify_lz77(self, index: TextIndex, parsing: lz77.Lz77Parsing):
        codes = self._codes(index)[:-1]
        if lz77.decode(parsing) != codes:
            raise VerificationError("LZ77 解码结果与原文不一致")
        expected = [phrase[1] for phrase in oracle.lz77_reference(codes)]
        if [p.length for p in parsing.phrases] != expected:
            raise VerificationError("LZ77 短语长度与参考结果不一致")
        self.log.info("LZ77 参考比对通过")

    def verify_lyndon(self, index: TextIndex, runs: list[LyndonRun]):
        expected = oracle.lyndon_duval(self._codes(index)[:-1])
        if [(r.start, r.length, r.exponent) for r in runs] != expected:
            raise VerificationError("Lyndon 分解与参考结果不一致")
        self.log.info("Lyndon 参考比对通过")

    def verify_distinct(self, index: TextIndex, value: int):
        if value != oracle.distinct_substrings_reference(self._codes(index)[:-1]):
            raise VerificationError("不同子串数与参考结果不一致")

    def verify_longest_k(self, index: TextIndex, k: int, value: int):
        if value != oracle.longest_k_reference(self._codes(index)[:-1], k):
            raise VerificationError(f"k={k} 的最长子串长度与参考结果不一致")
