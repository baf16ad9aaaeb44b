import io
import sys
from pathlib import Path
from typing import Callable

import psutil

from core.config import AppConfig
from core.constants import TEXT_FORMAT_INTS
from core.errors import ParameterError, RlIndexError
from core.logger import get_logger
from core.models import CommandResult, TextStats
from services.factorization import lz77
from services.index_service import IndexService, TextIndex
from services.rlbwt.rlbwt_io import read_rlbwt, write_rlbwt
from services.support.plcp import write_plcp
from services.support.rlcsa import read_rlcsa, write_rlcsa
from services.text import corpus
from services.text.packed_text import KIND_BYTES, KIND_STR, PackedText
from services.text.text_io import format_int_sequence, read_text

if sys.platform != "win32":
    import resource


def peak_rss_bytes() -> int:
    """
    进程至今的峰值常驻内存（字节）。
    Windows 取 psutil 的 peak_wset；其余平台取 getrusage 的 ru_maxrss，Linux 以 KB 计，macOS 以字节计。
    """
    memory = psutil.Process().memory_info()
    if hasattr(memory, "peak_wset"):
        return memory.peak_wset
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    if not psutil.MACOS:
        peak *= 1024
    return max(peak, memory.rss)


class AppController:
    """控制器：每个命令一个 on_* 处理函数，把服务层结果整理成 CommandResult。"""

    def __init__(self, cfg: AppConfig, index_service: IndexService):
        self._cfg = cfg
        self._service = index_service
        self.log = get_logger("RlIndex.controller")

    def get_config(self) -> AppConfig:
        return self._cfg

    # ---------------- 公共 ----------------

    def _run(self, action: Callable[[], CommandResult]) -> CommandResult:
        try:
            return action()
        except RlIndexError as e:
            self.log.debug(f"命令失败：{type(e).__name__}: {e}")
            return CommandResult(ok=False, error=f"{type(e).__name__}: {e}")
        except OSError as e:
            return CommandResult(ok=False, error=f"文件读写失败：{e}")

    def _load_text(self, source: str) -> PackedText:
        return read_text(source, self._cfg.text_format)

    def _build(self, source: str) -> TextIndex:
        return self._service.build(self._load_text(source))

    @staticmethod
    def _emit(out: str, data: bytes, lines: list[str] | None = None) -> CommandResult:
        """out 为 '-' 时数据随结果写到 stdout，否则写入文件"""
        if out == "-":
            return CommandResult(ok=True, lines=lines or [], payload=data)
        Path(out).write_bytes(data)
        return CommandResult(ok=True, lines=lines or [])

    @staticmethod
    def _serialize(writer, obj) -> bytes:
        buffer = io.BytesIO()
        writer(obj, buffer)
        return buffer.getvalue()

    @staticmethod
    def _render_symbol(text: PackedText) -> Callable[[int], str]:
        def render(code: int) -> str:
            symbol = text.symbol_of(code)
            if text.kind == KIND_STR:
                return symbol
            if text.kind == KIND_BYTES and 33 <= symbol < 127:
                return chr(symbol)
            return str(symbol)
        return render

    def _parse_pattern(self, pattern: str):
        if self._cfg.text_format == TEXT_FORMAT_INTS:
            try:
                return [int(x) for x in pattern.split()]
            except ValueError as e:
                raise ParameterError(f"整数模式格式错误：{pattern!r}") from e
        return pattern.encode("utf-8")

    # ---------------- BWT ----------------

    def on_bwt(self, source: str, out: str) -> CommandResult:
        def action():
            index = self._build(source)
            data = self._serialize(write_rlbwt, index.rlbwt)
            return self._emit(out, data, [f"n={index.n} r={index.rlbwt.r}"])
        return self._run(action)

    def on_unbwt(self, source: str, out: str) -> CommandResult:
        """还原出的文本以整数序列格式写出（RLBW1 不保存原字母表）"""
        def action():
            with open(source, "rb") as f:
                rlbwt = read_rlbwt(f)
            index = self._service.from_rlbwt(rlbwt)
            codes = index.nav.invert()
            return self._emit(out, format_int_sequence(codes, rlbwt.sigma))
        return self._run(action)

    # ---------------- PLCP ----------------

    def on_plcp(self, source: str, out: str) -> CommandResult:
        def action():
            index = self._build(source)
            plcp = index.plcp
            if self._service.should_verify(index):
                self._service.verify_plcp(index)
            irreducible = index.irreducible
            lines = [f"irreducible={len(irreducible)} sum={irreducible.total}"]
            return self._emit(out, self._serialize(write_plcp, plcp), lines)
        return self._run(action)

    # ---------------- RLCSA ----------------

    def on_rlcsa_build(self, source: str, out: str, tau: int | None = None) -> CommandResult:
        def action():
            index = self._build(source)
            rlcsa = index.rlcsa(tau)
            if self._service.should_verify(index):
                self._service.verify_sa(index, rlcsa.sa_segment(1, index.n), 1)
            data = self._serialize(write_rlcsa, rlcsa)
            lines = [
                f"levels={rlcsa.level_count} words={rlcsa.stored_words()} bytes={len(data)}"
            ]
            return self._emit(out, data, lines)
        return self._run(action)

    def on_rlcsa_query_sa(self, source: str, positions: list[int]) -> CommandResult:
        def action():
            with open(source, "rb") as f:
                rlcsa = read_rlcsa(f)
            return CommandResult(ok=True, lines=[str(rlcsa.sa_at(p)) for p in positions])
        return self._run(action)

    def on_rlcsa_query_segment(self, source: str, start: int, length: int) -> CommandResult:
        def action():
            with open(source, "rb") as f:
                rlcsa = read_rlcsa(f)
            values = rlcsa.sa_segment(start, length)
            return CommandResult(ok=True, lines=[" ".join(map(str, values))])
        return self._run(action)

    # ---------------- 分解 ----------------

    def on_lz77(self, source: str, out: str, binary: bool = False) -> CommandResult:
        def action():
            index = self._build(source)
            parsing = index.lz77
            if self._service.should_verify(index):
                self._service.verify_lz77(index, parsing)
            if binary:
                data = self._serialize(lz77.write_binary, parsing)
            else:
                rows = lz77.format_phrases(parsing, self._render_symbol(index.text))
                data = ("\n".join(rows) + "\n").encode("utf-8")
            return self._emit(out, data, [] if out == "-" else [f"z={parsing.z}"])
        return self._run(action)

    def on_lyndon(self, source: str, out: str) -> CommandResult:
        def action():
            index = self._build(source)
            runs = index.lyndon
            if self._service.should_verify(index):
                self._service.verify_lyndon(index, runs)
            data = "".join(f"{r.start} {r.length} {r.exponent}\n" for r in runs).encode("ascii")
            return self._emit(out, data, [] if out == "-" else [f"m={len(runs)}"])
        return self._run(action)

    # ---------------- 教科书问题 ----------------

    def on_distinct(self, source: str) -> CommandResult:
        def action():
            index = self._build(source)
            value = index.distinct_substrings()
            if self._service.should_verify(index):
                self._service.verify_distinct(index, value)
            return CommandResult(ok=True, lines=[str(value)])
        return self._run(action)

    def on_longest_k(self, source: str, k: int) -> CommandResult:
        def action():
            index = self._build(source)
            value = index.longest_k(k)
            if self._service.should_verify(index):
                self._service.verify_longest_k(index, k, value)
            return CommandResult(ok=True, lines=[str(value)])
        return self._run(action)

    # ---------------- 模式匹配 ----------------

    def on_count(self, source: str, pattern: str) -> CommandResult:
        def action():
            index = self._build(source)
            lo, hi = index.count(self._parse_pattern(pattern))
            return CommandResult(ok=True, lines=[str(hi - lo)])
        return self._run(action)

    def on_locate(self, source: str, pattern: str) -> CommandResult:
        def action():
            index = self._build(source)
            positions = index.locate(self._parse_pattern(pattern))
            return CommandResult(ok=True, lines=[str(p) for p in positions])
        return self._run(action)

    # ---------------- 统计 ----------------

    def collect_stats(self, index: TextIndex) -> TextStats:
        peak = peak_rss_bytes()
        return TextStats(
            n=index.n,
            sigma=index.rlbwt.sigma,
            r=index.rlbwt.r,
            z=index.lz77.z,
            m=len(index.lyndon),
            irreducible_lcp_sum=index.irreducible.total,
            peak_rss_mb=round(peak / (1024 * 1024), 2),
        )

    def on_stats(self, source: str) -> CommandResult:
        def action():
            index = self._build(source)
            stats = self.collect_stats(index)
            lines = [
                f"n={stats.n}",
                f"sigma={stats.sigma}",
                f"r={stats.r}",
                f"z={stats.z}",
                f"m={stats.m}",
                f"irreducible_lcp_sum={stats.irreducible_lcp_sum}",
                f"rounds={' '.join(f'{rec.round_index}:{rec.runs}' for rec in index.rounds)}",
                f"peak_rss_mb={stats.peak_rss_mb}",
            ]
            return CommandResult(ok=True, lines=lines)
        return self._run(action)

    # ---------------- 语料生成 ----------------

    def on_gen_fib(self, order: int, out: str = "-") -> CommandResult:
        def action():
            header = corpus.gen_header("fib", order=order)
            data = header + corpus.fibonacci_word(order).encode("ascii")
            return self._emit(out, data)
        return self._run(action)

    def on_gen_repeat(
        self,
        block: int,
        copies: int,
        mut_rate: float,
        seed: int,
        out: str = "-",
    ) -> CommandResult:
        def action():
            header = corpus.gen_header("repeat", block=block, copies=copies, mut_rate=mut_rate, seed=seed)
            body = corpus.mutated_repeat(block, copies, mut_rate, seed)
            return self._emit(out, header + body.encode("ascii"))
        return self._run(action)
