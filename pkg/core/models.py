from dataclasses import dataclass, field


@dataclass
class QueryStats:
    """查询计数器：记录单次查询走过的 LF/Ψ 步数或层数"""
    queries: int = 0
    total_steps: int = 0
    max_steps: int = 0

    def record(self, steps: int):
        self.queries += 1
        self.total_steps += steps
        if steps > self.max_steps:
            self.max_steps = steps

    def reset(self):
        self.queries = 0
        self.total_steps = 0
        self.max_steps = 0


@dataclass(frozen=True)
class Lz77Phrase:
    """LZ77 短语；length 为 0 时是字面量，source 存放符号编码"""
    source: int
    length: int

    @property
    def is_literal(self) -> bool:
        return self.length == 0

    @property
    def span(self) -> int:
        return 1 if self.length == 0 else self.length


@dataclass(frozen=True)
class LyndonRun:
    """Lyndon 因子 f^e：起点、因子长度、指数"""
    start: int
    length: int
    exponent: int


@dataclass(frozen=True)
class RoundRecord:
    """构建轮次摘要"""
    round_index: int
    length: int
    runs: int


@dataclass
class TextStats:
    n: int
    sigma: int
    r: int
    z: int
    m: int
    irreducible_lcp_sum: int
    peak_rss_mb: float = 0.0


@dataclass
class CommandResult:
    """命令执行结果：lines 打印到 stdout，payload 为需要原样写出的字节"""
    ok: bool
    lines: list[str] = field(default_factory=list)
    payload: bytes | None = None
    error: str | None = None
