"""命令行界面：子命令定义与参数解析"""

import argparse
from typing import Sequence

from core.constants import (
    DEFAULT_MUTATION_RATE,
    DEFAULT_REPEAT_BLOCK,
    DEFAULT_REPEAT_COPIES,
    DEFAULT_SEED,
    SA_BACKENDS,
    TEXT_FORMATS,
)

PROG = "rlindex"


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    """全局参数；子命令上重复声明以便写在任意位置，子命令处不设默认值以免覆盖"""
    suppress = None if defaults else argparse.SUPPRESS
    flag_default = False if defaults else argparse.SUPPRESS
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("全局参数")
    group.add_argument("--tau", type=int, default=suppress, help="SA/ISA 采样间隔 τ₁（默认 ceil(log2 n)^2）")
    group.add_argument("--tau2", type=int, default=suppress, help="τ-子串长度与 LF 捷径采样间隔 τ₂")
    group.add_argument("--dense-fallback", action="store_true", default=flag_default,
                       help="NSV/PSV 与 k 次子串改用逐块显式计算")
    group.add_argument("--verify", action="store_true", default=flag_default,
                       help="与暴力参考实现比对（仅限小规模输入）")
    group.add_argument("--sa-backend", choices=SA_BACKENDS, default=suppress, help="基础轮的后缀排序后端")
    group.add_argument("--format", dest="text_format", choices=TEXT_FORMATS, default=suppress,
                       help="输入文本格式")
    group.add_argument("--log-level", default=suppress, help="控制台日志级别")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(defaults=False)
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="面向高重复文本的游程压缩 BWT 索引构建与查询",
        parents=[_global_options(defaults=True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str, **kwargs) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common], **kwargs)

    p = command("bwt", "构建 RLBWT 并写出 RLBW1 文件")
    p.add_argument("source", help="输入文本，'-' 表示 stdin")
    p.add_argument("out", help="输出文件，'-' 表示 stdout")

    p = command("unbwt", "由 RLBW1 文件还原文本（整数序列格式）")
    p.add_argument("source")
    p.add_argument("out")

    p = command("plcp", "构建 PLCP_succ 并写出 PLCP1 文件")
    p.add_argument("source")
    p.add_argument("out")

    p = command("rlcsa", "游程压缩后缀数组")
    rlcsa = p.add_subparsers(dest="rlcsa_command", required=True)
    q = rlcsa.add_parser("build", help="构建并写出 RCSA1 文件", parents=[common])
    q.add_argument("source")
    q.add_argument("out")
    q.add_argument("--rlcsa-tau", type=int, default=None, help="层间缩小倍数 τ（默认取配置）")
    q = rlcsa.add_parser("query-sa", help="查询 SA[p]", parents=[common])
    q.add_argument("index")
    q.add_argument("positions", type=int, nargs="+")
    q = rlcsa.add_parser("query-segment", help="查询 SA[p..p+len-1]", parents=[common])
    q.add_argument("index")
    q.add_argument("start", type=int)
    q.add_argument("length", type=int)

    p = command("lz77", "LZ77 分解")
    p.add_argument("source")
    p.add_argument("out")
    p.add_argument("--binary", action="store_true", help="写出二进制格式")

    p = command("lyndon", "Lyndon 分解")
    p.add_argument("source")
    p.add_argument("out")

    p = command("distinct", "不同子串数")
    p.add_argument("source")

    p = command("longest-k", "出现至少 k 次的最长子串长度")
    p.add_argument("source")
    p.add_argument("--k", type=int, required=True)

    p = command("stats", "输出 n、σ、r、z、m 与不可约 LCP 之和")
    p.add_argument("source")

    p = command("count", "模式出现次数")
    p.add_argument("source")
    p.add_argument("pattern")

    p = command("locate", "模式出现位置")
    p.add_argument("source")
    p.add_argument("pattern")

    p = command("gen", "生成确定性测试语料")
    gen = p.add_subparsers(dest="gen_command", required=True)
    q = gen.add_parser("fib", help="Fibonacci 串", parents=[common])
    q.add_argument("--order", type=int, required=True)
    q.add_argument("--out", default="-")
    q = gen.add_parser("repeat", help="带突变的重复块", parents=[common])
    q.add_argument("--block", type=int, default=DEFAULT_REPEAT_BLOCK)
    q.add_argument("--copies", type=int, default=DEFAULT_REPEAT_COPIES)
    q.add_argument("--mut-rate", type=float, default=DEFAULT_MUTATION_RATE)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--out", default="-")

    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
