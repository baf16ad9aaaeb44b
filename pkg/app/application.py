import argparse
from typing import Sequence

from app.factories import AppFactory
from controllers.app_controller import AppController
from core.errors import RlIndexError
from core.models import CommandResult
from ui.cli import parse_args
from ui.console import ConsoleView

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class RlIndexApplication:
    def __init__(self, argv: Sequence[str] | None = None, factory_cls=AppFactory):
        self._argv = argv
        self._factory_cls = factory_cls

    def run(self) -> int:
        # 1) 解析命令行；argparse 出错时自己打印用法
        try:
            args = parse_args(self._argv)
        except SystemExit as e:
            return EXIT_USAGE if e.code else EXIT_OK

        # 2) 装配配置、控制器与视图
        try:
            factory = self._factory_cls(
                text_format=getattr(args, "text_format", None),
                log_level=getattr(args, "log_level", None),
                tau=getattr(args, "tau", None),
                tau2=getattr(args, "tau2", None),
                sa_backend=getattr(args, "sa_backend", None),
                dense_fallback=getattr(args, "dense_fallback", False) or None,
                verify=getattr(args, "verify", False) or None,
            )
        except RlIndexError as e:
            ConsoleView().show_error(str(e))
            return EXIT_FAILURE
        controller = factory.create_controller()
        view = factory.create_console()

        # 3) 执行命令并输出
        result = self.dispatch(controller, args)
        if not result.ok:
            view.show_error(result.error or "未知错误")
            return EXIT_FAILURE
        view.show_result(result)
        return EXIT_OK

    @staticmethod
    def dispatch(controller: AppController, args: argparse.Namespace) -> CommandResult:
        command = args.command
        if command == "bwt":
            return controller.on_bwt(args.source, args.out)
        if command == "unbwt":
            return controller.on_unbwt(args.source, args.out)
        if command == "plcp":
            return controller.on_plcp(args.source, args.out)
        if command == "rlcsa":
            if args.rlcsa_command == "build":
                return controller.on_rlcsa_build(args.source, args.out, args.rlcsa_tau)
            if args.rlcsa_command == "query-sa":
                return controller.on_rlcsa_query_sa(args.index, args.positions)
            return controller.on_rlcsa_query_segment(args.index, args.start, args.length)
        if command == "lz77":
            return controller.on_lz77(args.source, args.out, binary=args.binary)
        if command == "lyndon":
            return controller.on_lyndon(args.source, args.out)
        if command == "distinct":
            return controller.on_distinct(args.source)
        if command == "longest-k":
            return controller.on_longest_k(args.source, args.k)
        if command == "stats":
            return controller.on_stats(args.source)
        if command == "count":
            return controller.on_count(args.source, args.pattern)
        if command == "locate":
            return controller.on_locate(args.source, args.pattern)
        if command == "gen":
            if args.gen_command == "fib":
                return controller.on_gen_fib(args.order, args.out)
            return controller.on_gen_repeat(args.block, args.copies, args.mut_rate, args.seed, args.out)
        return CommandResult(ok=False, error=f"未知命令：{command}")
