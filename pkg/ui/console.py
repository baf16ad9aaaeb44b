import sys
from typing import TextIO

from core.models import CommandResult


class ConsoleView:
    """UI 层：只负责输出，结果写 stdout，诊断写 stderr。"""

    def __init__(self, out: TextIO | None = None, err: TextIO | None = None):
        self._out = out or sys.stdout
        self._err = err or sys.stderr

    def show_result(self, result: CommandResult):
        if result.payload is not None:
            self.write_bytes(result.payload)
        # 载荷已占用 stdout 时，摘要行改走 stderr
        target = self._err if result.payload is not None else self._out
        for line in result.lines:
            print(line, file=target)
        target.flush()

    def write_bytes(self, data: bytes):
        self._out.flush()
        buffer = getattr(self._out, "buffer", None)
        if buffer is not None:
            buffer.write(data)
            buffer.flush()
        else:
            self._out.write(data.decode("utf-8", errors="replace"))

    def show_error(self, message: str):
        print(f"错误：{message}", file=self._err)
        self._err.flush()
