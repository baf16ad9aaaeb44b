"""日志系统配置"""

import logging
import os
import sys
from pathlib import Path
from datetime import datetime

from core.constants import APP_NAME, ENV_LOG_DIR, ENV_LOG_LEVEL, LOG_DIR


class RlIndexLogger:
    """统一的日志管理器"""

    _loggers = {}
    _console_handlers = []

    @classmethod
    def get_logger(cls, name: str = APP_NAME) -> logging.Logger:
        """获取或创建日志记录器"""
        if name in cls._loggers:
            return cls._loggers[name]

        logger = logging.getLogger(name)
        logger.setLevel(logging.DEBUG)
        logger.propagate = False

        # 避免重复添加处理器
        if not logger.handlers:
            cls._setup_handlers(logger)

        cls._loggers[name] = logger
        return logger

    @classmethod
    def set_console_level(cls, level: str | int):
        """调整所有控制台处理器的级别"""
        level = cls._parse_level(level)
        for handler in cls._console_handlers:
            handler.setLevel(level)

    @staticmethod
    def _parse_level(level: str | int) -> int:
        """级别名转数值，未知名称回退到 INFO"""
        if isinstance(level, int):
            return level
        value = logging.getLevelName(str(level).upper())
        return value if isinstance(value, int) else logging.INFO

    @classmethod
    def _setup_handlers(cls, logger: logging.Logger):
        """设置日志处理器"""
        fmt = '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s'

        # 日志目录；环境变量为空串时只保留控制台输出
        log_dir_value = os.environ.get(ENV_LOG_DIR, LOG_DIR)
        if log_dir_value:
            log_dir = Path(log_dir_value)
            log_dir.mkdir(parents=True, exist_ok=True)
            today = datetime.now().strftime('%Y%m%d')

            # 文件处理器（所有级别）
            fh = logging.FileHandler(log_dir / f"app_{today}.log", encoding='utf-8')
            fh.setLevel(logging.DEBUG)
            fh.setFormatter(cls._get_formatter(fmt))

            # 错误文件处理器（只记录错误和严重错误）
            error_fh = logging.FileHandler(log_dir / f"error_{today}.log", encoding='utf-8')
            error_fh.setLevel(logging.ERROR)
            error_fh.setFormatter(cls._get_formatter(fmt))

            logger.addHandler(fh)
            logger.addHandler(error_fh)

        # 控制台处理器走 stderr，stdout 留给命令输出
        ch = logging.StreamHandler(sys.stderr)
        ch.setLevel(cls._parse_level(os.environ.get(ENV_LOG_LEVEL, "INFO")))
        ch.setFormatter(cls._get_formatter('%(levelname)s - %(message)s'))
        logger.addHandler(ch)
        cls._console_handlers.append(ch)

    @staticmethod
    def _get_formatter(fmt: str) -> logging.Formatter:
        """创建格式化器"""
        return logging.Formatter(fmt, datefmt='%Y-%m-%d %H:%M:%S')


# 便捷函数
def get_logger(name: str = APP_NAME) -> logging.Logger:
    """获取日志记录器"""
    return RlIndexLogger.get_logger(name)
