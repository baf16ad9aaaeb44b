from dataclasses import replace

from core.config import AppConfig
from core.logger import RlIndexLogger, get_logger
from controllers.app_controller import AppController
from services.index_service import IndexService
from ui.console import ConsoleView


class AppFactory:
    """集中装配依赖：配置只加载一次，命令行参数在这里覆盖配置。"""

    def __init__(
        self,
        cfg: AppConfig | None = None,
        text_format: str | None = None,
        log_level: str | None = None,
        **index_overrides,
    ):
        cfg = cfg or AppConfig.load()
        cfg = cfg.with_index_overrides(**index_overrides)
        if text_format:
            cfg = replace(cfg, text_format=text_format)
        if log_level:
            cfg = replace(cfg, logging=replace(cfg.logging, level=log_level))
        self._cfg = cfg
        RlIndexLogger.set_console_level(cfg.logging.level)
        get_logger("RlIndex.factory").debug(f"配置已加载：{cfg.to_dict()}")

    def create_config(self) -> AppConfig:
        return self._cfg

    def create_index_service(self) -> IndexService:
        return IndexService(self._cfg.index)

    def create_controller(self) -> AppController:
        return AppController(cfg=self._cfg, index_service=self.create_index_service())

    def create_console(self) -> ConsoleView:
        return ConsoleView()
