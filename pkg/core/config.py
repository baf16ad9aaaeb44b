import json
import math
import os
from dataclasses import dataclass, field, asdict, replace
from typing import Any

from dotenv import load_dotenv

from core.constants import (
    CONFIG_FILE,
    DEFAULT_RLCSA_TAU,
    DEFAULT_VERIFY_LIMIT,
    ENV_CONFIG_PATH,
    ENV_FILE,
    ENV_LOG_LEVEL,
    ENV_PREFIX,
    SA_BACKEND_INDUCED,
    SA_BACKENDS,
    TEXT_FORMAT_RAW,
    TEXT_FORMATS,
)
from core.errors import ParameterError
from core.logger import get_logger


def resolve_log_squared(n: int, override: int | None = None) -> int:
    """默认参数 ceil(log2 n)^2，截断到 [1, n]；显式给出的值只做范围检查"""
    if override is not None:
        if override < 1:
            raise ParameterError(f"参数必须为正整数：{override}")
        return override
    if n <= 1:
        return 1
    value = math.ceil(math.log2(n)) ** 2
    return max(1, min(n, value))


@dataclass
class IndexConfig:
    """索引构建参数；None 表示按文本长度自动推导"""
    tau: int | None = None            # SA/ISA 采样间隔 τ₁
    tau2: int | None = None           # τ-子串命名长度与构建采样 τ₂
    rlcsa_tau: int = DEFAULT_RLCSA_TAU
    block_tau: int | None = None      # NSV/PSV 与 k 次子串的分块大小
    merge_tau: int | None = None      # 合并轮次中的 τ
    packing_exponent: int | None = None
    sa_backend: str = SA_BACKEND_INDUCED
    dense_fallback: bool = False
    verify: bool = False
    verify_limit: int = DEFAULT_VERIFY_LIMIT
    verify_rounds: bool = False

    def __post_init__(self):
        if self.sa_backend not in SA_BACKENDS:
            raise ParameterError(f"未知的后缀数组后端：{self.sa_backend}")
        if self.rlcsa_tau < 2:
            raise ParameterError(f"rlcsa_tau 至少为 2：{self.rlcsa_tau}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'IndexConfig':
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class LogConfig:
    level: str = "INFO"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'LogConfig':
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class AppConfig:
    app_name: str = "RlIndex"
    text_format: str = TEXT_FORMAT_RAW
    index: IndexConfig = field(default_factory=IndexConfig)
    logging: LogConfig = field(default_factory=LogConfig)

    def __post_init__(self):
        if self.text_format not in TEXT_FORMATS:
            raise ParameterError(f"未知的文本格式：{self.text_format}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'AppConfig':
        # 复制字典以避免修改原始数据
        data_copy = data.copy()
        index_config = IndexConfig.from_dict(data_copy.pop('index', {}))
        log_config = LogConfig.from_dict(data_copy.pop('logging', {}))
        return cls(index=index_config, logging=log_config, **data_copy)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def with_index_overrides(self, **overrides: Any) -> 'AppConfig':
        """返回覆盖了部分索引参数的新配置；值为 None 的键被忽略"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if not changes:
            return self
        return replace(self, index=replace(self.index, **changes))

    @staticmethod
    def get_config_path() -> str:
        """获取配置文件路径"""
        return os.environ.get(ENV_CONFIG_PATH) or os.path.join(os.getcwd(), CONFIG_FILE)

    @classmethod
    def load(cls) -> 'AppConfig':
        """从文件加载配置，再用 .env 与环境变量覆盖"""
        load_dotenv(ENV_FILE)
        log = get_logger("RlIndex.config")
        cfg = cls()
        config_path = cls.get_config_path()
        if os.path.exists(config_path):
            try:
                with open(config_path, 'r', encoding='utf-8') as f:
                    data = json.load(f)
                cfg = cls.from_dict(data)
            except Exception as e:
                log.warning(f"加载配置文件失败: {e}")
        return cfg._apply_environment()

    def _apply_environment(self) -> 'AppConfig':
        cfg = self
        overrides: dict[str, Any] = {}
        for key in ("tau", "tau2", "rlcsa_tau", "block_tau", "merge_tau"):
            raw = os.environ.get(f"{ENV_PREFIX}{key.upper()}")
            if raw:
                overrides[key] = int(raw)
        backend = os.environ.get(f"{ENV_PREFIX}SA_BACKEND")
        if backend:
            overrides["sa_backend"] = backend
        verify = os.environ.get(f"{ENV_PREFIX}VERIFY")
        if verify:
            overrides["verify"] = verify.lower() in ("1", "true", "yes", "on")
        if overrides:
            cfg = cfg.with_index_overrides(**overrides)
        level = os.environ.get(ENV_LOG_LEVEL)
        if level:
            cfg = replace(cfg, logging=replace(cfg.logging, level=level))
        return cfg

    def save(self) -> bool:
        """保存配置到文件"""
        try:
            config_path = self.get_config_path()
            with open(config_path, 'w', encoding='utf-8') as f:
                json.dump(self.to_dict(), f, indent=4, ensure_ascii=False)
            return True
        except Exception as e:
            get_logger("RlIndex.config").error(f"保存配置文件失败: {e}")
            return False
