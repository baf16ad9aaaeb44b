import json

import pytest

from core.config import AppConfig, IndexConfig, LogConfig, resolve_log_squared
from core.constants import SA_BACKEND_COMPARISON, TEXT_FORMAT_INTS
from core.errors import ParameterError
from services.index_service import IndexParameters


@pytest.fixture
def isolated(tmp_path, monkeypatch):
    """隔离工作目录与环境变量"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("RLINDEX_CONFIG", str(tmp_path / "config.json"))
    for key in ("TAU", "TAU2", "RLCSA_TAU", "BLOCK_TAU", "MERGE_TAU", "SA_BACKEND", "VERIFY", "LOG_LEVEL"):
        monkeypatch.delenv(f"RLINDEX_{key}", raising=False)
    return tmp_path


def test_resolve_log_squared():
    assert resolve_log_squared(1) == 1
    assert resolve_log_squared(16) == 16
    assert resolve_log_squared(17) == 17
    assert resolve_log_squared(1000) == 100
    assert resolve_log_squared(1000, 7) == 7
    with pytest.raises(ParameterError):
        resolve_log_squared(10, 0)


def test_index_parameters_clamped_to_n():
    params = IndexParameters.resolve(10, IndexConfig(tau=50, block_tau=3))
    assert params.tau == 10
    assert params.tau2 == 10
    assert params.block_tau == 3
    assert params.rlcsa_tau == 4


def test_index_config_validation():
    with pytest.raises(ParameterError):
        IndexConfig(sa_backend="quick")
    with pytest.raises(ParameterError):
        IndexConfig(rlcsa_tau=1)
    with pytest.raises(ParameterError):
        AppConfig(text_format="json")


def test_dict_roundtrip():
    cfg = AppConfig(
        text_format=TEXT_FORMAT_INTS,
        index=IndexConfig(tau=5, sa_backend=SA_BACKEND_COMPARISON),
        logging=LogConfig(level="DEBUG"),
    )
    data = cfg.to_dict()
    assert data["index"]["tau"] == 5
    assert AppConfig.from_dict(data) == cfg


def test_overrides_ignore_none():
    cfg = AppConfig()
    assert cfg.with_index_overrides(tau=None) is cfg
    changed = cfg.with_index_overrides(tau=3, tau2=None, verify=True)
    assert changed.index.tau == 3
    assert changed.index.tau2 is None
    assert changed.index.verify
    assert cfg.index.tau is None


def test_load_defaults_without_file(isolated):
    assert AppConfig.load() == AppConfig()


def test_load_file_and_environment(isolated, monkeypatch):
    (isolated / "config.json").write_text(
        json.dumps({"text_format": "ints", "index": {"tau": 9, "rlcsa_tau": 8}}),
        encoding="utf-8",
    )
    monkeypatch.setenv("RLINDEX_TAU", "4")
    monkeypatch.setenv("RLINDEX_VERIFY", "yes")
    cfg = AppConfig.load()
    assert cfg.text_format == TEXT_FORMAT_INTS
    assert cfg.index.tau == 4
    assert cfg.index.rlcsa_tau == 8
    assert cfg.index.verify


def test_broken_file_falls_back(isolated):
    (isolated / "config.json").write_text("{not json", encoding="utf-8")
    assert AppConfig.load() == AppConfig()


def test_save(isolated):
    cfg = AppConfig(index=IndexConfig(block_tau=6))
    assert cfg.save()
    assert AppConfig.load().index.block_tau == 6
