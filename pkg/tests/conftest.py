import os

# 测试期间只保留控制台日志
os.environ["RLINDEX_LOG_DIR"] = ""

from dataclasses import dataclass

import pytest

from core.config import IndexConfig
from services import oracle
from services.index_service import TextIndex
from services.rlbwt.rank_select import RankSelectSupport
from services.rlbwt.rlbwt import Rlbwt
from services.text import corpus
from services.text.packed_text import PackedText, RawText, load_text

CORPORA: dict[str, RawText] = {
    "single": "x",
    "pair": "ab",
    "banana": "banana",
    "mississippi": "mississippi",
    "abracadabra": "abracadabra",
    "zzzzzipzip": "zzzzzipzip",
    "unary": "a" * 30,
    "periodic": corpus.periodic_text("abc", 12),
    "fibonacci": corpus.fibonacci_word(10),
    "repeat": corpus.mutated_repeat(24, 5, 0.05, seed=7),
    "random": corpus.random_text(80, 3, seed=11),
    "bytes": bytes([0, 255, 0, 255, 7, 0, 255, 0]),
}

SMALL_CORPORA = ["single", "pair", "banana", "mississippi", "abracadabra", "zzzzzipzip", "unary"]


@dataclass
class Navigated:
    """文本、按参考 BWT 构造的游程 BWT 导航结构以及参考数组"""
    text: PackedText
    nav: RankSelectSupport
    tables: oracle.OracleTables

    @property
    def n(self) -> int:
        return self.text.n

    @property
    def codes(self) -> list[int]:
        return self.text.codes()

    def index(self, **params) -> TextIndex:
        return TextIndex(self.nav.rlbwt, IndexConfig(**params), text=self.text)


def navigate(raw: RawText) -> Navigated:
    text = load_text(raw)
    tables = oracle.build_tables(text)
    rlbwt = Rlbwt.from_bwt(tables.bwt[1:], sigma=text.sigma)
    return Navigated(text=text, nav=RankSelectSupport(rlbwt), tables=tables)


@pytest.fixture
def navigator_for():
    return navigate


@pytest.fixture(params=sorted(CORPORA))
def navigated(request) -> Navigated:
    return navigate(CORPORA[request.param])


@pytest.fixture(params=SMALL_CORPORA)
def small_navigated(request) -> Navigated:
    return navigate(CORPORA[request.param])


@pytest.fixture
def banana() -> Navigated:
    return navigate("banana")
