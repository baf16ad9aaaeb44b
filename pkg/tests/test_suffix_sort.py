import pytest

from core.errors import ParameterError
from services import oracle
from services.construction.suffix_sort import (
    ComparisonSuffixSorter,
    InducedSuffixSorter,
    make_suffix_sorter,
)
from services.text import corpus
from services.text.packed_text import load_text

INPUTS = [
    [0],
    [1, 0],
    [2, 1, 3, 1, 3, 1, 0],
    [1000, 5, 1000, 5, 1000, 0],
    [3] * 40 + [0],
    [3, 1, 2, 1, 2, 3, 1, 2],
    load_text("mississippi").codes(),
    load_text(corpus.fibonacci_word(11)).codes(),
    load_text(corpus.random_text(300, 2, seed=5)).codes(),
    load_text(corpus.random_text(300, 200, seed=6)).codes(),
    load_text(corpus.mutated_repeat(40, 6, 0.02, seed=9)).codes(),
]


@pytest.mark.parametrize("sorter", [InducedSuffixSorter(), ComparisonSuffixSorter()], ids=lambda s: s.name)
@pytest.mark.parametrize("codes", INPUTS)
def test_sorters_match_oracle(sorter, codes):
    assert sorter.sort(codes) == oracle.suffix_array(codes)


def test_induced_sorter_handles_empty():
    assert InducedSuffixSorter().sort([]) == []


def test_make_suffix_sorter():
    assert make_suffix_sorter("induced").name == "induced"
    assert make_suffix_sorter("comparison").name == "comparison"
    with pytest.raises(ParameterError):
        make_suffix_sorter("bogus")
