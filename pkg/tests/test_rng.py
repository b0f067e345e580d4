import json

import numpy as np
import pytest

from conftest import DATA_DIR
from naoseed.error.invalid_input_error import InvalidInputError
from naoseed.utils.rng import RngState, gaussian_stream


@pytest.fixture
def golden() -> dict:
    with open(DATA_DIR / "gaussian_stream_golden.json") as f:
        return json.load(f)


def test_first_words_match_golden(golden: dict) -> None:
    rng = RngState(golden["seed"])
    assert [rng.next_u64() for _ in golden["first_u64"]] == golden["first_u64"]


def test_first_gaussians_match_golden(golden: dict) -> None:
    rng = RngState(golden["seed"])
    expected = np.array(golden["first_gaussians"])
    assert np.array_equal(rng.gaussian_stream(expected.size), expected)


def test_uniform_uses_top_53_bits(golden: dict) -> None:
    rng = RngState(golden["seed"])
    assert rng.uniform() == (golden["first_u64"][0] >> 11) * 2.0 ** -53


def test_chunked_stream_equals_single_draw() -> None:
    whole = RngState(99).gaussian_stream(101)
    rng = RngState(99)
    chunks = np.concatenate([rng.gaussian_stream(size) for size in (1, 2, 7, 3, 88)])
    assert np.array_equal(chunks, whole)


def test_module_level_stream_shares_state() -> None:
    a, b = RngState(3), RngState(3)
    assert np.array_equal(gaussian_stream(a, 5), b.gaussian_stream(5))
    assert np.array_equal(gaussian_stream(a, 4), b.gaussian_stream(4))


def test_different_seeds_give_different_streams() -> None:
    assert not np.array_equal(RngState(0).gaussian_stream(8), RngState(1).gaussian_stream(8))


@pytest.mark.parametrize("seed", [-1, 2 ** 64, 1.5, True, "7"])
def test_invalid_seed(seed) -> None:
    with pytest.raises(InvalidInputError):
        RngState(seed)


def test_invalid_count() -> None:
    with pytest.raises(InvalidInputError):
        RngState(1).gaussian_stream(0)


def test_largest_seed_is_accepted() -> None:
    rng = RngState(2 ** 64 - 1)
    assert 0 <= rng.next_u64() < 2 ** 64


@pytest.mark.slow
def test_million_draws_look_standard_normal() -> None:
    draws = RngState(123).gaussian_stream(1_000_000)
    assert abs(np.mean(draws)) < 0.005
    assert abs(np.var(draws) - 1.0) < 0.01
