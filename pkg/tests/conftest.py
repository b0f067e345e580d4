import math
from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from naoseed.model.path_config import PathConfig
from naoseed.model.prior_spec import PriorSpec
from naoseed.model.seed_set import SeedSet
from naoseed.service.path_service import PathService
from naoseed.utils.seed_file_manager import SeedFileManager

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def spec2() -> PriorSpec:
    return PriorSpec.for_dimension(2)


@pytest.fixture
def spec16() -> PriorSpec:
    return PriorSpec.for_dimension(16)


@pytest.fixture
def path_service2(spec2: PriorSpec) -> PathService:
    return PathService(spec2)


@pytest.fixture
def canonical_pair() -> tuple[np.ndarray, np.ndarray]:
    """Two points on the unit circle (the 2D mode circle), 90 degrees apart"""
    return np.array([1.0, 0.0]), np.array([0.0, 1.0])


@pytest.fixture
def quick_config() -> PathConfig:
    return PathConfig(n=10, max_iters=400)


@pytest.fixture
def write_seeds(tmp_path: Path) -> Callable[..., Path]:
    def _write(name: str, seeds, dtype: str = "f64") -> Path:
        target = tmp_path / name
        SeedFileManager().write_seedset(target, SeedSet(seeds=np.asarray(seeds, dtype=np.float64), dtype=dtype))
        return target

    return _write


def chi2_nll(r: float) -> float:
    """W for d = 2 by hand: r^2 / 2 - ln r (the chi_2 normalizer is 1)"""
    return 0.5 * r * r - math.log(r)
