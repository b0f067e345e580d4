import math

import numpy as np
import pytest

from naoseed.error.ambiguous_arc_error import AmbiguousArcError
from naoseed.error.degenerate_direction_error import DegenerateDirectionError
from naoseed.error.degenerate_origin_error import DegenerateOriginError
from naoseed.error.invalid_input_error import InvalidInputError
from naoseed.model.prior_spec import PriorSpec
from naoseed.utils.baselines import (euclidean_centroid, lerp, normalized_euclidean_centroid, slerp,
                                     sphere_projection_centroid)
from naoseed.utils.rng import RngState


def test_lerp_midpoint_and_endpoints() -> None:
    x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert np.array_equal(lerp(x, y, 0.0), x)
    assert np.array_equal(lerp(x, y, 1.0), y)
    assert np.allclose(lerp(x, y, 0.5), [0.5, 0.5])
    with pytest.raises(InvalidInputError):
        lerp(x, y, 1.5)
    with pytest.raises(InvalidInputError):
        lerp(x, np.ones(3), 0.5)


def test_slerp_stays_on_the_unit_circle() -> None:
    x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert np.allclose(slerp(x, y, 0.5), [math.sqrt(0.5), math.sqrt(0.5)], atol=1e-15)
    for t in np.linspace(0.0, 1.0, 11):
        assert np.linalg.norm(slerp(x, y, t)) == pytest.approx(1.0, abs=1e-14)


def test_slerp_blends_norms_of_unequal_seeds() -> None:
    x, y = np.array([2.0, 0.0]), np.array([0.0, 1.0])
    assert np.allclose(slerp(x, y, 0.5), [math.sqrt(2.0), math.sqrt(0.5)])


def test_slerp_of_parallel_seeds_falls_back_to_lerp() -> None:
    x, y = np.array([1.0, 1.0]), np.array([2.0, 2.0])
    assert np.allclose(slerp(x, y, 0.25), lerp(x, y, 0.25))


def test_slerp_rejects_antipodal_and_zero_seeds() -> None:
    with pytest.raises(AmbiguousArcError):
        slerp(np.array([1.0, 0.0]), np.array([-1.0, 1e-6]), 0.5)
    with pytest.raises(DegenerateOriginError):
        slerp(np.zeros(2), np.array([1.0, 0.0]), 0.5)


def test_euclidean_centroid_is_the_mean() -> None:
    seeds = np.array([[1.0, 2.0], [3.0, -2.0]])
    assert np.array_equal(euclidean_centroid(seeds), [2.0, 0.0])
    with pytest.raises(InvalidInputError):
        euclidean_centroid(np.zeros((0, 2)))


def test_normalized_centroid_lands_on_the_mode_sphere() -> None:
    spec = PriorSpec.for_dimension(5)
    rng = RngState(9)
    seeds = np.stack([rng.gaussian_stream(5) for _ in range(4)])
    centroid = normalized_euclidean_centroid(spec, seeds)
    mean = euclidean_centroid(seeds)

    assert np.linalg.norm(centroid) == pytest.approx(2.0, rel=1e-14)
    assert np.allclose(centroid / 2.0, mean / np.linalg.norm(mean))


def test_normalized_centroid_of_cancelling_seeds() -> None:
    spec = PriorSpec.for_dimension(2)
    with pytest.raises(DegenerateDirectionError):
        normalized_euclidean_centroid(spec, np.array([[1.0, 0.0], [-1.0, 0.0]]))


def test_sphere_projection_of_symmetric_seeds() -> None:
    spec = PriorSpec.for_dimension(2)
    angles = np.array([0.2, 0.6, 1.0])
    seeds = 3.0 * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    result = sphere_projection_centroid(spec, seeds)

    assert result.converged
    assert np.allclose(result.centroid, [math.cos(0.6), math.sin(0.6)], atol=1e-9)


def test_sphere_projection_arc_length_never_increases() -> None:
    spec = PriorSpec.for_dimension(8)
    rng = RngState(17)
    base = rng.gaussian_stream(8)
    seeds = np.stack([base + 0.5 * rng.gaussian_stream(8) for _ in range(6)])
    result = sphere_projection_centroid(spec, seeds)

    trace = np.array(result.arc_length_trace)
    assert result.converged
    assert np.all(np.diff(trace) <= 1e-12)
    assert np.linalg.norm(result.centroid) == pytest.approx(spec.mode_radius, rel=1e-14)
    assert len(trace) == result.iterations + 1


def test_sphere_projection_reports_iteration_cap() -> None:
    spec = PriorSpec.for_dimension(3)
    seeds = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    result = sphere_projection_centroid(spec, seeds, tol=0.0, max_iter=2)
    assert not result.converged
    assert result.iterations == 2


def test_sphere_projection_rejects_zero_seed() -> None:
    with pytest.raises(DegenerateOriginError):
        sphere_projection_centroid(PriorSpec.for_dimension(2), np.array([[0.0, 0.0], [1.0, 0.0]]))
