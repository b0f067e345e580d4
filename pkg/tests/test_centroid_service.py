import numpy as np
import pytest

from naoseed.error.invalid_input_error import InvalidInputError
from naoseed.model.centroid_problem import CentroidConfig, CentroidProblem
from naoseed.model.prior_spec import PriorSpec
from naoseed.service.centroid_service import CentroidService
from naoseed.service.path_service import PathService
from naoseed.utils.baselines import euclidean_centroid, normalized_euclidean_centroid, sphere_projection_centroid
from naoseed.utils.chi_prior import nll, rescale_to_norm
from naoseed.utils.path_calculations import linear_init
from naoseed.utils.rng import RngState


def _service(d: int) -> CentroidService:
    spec = PriorSpec.for_dimension(d)
    return CentroidService(spec, PathService(spec))


def _gaussian_seeds(d: int, k: int, seed: int) -> np.ndarray:
    rng = RngState(seed)
    return np.stack([rng.gaussian_stream(d) for _ in range(k)])


def test_identical_seeds_on_the_mode_shell() -> None:
    service = _service(16)
    z = rescale_to_norm(RngState(1).gaussian_stream(16), service.spec.mode_radius)
    result = service.optimize_centroid(CentroidProblem(seeds=np.stack([z, z, z]), config=CentroidConfig()))

    assert np.linalg.norm(result.centroid - z) <= 1e-6 * np.linalg.norm(z)
    assert result.report.final_objective == pytest.approx(nll(service.spec, z), rel=1e-12)


def test_antipodal_seeds_keep_the_centroid_on_the_mode_circle() -> None:
    service = _service(2)
    seeds = np.array([[1.0, 0.0], [-1.0, 0.0]])
    cfg = CentroidConfig(step_size=1e-3, max_iters=1000)
    result = service.optimize_centroid(CentroidProblem(seeds=seeds, config=cfg))

    assert abs(np.linalg.norm(result.centroid) - 1.0) <= 1e-2
    assert result.report.final_objective <= result.report.initial_objective


def test_near_origin_mean_starts_on_the_mode_sphere() -> None:
    service = _service(16)
    z = _gaussian_seeds(16, 2, 3)
    seeds = np.concatenate([z, -z])
    result = service.optimize_centroid(CentroidProblem(seeds=seeds, config=CentroidConfig(max_iters=500)))

    assert np.linalg.norm(result.centroid) >= 0.5 * service.spec.mode_radius


def test_near_origin_start_uses_the_smallest_seed_in_any_order() -> None:
    service = _service(2)
    seeds = np.array([[1.0, 0.0], [-1.0, 0.0]])
    cfg = CentroidConfig(max_iters=100)
    forward = service.optimize_centroid(CentroidProblem(seeds=seeds, config=cfg))
    backward = service.optimize_centroid(CentroidProblem(seeds=seeds[::-1], config=cfg))

    assert forward.start == backward.start == "euclidean"
    assert np.array_equal(forward.centroid, backward.centroid)
    assert forward.report.initial_objective == backward.report.initial_objective


def test_result_does_not_depend_on_seed_order() -> None:
    service = _service(4)
    seeds = _gaussian_seeds(4, 3, 12)
    cfg = CentroidConfig(max_iters=300)
    forward = service.optimize_centroid(CentroidProblem(seeds=seeds, config=cfg))
    shuffled = service.optimize_centroid(CentroidProblem(seeds=seeds[[2, 0, 1]], config=cfg))

    assert np.array_equal(forward.centroid, shuffled.centroid)
    assert forward.report.final_objective == shuffled.report.final_objective
    assert shuffled.report.deltas == [forward.report.deltas[i] for i in (2, 0, 1)]
    for index, path in enumerate(shuffled.paths):
        assert np.array_equal(path.end, seeds[[2, 0, 1]][index])
        assert np.array_equal(path.start, shuffled.centroid)


def test_centroid_beats_the_euclidean_mean() -> None:
    service = _service(16)
    seeds = _gaussian_seeds(16, 4, 21)
    cfg = CentroidConfig(max_iters=1000)

    result = service.optimize_centroid(CentroidProblem(seeds=seeds, config=cfg))
    baseline, _ = service.evaluate_fixed_centroid(euclidean_centroid(seeds), seeds, cfg)

    assert result.report.final_objective < baseline
    assert np.linalg.norm(result.centroid) > np.linalg.norm(euclidean_centroid(seeds))


def _assert_not_worse_than_baselines(service: CentroidService, seeds: np.ndarray, cfg: CentroidConfig) -> None:
    result = service.optimize_centroid(CentroidProblem(seeds=seeds, config=cfg))
    assert result.start in ("euclidean", "norm-euclidean", "sphere")
    for centroid in (euclidean_centroid(seeds), normalized_euclidean_centroid(service.spec, seeds),
                     sphere_projection_centroid(service.spec, seeds).centroid):
        baseline, _ = service.evaluate_fixed_centroid(centroid, seeds, cfg)
        assert result.report.final_objective <= baseline + 1e-6


def test_centroid_is_never_worse_than_the_baselines() -> None:
    _assert_not_worse_than_baselines(_service(16), _gaussian_seeds(16, 5, 9), CentroidConfig(max_iters=500))


def test_fixed_centroid_score_does_not_depend_on_seed_order() -> None:
    service = _service(16)
    seeds = _gaussian_seeds(16, 4, 10)
    cfg = CentroidConfig(max_iters=100)
    c = normalized_euclidean_centroid(service.spec, seeds)
    forward, forward_paths = service.evaluate_fixed_centroid(c, seeds, cfg)
    shuffled, shuffled_paths = service.evaluate_fixed_centroid(c, seeds[[3, 1, 0, 2]], cfg)

    assert forward == shuffled
    assert np.array_equal(shuffled_paths[0].points, forward_paths[3].points)
    assert all(np.array_equal(path.start, c) for path in shuffled_paths)


@pytest.mark.slow
def test_centroid_is_never_worse_than_the_baselines_in_high_dimension() -> None:
    _assert_not_worse_than_baselines(_service(16384), _gaussian_seeds(16384, 3, 5), CentroidConfig(max_iters=300))


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 25])
def test_high_dimensional_centroid_stays_on_the_mode_shell(k: int) -> None:
    service = _service(16384)
    seeds = _gaussian_seeds(16384, k, 100 + k)
    result = service.optimize_centroid(CentroidProblem(seeds=seeds, config=CentroidConfig(max_iters=300)))

    assert abs(np.linalg.norm(result.centroid) - 127.996) <= 2.0
    assert np.linalg.norm(euclidean_centroid(seeds)) == pytest.approx(np.sqrt(16384 / k), rel=0.1)


def test_centroid_objective_requires_anchored_paths() -> None:
    service = _service(2)
    c = np.array([1.0, 0.0])
    paths = [linear_init(c, [0.0, 1.0], 4), linear_init(c, [0.0, -1.0], 4)]
    with_prior = service.centroid_objective(c, paths)
    without_prior = service.centroid_objective(c, paths, include_centroid_prior=False)
    assert with_prior - without_prior == pytest.approx(0.5, rel=1e-12)

    with pytest.raises(InvalidInputError):
        service.centroid_objective(np.array([0.9, 0.0]), paths)


def test_dropping_the_centroid_prior() -> None:
    service = _service(2)
    seeds = np.array([[1.0, 0.0], [0.0, 1.0]])
    result = service.optimize_centroid(CentroidProblem(
        seeds=seeds, config=CentroidConfig(max_iters=50, include_centroid_prior=False)))
    assert result.report.final_objective == pytest.approx(
        service.centroid_objective(result.centroid, result.paths, include_centroid_prior=False), rel=1e-12)


def test_explicit_caps_follow_input_order() -> None:
    service = _service(2)
    seeds = np.array([[0.0, 1.0], [1.0, 0.0]])
    result = service.optimize_centroid(CentroidProblem(
        seeds=seeds, config=CentroidConfig(delta=[0.3, 0.1], max_iters=20)))
    assert result.report.deltas == [0.3, 0.1]

    with pytest.raises(InvalidInputError):
        service.optimize_centroid(CentroidProblem(seeds=seeds, config=CentroidConfig(delta=[0.3])))


def test_empty_seed_set_is_rejected() -> None:
    with pytest.raises(InvalidInputError):
        _service(2).optimize_centroid(CentroidProblem(seeds=np.zeros((0, 2)), config=CentroidConfig()))


def test_sample_paths_stacks_path_by_path() -> None:
    service = _service(2)
    seeds = np.array([[1.0, 0.0], [0.0, 1.0], [0.7, 0.7]])
    result = service.optimize_centroid(CentroidProblem(seeds=seeds, config=CentroidConfig(max_iters=30)))
    samples = service.sample_paths(result, 4)
    assert samples.shape == (12, 2)
    assert np.all(np.isfinite(samples))
