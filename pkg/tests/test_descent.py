import math

import numpy as np
import pytest

from naoseed.error.degenerate_origin_error import DegenerateOriginError
from naoseed.model.path_config import DescentConfig
from naoseed.utils.adam import Adam
from naoseed.utils.descent import Evaluation, descend, step_size_at


def _bowl(x: np.ndarray):
    def evaluate() -> Evaluation:
        offset = x - 1.0
        return Evaluation(float(np.sum(offset * offset)), 0.0, {"x": 2.0 * offset}, True)

    return evaluate


def test_step_size_decays_along_a_cosine() -> None:
    cfg = DescentConfig(step_size=0.1, step_floor=0.01, max_iters=100)
    assert step_size_at(cfg, 1) == pytest.approx(0.1)
    assert step_size_at(cfg, 51) == pytest.approx(0.1 * (0.01 + 0.99 * 0.5))
    assert step_size_at(cfg, 101) == pytest.approx(0.001)


def test_adam_moves_against_the_gradient_in_place() -> None:
    x = np.zeros(3)
    view = x[1:]
    Adam(lr=0.5).step({"x": view}, {"x": np.array([1.0, -2.0])})
    assert x[0] == 0.0
    assert x[1] == pytest.approx(-0.5)
    assert x[2] == pytest.approx(0.5)


def test_descent_reaches_the_bottom_of_a_bowl() -> None:
    x = np.array([3.0, -2.0])
    cfg = DescentConfig(step_size=0.1, max_iters=3000, grad_tol=1e-3, stall_window=5000)
    outcome = descend({"x": x}, _bowl(x), cfg)

    assert outcome.converged
    assert outcome.stop_reason == "stationary"
    assert outcome.final_grad_inf_norm <= 1e-3
    assert np.allclose(x, 1.0, atol=1e-3)
    assert outcome.final_objective == pytest.approx(float(np.sum((x - 1.0) ** 2)), abs=1e-15)
    assert np.all(np.diff(outcome.objective_trace) <= 0.0)
    assert len(outcome.iterate_objective_trace) == outcome.iterations_used + 1


def test_incumbent_never_raises_the_objective() -> None:
    x = np.zeros(1)

    def evaluate() -> Evaluation:
        value = float(x[0])
        grad = 2.0 * value - 10.0 * math.copysign(1.0, 1.0 - value)
        return Evaluation(value * value, 10.0 * abs(1.0 - value), {"x": np.array([grad])}, abs(1.0 - value) < 1e-3)

    outcome = descend({"x": x}, evaluate, DescentConfig(step_size=0.05, max_iters=200))

    assert x[0] == 0.0
    assert outcome.final_objective == 0.0
    assert max(outcome.iterate_objective_trace) > 0.0
    assert not outcome.converged
    assert outcome.stop_reason == "max_iters"


def test_nothing_to_move() -> None:
    outcome = descend({"x": np.zeros(0)}, lambda: Evaluation(1.5, 0.0, {"x": np.zeros(0)}, True), DescentConfig())
    assert outcome.converged
    assert outcome.stop_reason == "no_free_points"
    assert outcome.iterations_used == 0


def test_non_finite_start_is_degenerate() -> None:
    x = np.ones(2)
    with pytest.raises(DegenerateOriginError):
        descend({"x": x}, lambda: Evaluation(math.inf, 0.0, {"x": np.zeros(2)}, True), DescentConfig())
