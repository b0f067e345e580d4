import logging
import math
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from ..error.degenerate_origin_error import DegenerateOriginError
from ..model.optim_report import StopReason
from ..model.path_config import DescentConfig
from .adam import Adam

logger = logging.getLogger(__name__)


class Evaluation(NamedTuple):
    objective: float
    penalty: float
    grads: Dict[str, np.ndarray]
    feasible: bool


class DescentOutcome(NamedTuple):
    objective_trace: List[float]
    penalty_trace: List[float]
    iterate_objective_trace: List[float]
    iterate_penalty_trace: List[float]
    initial_objective: float
    final_objective: float
    final_penalty: float
    iterations_used: int
    converged: bool
    stop_reason: StopReason
    final_grad_inf_norm: float


def step_size_at(cfg: DescentConfig, t: int) -> float:
    """Cosine decay from step_size at t = 1 to step_floor * step_size after max_iters steps."""
    cosine = 0.5 * (1.0 + math.cos(math.pi * (t - 1) / cfg.max_iters))
    return cfg.step_size * (cfg.step_floor + (1.0 - cfg.step_floor) * cosine)


def _grad_inf_norm(grads: Dict[str, np.ndarray]) -> float:
    return max((float(np.max(np.abs(g))) for g in grads.values() if g.size), default=0.0)


def descend(params: Dict[str, np.ndarray], evaluate: Callable[[], Evaluation], cfg: DescentConfig,
            sync: Optional[Callable[[], None]] = None, label: str = "descent") -> DescentOutcome:
    """
    Adam on objective + penalty with an incumbent that never gets worse.

    evaluate() reads the current parameter arrays and returns the terms at that point.
    A new iterate replaces the incumbent only when it lowers objective + penalty and its
    objective is no larger than the starting one, so the incumbent traces never increase
    in merit and the result is never worse than the start. The run stops as soon as the
    incumbent is feasible and either stationary (gradient infinity-norm <= grad_tol) or
    stalled (best merit improved by at most stall_tol, relative, over stall_window
    iterations). On return the parameter arrays hold the incumbent.

    Args:
        params: Named arrays updated in place (views into the caller's storage)
        evaluate: Objective, penalty, gradients and feasibility at the current parameters
        cfg: Step sizes and stopping rule
        sync: Called after every parameter change, for state derived from the parameters
        label: Prefix of the debug log lines

    Raises:
        DegenerateOriginError: If the starting objective is not finite
    """
    current = evaluate()
    if not (math.isfinite(current.objective) and math.isfinite(current.penalty)):
        raise DegenerateOriginError(f"Objective is not finite at initialization ({current.objective})")

    initial_objective = current.objective
    best = {name: value.copy() for name, value in params.items()}
    best_objective, best_penalty = current.objective, current.penalty
    best_merit = best_objective + best_penalty
    best_feasible = current.feasible
    best_grad_norm = _grad_inf_norm(current.grads)

    objective_trace = [best_objective]
    penalty_trace = [best_penalty]
    iterate_objective_trace = [current.objective]
    iterate_penalty_trace = [current.penalty]
    merit_history = [best_merit]

    iterations = 0
    stop_reason: StopReason = "max_iters"
    converged = False
    if not any(value.size for value in params.values()):
        return DescentOutcome(objective_trace, penalty_trace, iterate_objective_trace, iterate_penalty_trace,
                              initial_objective, best_objective, best_penalty, 0, best_feasible,
                              "no_free_points", best_grad_norm)

    def settled() -> Optional[StopReason]:
        if not best_feasible:
            return None
        if best_grad_norm <= cfg.grad_tol:
            return "stationary"
        if (iterations >= cfg.stall_window
                and merit_history[-1 - cfg.stall_window] - best_merit <= cfg.stall_tol * abs(best_merit)):
            return "stalled"
        return None

    adam = Adam(cfg.step_size, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps)
    while iterations < cfg.max_iters:
        reason = settled()
        if reason is not None:
            stop_reason, converged = reason, True
            break

        iterations += 1
        adam.lr = step_size_at(cfg, iterations)
        adam.step(params, current.grads)
        if sync is not None:
            sync()
        current = evaluate()
        merit = current.objective + current.penalty
        iterate_objective_trace.append(current.objective)
        iterate_penalty_trace.append(current.penalty)

        if merit < best_merit and current.objective <= initial_objective:
            for name, value in params.items():
                np.copyto(best[name], value)
            best_objective, best_penalty, best_merit = current.objective, current.penalty, merit
            best_feasible = current.feasible
            best_grad_norm = _grad_inf_norm(current.grads)
        objective_trace.append(best_objective)
        penalty_trace.append(best_penalty)
        merit_history.append(best_merit)

        if iterations % cfg.log_every == 0:
            logger.debug(f"{label} iter {iterations}: objective={current.objective:.6g}, "
                         f"penalty={current.penalty:.3g}, lr={adam.lr:.3g}, best merit={best_merit:.6g}")
    else:
        reason = settled()
        if reason is not None:
            stop_reason, converged = reason, True

    for name, value in params.items():
        np.copyto(value, best[name])
    if sync is not None:
        sync()

    return DescentOutcome(objective_trace, penalty_trace, iterate_objective_trace, iterate_penalty_trace,
                          initial_objective, best_objective, best_penalty, iterations, converged,
                          stop_reason, best_grad_norm)
