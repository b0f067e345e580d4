import math
from typing import Dict

import numpy as np


class Adam:
    """
    Adam first-order optimizer over named numpy parameter arrays.

    Parameters are updated in place, so a caller may pass views into a larger array
    (e.g. the interior rows of a path) and keep the frozen rows untouched. lr may be
    reassigned between steps to follow a schedule.
    """

    def __init__(self, lr: float = 1e-2, beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.m: Dict[str, np.ndarray] = {}
        self.v: Dict[str, np.ndarray] = {}
        self._scratch: Dict[str, np.ndarray] = {}
        self.t = 0

    def step(self, params: Dict[str, np.ndarray], grads: Dict[str, np.ndarray]) -> None:
        self.t += 1
        bias1 = 1.0 - self.beta1 ** self.t
        root_bias2 = math.sqrt(1.0 - self.beta2 ** self.t)
        step_size = self.lr / bias1

        for name, param in params.items():
            g = grads[name]
            if name not in self.m:
                self.m[name] = np.zeros_like(param)
                self.v[name] = np.zeros_like(param)
                self._scratch[name] = np.empty_like(param)

            m = self.m[name]
            v = self.v[name]
            buf = self._scratch[name]
            m *= self.beta1
            np.multiply(g, 1.0 - self.beta1, out=buf)
            m += buf
            v *= self.beta2
            np.multiply(g, g, out=buf)
            buf *= 1.0 - self.beta2
            v += buf

            # param -= step_size * m / (sqrt(v / bias2) + eps)
            np.sqrt(v, out=buf)
            buf /= root_bias2
            buf += self.epsilon
            np.divide(m, buf, out=buf)
            buf *= step_size
            param -= buf
