"""Fixed-point iteration of the relaxed splitting operator.

Iterates x_{n+1} = T x_n and records the shadow sequence J_1g x_n (the
averaged resolvent of the first operator applied to each iterate),
residuals, and a linear-rate estimate from the tail of the residual
history.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_point
from .splitting import Form, aac


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """Orbit of the splitting operator with its shadow sequence."""

    points: list          # x_0 .. x_N
    shadows: list         # J_1g x_0 .. J_1g x_N
    residuals: list       # |x_{n+1} - x_n| for n = 0 .. N-1
    converged: bool
    rate: float           # geometric-mean residual ratio over the tail

    @property
    def final(self):
        return self.points[-1]

    @property
    def iterations(self):
        return len(self.points) - 1


def estimate_rate(residuals, window=10):
    """Geometric mean of consecutive residual ratios over the final window."""
    tail = [r for r in residuals[-(window + 1):] if r > 0.0]
    if len(tail) < 2:
        return float("nan")
    return float((tail[-1] / tail[0]) ** (1.0 / (len(tail) - 1)))


def run_iteration(pair, x0, max_iters, stop_tol, swapped=False):
    """Iterate the relaxed splitting operator until the residual is small.

    Stops when |x_{n+1} - x_n| <= stop_tol or after max_iters steps; the
    trace is returned either way, with ``converged`` recording which.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if stop_tol <= 0.0:
        raise ValueError("stop_tol must be positive")
    shadow = pair.jbg if swapped else pair.jag
    x = as_point(x0, dim=pair.dim)
    points, shadows, residuals = [x], [shadow(x)], []
    converged = False
    for _ in range(max_iters):
        nxt = aac(pair, Form.DEF, x, swapped=swapped)
        res = float(np.linalg.norm(nxt - x))
        points.append(nxt)
        shadows.append(shadow(nxt))
        residuals.append(res)
        x = nxt
        if res <= stop_tol:
            converged = True
            break
    return IterationTrace(points, shadows, residuals, converged,
                          estimate_rate(residuals))
