"""Normalized information and disturbance of the optimal-I network."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .networks import NetworkParams, closed_form_metrics, x_from_y

__all__ = ["G_MIN", "G_MAX", "F_MIN", "F_MAX", "TradeoffPoint", "info_disturbance", "curve", "curve_residual"]

G_MIN, G_MAX = 1 / 4, 5 / 8
F_MIN, F_MAX = 5 / 8, 1.0

SIMPLIFICATION_TOL = 1e-12


@dataclass(frozen=True)
class TradeoffPoint:
    y: float
    x: float
    info: float
    disturbance: float
    residual: float

    def row(self) -> tuple[float, float, float, float, float]:
        return (self.y, self.x, self.info, self.disturbance, self.residual)


def curve_residual(info: float, disturbance: float) -> float:
    """``(D - I)^2 - D (1 - I)``, zero on the tradeoff curve."""
    return (disturbance - info) ** 2 - disturbance * (1 - info)


def info_disturbance(params: NetworkParams) -> TradeoffPoint:
    m = closed_form_metrics(params)
    info = (m["G_avg_opt"] - G_MIN) / (G_MAX - G_MIN)
    dist = (F_MAX - m["F_avg_opt"]) / (F_MAX - F_MIN)
    x, y = params.x, params.y
    if abs(dist - x * x) > SIMPLIFICATION_TOL or abs(info - (x * x + x * y)) > SIMPLIFICATION_TOL:
        raise ArithmeticError(f"I/D simplification failed at y={y}")
    # +0.0 turns a -0.0 endpoint into 0.0
    return TradeoffPoint(y, x, info + 0.0, dist + 0.0, curve_residual(info, dist) + 0.0)


def curve(samples: int) -> list[TradeoffPoint]:
    """Points on the tradeoff curve for ``y`` uniform on [0, 1], largest ``y`` first."""
    if samples < 2:
        raise ValueError("need at least two samples")
    ys = np.linspace(1.0, 0.0, samples)
    return [info_disturbance(x_from_y(float(y))) for y in ys]
