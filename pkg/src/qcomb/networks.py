"""The projective and optimal-I 2-testers, plus their closed-form figures of merit."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bases import UnitaryBasis
from .comb import Tester
from .tensor import WiredVector, kron_kets, vectorize

__all__ = [
    "ConstraintError",
    "NetworkParams",
    "projective_network",
    "optimal_i_network",
    "x_from_y",
    "closed_form_metrics",
    "guess_probability_closed_form",
]

CONSTRAINT_TOL = 1e-9


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkParams:
    """Mixing weights of the optimal-I network, with ``x^2 + x y + y^2 = 1``.

    ``x = 1`` is the projective network and ``y = 1`` the passive identity.
    """

    x: float
    y: float

    def __post_init__(self):
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise ConstraintError(f"x and y must lie in [0, 1], got ({self.x}, {self.y})")
        if abs(self.constraint_residual) > CONSTRAINT_TOL:
            raise ConstraintError(f"x^2 + xy + y^2 = 1 violated by {self.constraint_residual:.3g}")

    @property
    def constraint_residual(self) -> float:
        return self.x**2 + self.x * self.y + self.y**2 - 1.0

    @classmethod
    def from_y(cls, y: float) -> "NetworkParams":
        return x_from_y(y)


def x_from_y(y: float) -> NetworkParams:
    """Nonnegative solution ``x = (-y + sqrt(4 - 3 y^2)) / 2`` of the constraint."""
    y = float(y)
    if not 0.0 <= y <= 1.0:
        raise ConstraintError(f"y must lie in [0, 1], got {y}")
    x = max((-y + math.sqrt(4.0 - 3.0 * y * y)) / 2.0, 0.0)
    return NetworkParams(x, y)


def projective_network(basis: UnitaryBasis) -> Tester:
    elements = []
    for u in basis:
        ket = kron_kets(vectorize(u, 3, 0), vectorize(u.conj(), 2, 1))
        elements.append(ket.projector() * 0.25)
    return Tester(tuple(elements), tuple(basis), basis.d, name=f"projective/{basis.name}")


def optimal_i_network(basis: UnitaryBasis, params: NetworkParams) -> Tester:
    if abs(params.constraint_residual) > CONSTRAINT_TOL:
        raise ConstraintError("network parameters are off the constraint curve")
    eye = np.eye(basis.d)
    # both terms land in canonical (3, 2, 1, 0) order before being added
    passive = kron_kets(vectorize(eye, 3, 2), vectorize(eye, 1, 0)).vector
    elements = []
    for u in basis:
        guess = kron_kets(vectorize(u, 3, 0), vectorize(u.conj(), 2, 1)).vector
        chi = params.x * guess + params.y * passive
        elements.append(WiredVector(chi, (3, 2, 1, 0), basis.d).projector() * 0.25)
    return Tester(tuple(elements), tuple(basis), basis.d, name=f"optimal_i/{basis.name}")


def guess_probability_closed_form(params: NetworkParams, match: bool | None) -> float:
    """Guess probabilities of the optimal-I network for a qubit.

    ``match=True``: the tested operator is the guessed basis element.
    ``match=False``: it is a different element of the same basis.
    ``match=None``: it comes from a mutually unbiased basis.
    """
    x, y = params.x, params.y
    if match is None:
        return (x * x + x * y + y * y) / 4
    if match:
        return x * x + x * y + y * y / 4
    return y * y / 4


def closed_form_metrics(params: NetworkParams) -> dict[str, float]:
    """Average gain and fidelity when telling one basis element from one unbiased element."""
    x, y = params.x, params.y
    return {
        "G_avg_opt": 5 / 8 * x * x + 5 / 8 * x * y + y * y / 4,
        "F_avg_opt": 5 / 8 * x * x + x * y + y * y,
        "G_avg_proj": 5 / 8,
        "F_avg_proj": 5 / 8,
    }
