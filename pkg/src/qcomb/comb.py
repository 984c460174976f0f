"""Choi operators, link product and 2-tester evaluation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bases import is_unitary
from .tensor import (
    WiredOperator,
    kron_kets,
    partial_trace,
    partial_transpose,
    tensor_product,
    vectorize,
)

__all__ = [
    "TESTER_WIRES",
    "NotUnitaryError",
    "Tester",
    "TesterReport",
    "choi_of_unitary",
    "link",
    "validate_tester",
    "outcome_probabilities",
    "gain",
    "network_gain",
    "network_fidelity",
]

TESTER_WIRES = (3, 2, 1, 0)
TESTER_TOL = 1e-10
UNITARY_TOL = 1e-9


class NotUnitaryError(ValueError):
    pass


def _require_unitary(u, what: str = "operator") -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if not is_unitary(u, UNITARY_TOL):
        raise NotUnitaryError(f"{what} is not unitary within {UNITARY_TOL:g}")
    return u


def choi_of_unitary(u, out_wire: int = 1, in_wire: int = 0) -> WiredOperator:
    """Choi operator ``|U>><<U|`` of the channel ``rho -> U rho U^dagger``."""
    u = _require_unitary(u, "channel")
    return vectorize(u, out_wire, in_wire).projector()


def link(a: WiredOperator, b: WiredOperator) -> WiredOperator:
    """Link product ``a * b``.

    Traces out the wires the two operators share after partially transposing
    ``b`` on them. With no shared wires this is the plain tensor product.
    """
    shared = set(a.wires) & set(b.wires)
    union = set(a.wires) | set(b.wires)
    bt = b
    for w in shared:
        bt = partial_transpose(bt, w)
    prod = a.expand(union) @ bt.expand(union)
    return partial_trace(prod, shared)


@dataclass(frozen=True)
class Tester:
    """Generalized instrument ``{R_i}`` on wires (3, 2, 1, 0).

    ``labels[i]`` is the unitary guessed when outcome ``i`` fires.
    """

    elements: tuple[WiredOperator, ...]
    labels: tuple[np.ndarray, ...]
    d: int = 2
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(self.elements) != len(self.labels):
            raise ValueError("need one label per tester element")
        for r in self.elements:
            if r.wires != TESTER_WIRES:
                raise ValueError(f"tester elements must act on {TESTER_WIRES}, got {r.wires}")
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "labels", tuple(np.asarray(u, dtype=np.complex128) for u in self.labels))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def total(self) -> WiredOperator:
        """The deterministic comb ``R^(2) = sum_i R_i``."""
        out = self.elements[0]
        for r in self.elements[1:]:
            out = out + r
        return out


@dataclass(frozen=True)
class TesterReport:
    positivity: float
    causal_outer: float
    causal_inner: float
    total_trace: float
    tol: float = TESTER_TOL

    @property
    def passed(self) -> bool:
        return max(self.positivity, self.causal_outer, self.causal_inner, self.total_trace) <= self.tol

    def as_dict(self) -> dict:
        return {
            "positivity": self.positivity,
            "causal_outer": self.causal_outer,
            "causal_inner": self.causal_inner,
            "total_trace": self.total_trace,
            "tol": self.tol,
            "passed": self.passed,
        }


def validate_tester(t: Tester, tol: float = TESTER_TOL) -> TesterReport:
    """Residuals of a tester against positivity and causal normalization.

    The first-slot comb is recovered as ``R1 = Tr_{3,2}[R2] / d`` and then
    ``Tr_3[R2] = I_2 (x) R1`` and ``Tr_1[R1] = I_0`` are checked. Never raises.
    """
    d = t.d
    neg = 0.0
    for r in t.elements:
        herm = (r.matrix + r.matrix.conj().T) / 2
        neg = max(neg, -float(np.linalg.eigvalsh(herm).min()))
    r2 = t.total
    r1 = partial_trace(r2, {3, 2}) * (1.0 / d)
    outer = partial_trace(r2, {3}) - tensor_product(WiredOperator.identity([2], d), r1)
    inner = partial_trace(r1, {1}) - WiredOperator.identity([0], d)
    return TesterReport(
        positivity=max(neg, 0.0),
        causal_outer=float(np.max(np.abs(outer.matrix))),
        causal_inner=float(np.max(np.abs(inner.matrix))),
        total_trace=abs(r2.trace() - d**2),
        tol=tol,
    )


def _slot_operator(p: np.ndarray) -> WiredOperator:
    """``I_3 (x) |P*>><<P*|_{2,1} (x) I_0``."""
    return vectorize(p.conj(), 2, 1).projector().expand(TESTER_WIRES)


def outcome_probabilities(t: Tester, p) -> np.ndarray:
    """Probability of each guess when the unitary ``p`` is plugged into the tester."""
    p = _require_unitary(p, "tested operator")
    slot = _slot_operator(p).matrix
    probs = [np.trace(r.matrix @ slot).real / t.d for r in t.elements]
    return np.array(probs)


def gain(u_i, p) -> float:
    """``|Tr[U_i P^dagger]|^2 / d^2``."""
    u_i = np.asarray(u_i)
    p = np.asarray(p)
    d = u_i.shape[0]
    return float(abs(np.trace(u_i @ p.conj().T)) ** 2 / d**2)


def network_gain(t: Tester, p) -> float:
    probs = outcome_probabilities(t, p)
    return float(sum(pr * gain(u, p) for pr, u in zip(probs, t.labels)))


def network_fidelity(t: Tester | WiredOperator | Sequence[WiredOperator], p) -> float:
    """Fidelity of the overall channel ``R^(2) * P`` with ``P``.

    Accepts a tester, the summed comb, or any list of elements.
    """
    p = _require_unitary(p, "tested operator")
    d = p.shape[0]
    v = kron_kets(vectorize(p, 3, 0), vectorize(p.conj(), 2, 1)).vector
    if isinstance(t, Tester):
        elements = t.elements
    elif isinstance(t, WiredOperator):
        elements = (t,)
    else:
        elements = tuple(t)
    total = sum(np.vdot(v, r.matrix @ v).real for r in elements)
    return float(total / d**2)
