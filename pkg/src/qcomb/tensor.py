"""Labeled-wire tensor algebra for small qudit operators.

Every operator carries the list of wires (Hilbert-space labels) it acts on.
Matrices are always stored with wires in descending label order, so an
operator on wires ``(3, 2, 1, 0)`` has wire 3 as the most significant index.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DEFAULT_EPS",
    "WireError",
    "WireCollisionError",
    "WiredOperator",
    "WiredVector",
    "DoubleKet",
    "default_eps",
    "approx_equal",
    "permute_wires",
    "tensor_product",
    "vectorize",
    "kron_kets",
    "partial_trace",
    "partial_transpose",
]

DEFAULT_EPS = 1e-12


class WireError(ValueError):
    """Raised when an operation refers to a wire the operator does not carry."""


class WireCollisionError(WireError):
    """Raised when two operators that must be disjoint share a wire label."""


def default_eps() -> float:
    """Comparison tolerance, overridable through the ``QCOMB_EPS`` variable."""
    raw = os.environ.get("QCOMB_EPS")
    if raw is None:
        return DEFAULT_EPS
    return float(raw)


def approx_equal(a, b, eps: float | None = None) -> bool:
    """Max-abs comparison of two arrays (or wired objects) within ``eps``."""
    a = a.matrix if isinstance(a, WiredOperator) else np.asarray(a)
    b = b.matrix if isinstance(b, WiredOperator) else np.asarray(b)
    if a.shape != b.shape:
        return False
    tol = default_eps() if eps is None else eps
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol)


def _canonical(wires: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(wires, reverse=True))


def _check_distinct(wires: Sequence[int]) -> None:
    if len(set(wires)) != len(wires):
        raise WireCollisionError(f"duplicate wire labels in {tuple(wires)}")


def permute_wires(matrix: np.ndarray, src: Sequence[int], dst: Sequence[int], d: int = 2) -> np.ndarray:
    """Reorder the tensor factors of ``matrix`` from wire order ``src`` to ``dst``.

    Works for square operators and for vectors (1-D arrays).
    """
    src, dst = tuple(src), tuple(dst)
    if sorted(src) != sorted(dst):
        raise WireError(f"wire orders {src} and {dst} are not permutations of each other")
    n = len(src)
    perm = [src.index(w) for w in dst]
    if matrix.ndim == 1:
        return matrix.reshape((d,) * n).transpose(perm).reshape(d**n)
    axes = perm + [n + p for p in perm]
    return matrix.reshape((d,) * (2 * n)).transpose(axes).reshape(d**n, d**n)


@dataclass(frozen=True)
class WiredOperator:
    """Square operator acting on labeled wires of dimension ``d`` each.

    Use :meth:`from_order` to build one from a matrix written in an arbitrary
    wire order; the constructor itself expects canonical (descending) order.
    """

    matrix: np.ndarray
    wires: tuple[int, ...]
    d: int = 2

    def __post_init__(self):
        wires = tuple(int(w) for w in self.wires)
        _check_distinct(wires)
        if wires != _canonical(wires):
            raise WireError(f"wires {wires} are not in canonical descending order; use from_order")
        m = np.array(self.matrix, dtype=np.complex128)
        size = self.d ** len(wires)
        if m.shape != (size, size):
            raise ValueError(f"matrix shape {m.shape} does not match {len(wires)} wires of dimension {self.d}")
        m.setflags(write=False)
        object.__setattr__(self, "wires", wires)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_order(cls, matrix, wires: Sequence[int], d: int = 2) -> "WiredOperator":
        wires = tuple(int(w) for w in wires)
        _check_distinct(wires)
        m = np.asarray(matrix, dtype=np.complex128)
        return cls(permute_wires(m, wires, _canonical(wires), d), _canonical(wires), d)

    @classmethod
    def identity(cls, wires: Sequence[int], d: int = 2) -> "WiredOperator":
        wires = _canonical(wires)
        return cls(np.eye(d ** len(wires)), wires, d)

    def reorder(self, order: Sequence[int]) -> np.ndarray:
        """Matrix of this operator written in the wire order ``order``."""
        return permute_wires(self.matrix, self.wires, order, self.d)

    def expand(self, wires: Iterable[int]) -> "WiredOperator":
        """Tensor with identities so the result acts on ``wires`` (a superset)."""
        extra = set(wires) - set(self.wires)
        if not extra:
            return self
        return tensor_product(self, WiredOperator.identity(extra, self.d))

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def dagger(self) -> "WiredOperator":
        return WiredOperator(self.matrix.conj().T, self.wires, self.d)

    def _same_wires(self, other: "WiredOperator") -> None:
        if self.wires != other.wires or self.d != other.d:
            raise WireError(f"operators act on different wires: {self.wires} vs {other.wires}")

    def __add__(self, other: "WiredOperator") -> "WiredOperator":
        self._same_wires(other)
        return WiredOperator(self.matrix + other.matrix, self.wires, self.d)

    def __sub__(self, other: "WiredOperator") -> "WiredOperator":
        self._same_wires(other)
        return WiredOperator(self.matrix - other.matrix, self.wires, self.d)

    def __mul__(self, scalar) -> "WiredOperator":
        return WiredOperator(self.matrix * scalar, self.wires, self.d)

    __rmul__ = __mul__

    def __matmul__(self, other: "WiredOperator") -> "WiredOperator":
        self._same_wires(other)
        return WiredOperator(self.matrix @ other.matrix, self.wires, self.d)


@dataclass(frozen=True)
class WiredVector:
    """Ket on labeled wires, stored in canonical (descending) wire order."""

    vector: np.ndarray
    wires: tuple[int, ...]
    d: int = 2

    def projector(self) -> WiredOperator:
        return WiredOperator(np.outer(self.vector, self.vector.conj()), self.wires, self.d)

    def inner(self, other: "WiredVector") -> complex:
        if self.wires != other.wires:
            raise WireError(f"kets live on different wires: {self.wires} vs {other.wires}")
        return complex(np.vdot(self.vector, other.vector))


@dataclass(frozen=True)
class DoubleKet:
    """Vectorized operator ``|M>>`` on the wire pair ``(out_wire, in_wire)``.

    Component ``<i|M|j>`` sits at index ``i*d + j``, with the output wire as
    the most significant factor.
    """

    vector: np.ndarray
    wire_pair: tuple[int, int]
    d: int = 2

    def inner(self, other: "DoubleKet") -> complex:
        """``<<self|other>>``, which equals ``Tr[self^dagger other]``."""
        return complex(np.vdot(self.vector, other.vector))

    def as_wired(self) -> WiredVector:
        canon = _canonical(self.wire_pair)
        return WiredVector(permute_wires(self.vector, self.wire_pair, canon, self.d), canon, self.d)

    def projector(self) -> WiredOperator:
        """``|M>><<M|`` as an operator on both wires."""
        return self.as_wired().projector()


def vectorize(m, out_wire: int = 1, in_wire: int = 0) -> DoubleKet:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"vectorize needs a square matrix, got shape {m.shape}")
    if out_wire == in_wire:
        raise WireCollisionError("output and input wire of a double ket must differ")
    return DoubleKet(m.reshape(-1).copy(), (int(out_wire), int(in_wire)), m.shape[0])


def kron_kets(*kets) -> WiredVector:
    """Tensor product of kets on disjoint wires, in canonical wire order."""
    vec = np.ones(1, dtype=np.complex128)
    order: list[int] = []
    d = kets[0].d
    for k in kets:
        if isinstance(k, DoubleKet):
            vec = np.kron(vec, k.vector)
            order.extend(k.wire_pair)
        else:
            vec = np.kron(vec, k.vector)
            order.extend(k.wires)
    _check_distinct(order)
    canon = _canonical(order)
    return WiredVector(permute_wires(vec, order, canon, d), canon, d)


def tensor_product(a: WiredOperator, b: WiredOperator) -> WiredOperator:
    if a.d != b.d:
        raise ValueError("operators have different local dimensions")
    shared = set(a.wires) & set(b.wires)
    if shared:
        raise WireCollisionError(f"wires {sorted(shared)} appear on both operands")
    return WiredOperator.from_order(np.kron(a.matrix, b.matrix), a.wires + b.wires, a.d)


def partial_trace(op: WiredOperator, traced: Iterable[int]) -> WiredOperator:
    traced = set(int(w) for w in traced)
    unknown = traced - set(op.wires)
    if unknown:
        raise WireError(f"cannot trace wires {sorted(unknown)}; operator carries {op.wires}")
    n, d = len(op.wires), op.d
    t = op.matrix.reshape((d,) * (2 * n))
    keep = [k for k, w in enumerate(op.wires) if w not in traced]
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = [letters[k] for k in range(n)]
    cols = [letters[n + k] if k in keep else letters[k] for k in range(n)]
    out = "".join(rows[k] for k in keep) + "".join(cols[k] for k in keep)
    m = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    size = d ** len(keep)
    kept = tuple(op.wires[k] for k in keep)
    return WiredOperator(m.reshape(size, size), kept, d)


def partial_transpose(op: WiredOperator, wire: int) -> WiredOperator:
    if wire not in op.wires:
        raise WireError(f"cannot transpose wire {wire}; operator carries {op.wires}")
    n, d = len(op.wires), op.d
    k = op.wires.index(wire)
    axes = list(range(2 * n))
    axes[k], axes[n + k] = n + k, k
    m = op.matrix.reshape((d,) * (2 * n)).transpose(axes).reshape(d**n, d**n)
    return WiredOperator(m, op.wires, d)
