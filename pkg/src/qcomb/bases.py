"""Unitary operator bases for a qubit: Paulis and their mutually unbiased partner."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal

import numpy as np

__all__ = [
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "UnitaryBasis",
    "Decomposition",
    "MUUB_SIGNS",
    "standard_basis",
    "muub_basis",
    "muub_element",
    "decompose",
    "haar_random_su2",
    "is_mutually_unbiased",
    "unbiasedness_residual",
    "is_unitary",
]

PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Sign vectors (a2, a3, a4) with product -1, ordered so that (+, +, -) comes first.
MUUB_SIGNS: tuple[tuple[int, int, int], ...] = tuple(
    s for s in itertools.product((1, -1), repeat=3) if s[0] * s[1] * s[2] == -1
)

UNBIASED_TOL = 1e-9


def is_unitary(u, tol: float = 1e-9) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) <= tol)


@dataclass(frozen=True)
class UnitaryBasis:
    elements: tuple[np.ndarray, ...]
    name: Literal["standard", "muub", "custom"] = "custom"

    def __post_init__(self):
        frozen = []
        for e in self.elements:
            m = np.array(e, dtype=np.complex128)
            m.setflags(write=False)
            frozen.append(m)
        object.__setattr__(self, "elements", tuple(frozen))

    @property
    def d(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def gram(self) -> np.ndarray:
        """Matrix of overlaps ``Tr[B_i^dagger B_j]``."""
        return np.array([[np.trace(a.conj().T @ b) for b in self.elements] for a in self.elements])

    def residuals(self) -> dict[str, float]:
        """Worst unitarity and orthogonality deviations over the basis."""
        eye = np.eye(self.d)
        unitarity = max(np.max(np.abs(e.conj().T @ e - eye)) for e in self.elements)
        ortho = np.max(np.abs(self.gram() - self.d * np.eye(len(self))))
        return {"unitarity": float(unitarity), "orthogonality": float(ortho)}

    def with_element(self, i: int, m) -> "UnitaryBasis":
        elements = list(self.elements)
        elements[i] = np.asarray(m, dtype=np.complex128)
        return UnitaryBasis(tuple(elements), "custom")


@dataclass(frozen=True)
class Decomposition:
    coefficients: np.ndarray
    basis: UnitaryBasis

    def reconstruct(self) -> np.ndarray:
        return sum(a * u for a, u in zip(self.coefficients, self.basis))

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2


def standard_basis() -> UnitaryBasis:
    return UnitaryBasis((PAULI_I, PAULI_X, PAULI_Y, PAULI_Z), "standard")


def muub_element(signs: tuple[int, int, int]) -> np.ndarray:
    """``(I + i(a2 X + a3 Y + a4 Z)) / 2`` for a sign vector ``(a2, a3, a4)``."""
    a2, a3, a4 = signs
    return (PAULI_I + 1j * (a2 * PAULI_X + a3 * PAULI_Y + a4 * PAULI_Z)) / 2


def muub_basis() -> UnitaryBasis:
    return UnitaryBasis(tuple(muub_element(s) for s in MUUB_SIGNS), "muub")


def decompose(p, basis: UnitaryBasis) -> Decomposition:
    p = np.asarray(p, dtype=np.complex128)
    if p.shape != (basis.d, basis.d):
        raise ValueError(f"expected a {basis.d}x{basis.d} matrix, got {p.shape}")
    coeffs = np.array([np.trace(u.conj().T @ p) / basis.d for u in basis])
    return Decomposition(coeffs, basis)


def haar_random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of SU(2).

    QR of a complex Ginibre matrix, with the phases of R's diagonal pushed into
    Q, followed by a global phase so that ``det = 1``.
    """
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return q / np.sqrt(np.linalg.det(q))


def unbiasedness_residual(a: UnitaryBasis, b: UnitaryBasis) -> float:
    """Largest deviation of ``|Tr[A_i^dagger B_j]|^2`` from 1 over all pairs."""
    worst = 0.0
    for u in a:
        for v in b:
            worst = max(worst, abs(abs(np.trace(u.conj().T @ v)) ** 2 - 1.0))
    return worst


def is_mutually_unbiased(a: UnitaryBasis, b: UnitaryBasis, tol: float = UNBIASED_TOL) -> tuple[bool, float]:
    """Whether every cross overlap satisfies ``|Tr[A_i^dagger B_j]|^2 = 1``.

    This is the qubit criterion; it is equivalent to every decomposition
    weight of one basis in the other being 1/4. Returns the verdict together
    with the worst residual.
    """
    res = unbiasedness_residual(a, b)
    return res <= tol, res
