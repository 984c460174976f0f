"""Round-level mechanics of the two-way protocol.

Bob sends one of four states, Alice applies ``A1 = I`` or ``A2`` (an element
of the unbiased basis), Eve's optimal-I network acts on the travelling qubit,
and Bob measures either in the preparation basis or in the shifted one.
Bob decodes by exclusion: he only keeps outcomes that one of the two
encodings could not have produced.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..bases import muub_basis, muub_element, standard_basis
from ..networks import NetworkParams

__all__ = [
    "Encoding",
    "ALICE_OPERATORS",
    "INPUTS",
    "BASES",
    "MEASUREMENT_BASES",
    "EVE_NETWORKS",
    "ProtocolError",
    "BobRound",
    "RoundOutcome",
    "encode_action",
    "eve_conditional_state",
    "measurement_probability",
    "decode",
    "enumerate_branches",
]

_S = 1 / np.sqrt(2)
_KET0 = np.array([1, 0], dtype=np.complex128)
_KET1 = np.array([0, 1], dtype=np.complex128)

BASES: dict[str, tuple[np.ndarray, np.ndarray]] = {
    "Z": (_KET0, _KET1),
    "X": ((_KET0 + _KET1) * _S, (_KET0 - _KET1) * _S),
    "Y": ((_KET0 + 1j * _KET1) * _S, (_KET0 - 1j * _KET1) * _S),
}

# Bob's inputs: name -> (preparation basis, index within it)
INPUTS: dict[str, tuple[str, int]] = {"0": ("Z", 0), "1": ("Z", 1), "x+": ("X", 0), "x-": ("X", 1)}

# preparation basis -> (same basis, shifted basis)
MEASUREMENT_BASES: dict[str, tuple[str, str]] = {"Z": ("Z", "X"), "X": ("X", "Y")}

EVE_NETWORKS = {"standard": standard_basis(), "muub": muub_basis()}

_OVERLAP_ZERO = 1e-9
# Born probabilities below this are rounding noise from orthogonal states
_PROB_FLOOR = 1e-15


class ProtocolError(ValueError):
    pass


class Encoding(enum.IntEnum):
    A1 = 0
    A2 = 1

    @property
    def matrix(self) -> np.ndarray:
        return ALICE_OPERATORS[self]


ALICE_OPERATORS = {
    Encoding.A1: np.eye(2, dtype=np.complex128),
    Encoding.A2: muub_element((1, 1, -1)),
}


@dataclass(frozen=True)
class BobRound:
    """Bob's choices for one round: which state he sends and how he measures."""

    state: str
    basis: str

    def __post_init__(self):
        if self.state not in INPUTS:
            raise ProtocolError(f"unknown input state {self.state!r}")
        if self.basis not in MEASUREMENT_BASES[self.prep_basis]:
            raise ProtocolError(f"basis {self.basis} is not admissible for a state prepared in {self.prep_basis}")

    @property
    def prep_basis(self) -> str:
        return INPUTS[self.state][0]

    @property
    def phi(self) -> np.ndarray:
        b, k = INPUTS[self.state]
        return BASES[b][k]

    @property
    def shifted(self) -> bool:
        return self.basis != self.prep_basis

    @classmethod
    def all_rounds(cls) -> list["BobRound"]:
        return [cls(s, b) for s in INPUTS for b in MEASUREMENT_BASES[INPUTS[s][0]]]


@dataclass(frozen=True)
class RoundOutcome:
    """One leaf of the round probability tree."""

    state: str
    encoding: Encoding
    network: str
    guess: int
    basis: str
    outcome: int
    weight: float
    decoded: Encoding | None

    @property
    def conclusive(self) -> bool:
        return self.decoded is not None

    @property
    def wrong(self) -> bool:
        return self.decoded is not None and self.decoded != self.encoding


def encode_action(encoding: Encoding, phi) -> np.ndarray:
    return Encoding(encoding).matrix @ np.asarray(phi, dtype=np.complex128)


def eve_conditional_state(encoding: Encoding, guess, phi, params: NetworkParams) -> tuple[np.ndarray, float]:
    """Qubit returned to Bob when Eve's network outputs ``guess``.

    The unnormalized branch is ``y A|phi> + x Tr[A G^dagger] G|phi>``; its
    probability is the squared norm over ``d^2``. Returns the normalized state
    and that probability. A vanishing branch comes back as the zero vector with
    weight 0.
    """
    a = Encoding(encoding).matrix
    g = np.asarray(guess, dtype=np.complex128)
    phi = np.asarray(phi, dtype=np.complex128)
    f = params.y * (a @ phi) + params.x * np.trace(a @ g.conj().T) * (g @ phi)
    norm2 = float(np.vdot(f, f).real)
    d = a.shape[0]
    if norm2 <= 1e-30:
        return np.zeros_like(f), 0.0
    return f / np.sqrt(norm2), norm2 / d**2


def measurement_probability(psi_m, phi_f) -> float:
    """Born probability of finding ``phi_f`` (normalized internally) in ``psi_m``."""
    phi_f = np.asarray(phi_f, dtype=np.complex128)
    norm = np.linalg.norm(phi_f)
    if norm == 0.0:
        return 0.0
    p = float(abs(np.vdot(psi_m, phi_f / norm)) ** 2)
    return 0.0 if p < _PROB_FLOOR else p


def decode(round_: BobRound, outcome: int) -> Encoding | None:
    """Bob's inference by exclusion; ``None`` means inconclusive.

    In the preparation basis, finding the state orthogonal to ``|phi>`` rules
    out ``A1``. In the shifted basis, finding the state orthogonal to
    ``A2|phi>`` rules out ``A2``.
    """
    if outcome not in (0, 1):
        raise ProtocolError(f"outcome index must be 0 or 1, got {outcome!r}")
    found = BASES[round_.basis][outcome]
    phi = round_.phi
    if not round_.shifted:
        if abs(np.vdot(found, phi)) < _OVERLAP_ZERO:
            return Encoding.A2
        return None
    if abs(np.vdot(found, encode_action(Encoding.A2, phi))) < _OVERLAP_ZERO:
        return Encoding.A1
    return None


def enumerate_branches(params: NetworkParams, states=None, network_weights=(0.5, 0.5)) -> list[RoundOutcome]:
    """Every (input, encoding, network, guess, basis, outcome) leaf with its weight.

    Inputs, encodings and Bob's bases are uniform. Restricting ``states``
    renormalizes over the chosen inputs. Zero-weight guesses are dropped.
    """
    states = tuple(INPUTS) if states is None else tuple(states)
    leaves = []
    for s in states:
        for enc in Encoding:
            for (net_name, net), w_net in zip(EVE_NETWORKS.items(), network_weights):
                for gi, g in enumerate(net):
                    rounds = [BobRound(s, b) for b in MEASUREMENT_BASES[INPUTS[s][0]]]
                    f, w_guess = eve_conditional_state(enc, g, rounds[0].phi, params)
                    if w_guess == 0.0:
                        continue
                    for r in rounds:
                        for k, psi in enumerate(BASES[r.basis]):
                            w = w_guess * measurement_probability(psi, f) / (len(states) * 2 * 2) * w_net
                            leaves.append(RoundOutcome(s, enc, net_name, gi, r.basis, k, w, decode(r, k)))
    return leaves
