"""Eve's inference, Alice-Bob error rate and the Csiszar-Korner crossing."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np
from scipy.optimize import bisect

from ..networks import NetworkParams, guess_probability_closed_form, x_from_y
from .protocol import INPUTS, Encoding, enumerate_branches

__all__ = [
    "SecurityAnalysis",
    "ThresholdResult",
    "ThresholdError",
    "binary_entropy",
    "guess_likelihoods",
    "eve_posterior",
    "entropy_by_guess",
    "alice_eve_mutual_info",
    "closed_form_error_rate",
    "error_statistics",
    "enumerate_error_rate",
    "per_input_error_rates",
    "alice_bob_mutual_info",
    "security_curve",
    "security_threshold",
]

NETWORKS = ("standard", "muub")
# the guess index that coincides with an encoding: U_1 = A1 and M_1 = A2
_MATCHING = {"standard": (0, Encoding.A1), "muub": (0, Encoding.A2)}


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


@dataclass(frozen=True)
class SecurityAnalysis:
    y: float
    x: float
    H_AE: float
    I_AE: float
    E_AB: float
    I_AB: float
    conclusive_rate: float
    mode: Literal["analytic", "monte_carlo"] = "analytic"
    rounds: int | None = None
    seed: int | None = None
    stderr: dict[str, float] = field(default_factory=dict)
    e_ab_defined: bool = True

    def as_dict(self) -> dict:
        out = asdict(self)
        if self.mode == "analytic":
            for k in ("rounds", "seed", "stderr", "e_ab_defined"):
                out.pop(k)
        return out


def guess_likelihoods(params: NetworkParams, network: str) -> np.ndarray:
    """``Pr(guess | A_j)`` as a (4 guesses, 2 encodings) array for one network."""
    match_index, match_enc = _MATCHING[network]
    out = np.empty((4, 2))
    for enc in Encoding:
        for g in range(4):
            if enc == match_enc:
                out[g, enc] = guess_probability_closed_form(params, g == match_index)
            else:
                out[g, enc] = guess_probability_closed_form(params, None)
    return out


def eve_posterior(params: NetworkParams, network: str, guess: int) -> tuple[float, float]:
    """``(Pr(A1 | guess), Pr(A2 | guess))`` for Eve's network and outcome."""
    x, y = params.x, params.y
    match_index, match_enc = _MATCHING[network]
    if guess == match_index:
        p_match = (4 * x * x + 4 * x * y + y * y) / (5 * x * x + 5 * x * y + 2 * y * y)
    else:
        p_match = y * y / (x * x + x * y + 2 * y * y)
    if match_enc == Encoding.A1:
        return p_match, 1.0 - p_match
    return 1.0 - p_match, p_match


def entropy_by_guess(params: NetworkParams) -> tuple[float, float]:
    """Eve's residual entropy after the matching guess and after any other guess."""
    return (
        binary_entropy(eve_posterior(params, "standard", 0)[0]),
        binary_entropy(eve_posterior(params, "standard", 1)[0]),
    )


def alice_eve_mutual_info(
    params: NetworkParams, marginals: Literal["joint", "printed"] = "joint"
) -> tuple[float, float]:
    """``(H_AE, I_AE)`` averaged over both of Eve's networks.

    ``"joint"`` weighs each of the eight guesses by its total probability,
    ``sum_j Pr(guess | A_j) Pr(A_j) Pr(network)``. ``"printed"`` uses
    ``sum_j Pr(A_j | guess) / 4``, which gives every guess weight 1/4 and is
    kept only as a diagnostic.
    """
    h_total = 0.0
    for net in NETWORKS:
        lik = guess_likelihoods(params, net)
        for g in range(4):
            post = eve_posterior(params, net, g)
            if marginals == "joint":
                weight = lik[g].sum() * 0.5 * 0.5
            elif marginals == "printed":
                weight = sum(post) / 4
            else:
                raise ValueError(f"unknown marginal convention {marginals!r}")
            h_total += weight * binary_entropy(post[0])
    return float(h_total), float(1.0 - h_total)


def closed_form_error_rate(y: float) -> float:
    """Raw-key error rate as a closed function of ``y``."""
    s = y * math.sqrt(4 - 3 * y * y)
    return (-2 + y * y + s) / (-6 + y * y + s)


def error_statistics(params: NetworkParams, states=None) -> tuple[float, float, float]:
    """``(E_AB, conclusive_rate, total_weight)`` by exhaustive enumeration."""
    leaves = enumerate_branches(params, states)
    total = math.fsum(b.weight for b in leaves)
    conclusive = math.fsum(b.weight for b in leaves if b.conclusive)
    wrong = math.fsum(b.weight for b in leaves if b.wrong)
    e_ab = wrong / conclusive if conclusive > 0 else float("nan")
    return e_ab, conclusive, total


def alice_bob_mutual_info(params: NetworkParams | float) -> float:
    """``1 - h(E_AB)``; accepts network parameters or an error rate."""
    if isinstance(params, NetworkParams):
        e_ab = error_statistics(params)[0]
    else:
        e_ab = float(params)
    return 1.0 - binary_entropy(e_ab)


def enumerate_error_rate(params: NetworkParams) -> SecurityAnalysis:
    e_ab, rate, _ = error_statistics(params)
    h_ae, i_ae = alice_eve_mutual_info(params)
    return SecurityAnalysis(
        y=params.y,
        x=params.x,
        H_AE=h_ae,
        I_AE=i_ae,
        E_AB=e_ab,
        I_AB=1.0 - binary_entropy(e_ab),
        conclusive_rate=rate,
    )


def per_input_error_rates(params: NetworkParams) -> dict[str, float]:
    return {s: error_statistics(params, [s])[0] for s in INPUTS}


def security_curve(samples: int) -> list[tuple[float, float, float]]:
    """``(E_AB, I_AB, I_AE)`` rows for ``y`` uniform on [0, 1]."""
    rows = []
    for y in np.linspace(0.0, 1.0, samples):
        a = enumerate_error_rate(x_from_y(float(y)))
        rows.append((a.E_AB, a.I_AB, a.I_AE))
    return rows


@dataclass(frozen=True)
class ThresholdResult:
    y_star: float
    x_star: float
    E_star: float
    I_star: float
    I_AB: float
    I_AE: float


class ThresholdError(RuntimeError):
    pass


def _advantage(y: float) -> float:
    params = x_from_y(y)
    return alice_bob_mutual_info(params) - alice_eve_mutual_info(params)[1]


def security_threshold(tolerance: float = 1e-9, scan_points: int = 64) -> ThresholdResult:
    """Where ``I_AB = I_AE``: scan ``y`` for a sign change, then bisect."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    ys = np.linspace(0.0, 1.0, scan_points)
    vals = [_advantage(float(y)) for y in ys]
    bracket = None
    for k in range(len(ys) - 1):
        if vals[k] == 0.0:
            bracket = (ys[k], ys[k])
            break
        if vals[k] * vals[k + 1] < 0:
            bracket = (ys[k], ys[k + 1])
            break
    if bracket is None:
        raise ThresholdError(
            f"I_AB - I_AE does not change sign on [0, 1]: {vals[0]:.6g} at y=0, {vals[-1]:.6g} at y=1"
        )
    lo, hi = bracket
    y_star = lo if lo == hi else bisect(_advantage, lo, hi, xtol=tolerance, rtol=4 * np.finfo(float).eps)
    params = x_from_y(y_star)
    e_star = error_statistics(params)[0]
    i_ab = 1.0 - binary_entropy(e_star)
    i_ae = alice_eve_mutual_info(params)[1]
    return ThresholdResult(y_star, params.x, e_star, i_ab, i_ab, i_ae)
