"""Monte Carlo simulation of the attacked protocol.

Round ``r`` draws its six uniforms from a Philox stream keyed by the seed,
with the block index ``r // BLOCK`` in the counter. The draws of a round
therefore depend only on ``(seed, r)``, and since the tallies are integer
counts any split of the blocks across workers gives identical totals.

The inner sampling loop is compiled when the ``_tally`` extension is
available; otherwise a numpy version with the same decision rules is used.
Set ``QCOMB_PURE_PYTHON=1`` to force the latter.
"""
from __future__ import annotations

import importlib
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..networks import NetworkParams
from .analysis import SecurityAnalysis, binary_entropy
from .protocol import (
    BASES,
    EVE_NETWORKS,
    INPUTS,
    MEASUREMENT_BASES,
    BobRound,
    Encoding,
    decode,
    eve_conditional_state,
    measurement_probability,
)

__all__ = [
    "BLOCK",
    "BACKEND",
    "EveConfig",
    "SamplingTables",
    "Tally",
    "available_backends",
    "build_tables",
    "round_uniforms",
    "simulate_counts",
    "simulate_monte_carlo",
]

BLOCK = 1 << 16
DRAWS_PER_ROUND = 6


def _load_backend():
    if os.environ.get("QCOMB_PURE_PYTHON"):
        return importlib.import_module("._tally_py", __package__), "python"
    try:
        return importlib.import_module("._tally", __package__), "cython"
    except ImportError:
        return importlib.import_module("._tally_py", __package__), "python"


_KERNEL, BACKEND = _load_backend()


def available_backends() -> list[str]:
    names = ["python"]
    try:
        importlib.import_module("._tally", __package__)
        names.insert(0, "cython")
    except ImportError:
        pass
    return names


def _kernel(backend: str | None):
    if backend is None:
        return _KERNEL
    if backend == "cython":
        return importlib.import_module("._tally", __package__)
    if backend == "python":
        return importlib.import_module("._tally_py", __package__)
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class EveConfig:
    params: NetworkParams
    network_weights: tuple[float, float] = (0.5, 0.5)

    def __post_init__(self):
        w = self.network_weights
        if len(w) != 2 or min(w) < 0 or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"network weights must be two nonnegative numbers summing to 1, got {w}")


@dataclass(frozen=True)
class SamplingTables:
    """Per-round conditional distributions, indexed (input, encoding, network, ...).

    ``guess_cum`` holds the first three cumulative guess probabilities, with
    every entry from the last nonzero guess onward pinned to 1 so that a
    zero-weight guess is never drawn. ``p_first`` is the probability of the
    first basis vector for each measurement choice (0 = preparation basis,
    1 = shifted). ``decode`` maps (input, choice, outcome) to -1 for
    inconclusive, else the inferred encoding.
    """

    guess_cum: np.ndarray
    p_first: np.ndarray
    decode: np.ndarray
    net_w0: float


def build_tables(config: EveConfig) -> SamplingTables:
    states = list(INPUTS)
    guess_cum = np.ones((4, 2, 2, 3))
    p_first = np.zeros((4, 2, 2, 4, 2))
    dec = np.full((4, 2, 2), -1, dtype=np.int8)
    for si, s in enumerate(states):
        rounds = [BobRound(s, b) for b in MEASUREMENT_BASES[INPUTS[s][0]]]
        for c, r in enumerate(rounds):
            for k in (0, 1):
                out = decode(r, k)
                dec[si, c, k] = -1 if out is None else int(out)
        phi = rounds[0].phi
        for enc in Encoding:
            for ni, net in enumerate(EVE_NETWORKS.values()):
                weights = np.zeros(4)
                for gi, g in enumerate(net):
                    f, w = eve_conditional_state(enc, g, phi, config.params)
                    weights[gi] = w
                    for c, r in enumerate(rounds):
                        p_first[si, enc, ni, gi, c] = measurement_probability(BASES[r.basis][0], f)
                cum = np.cumsum(weights) / weights.sum()
                last = int(np.flatnonzero(weights)[-1])
                cum[last:] = 1.0
                guess_cum[si, enc, ni] = cum[:3]
    return SamplingTables(guess_cum, p_first, dec, float(config.network_weights[0]))


def round_uniforms(seed: int, block: int, count: int) -> np.ndarray:
    """The ``(count, 6)`` uniforms for the first ``count`` rounds of a block."""
    bitgen = np.random.Philox(key=seed, counter=[0, 0, 0, block])
    return np.random.Generator(bitgen).random((count, DRAWS_PER_ROUND))


@dataclass
class Tally:
    rounds: int = 0
    conclusive: int = 0
    errors: int = 0
    # counts indexed (network, guess, encoding)
    eve: np.ndarray = field(default_factory=lambda: np.zeros((2, 4, 2), dtype=np.int64))

    def __iadd__(self, other: "Tally") -> "Tally":
        self.rounds += other.rounds
        self.conclusive += other.conclusive
        self.errors += other.errors
        self.eve += other.eve
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tally):
            return NotImplemented
        return (
            (self.rounds, self.conclusive, self.errors) == (other.rounds, other.conclusive, other.errors)
            and np.array_equal(self.eve, other.eve)
        )


def _run_block(kernel, tables: SamplingTables, seed: int, block: int, count: int) -> Tally:
    u = round_uniforms(seed, block, count)
    totals = np.zeros(2, dtype=np.int64)
    eve = np.zeros((2, 4, 2), dtype=np.int64)
    kernel.tally(u, tables.guess_cum, tables.p_first, tables.decode, tables.net_w0, totals, eve)
    return Tally(count, int(totals[0]), int(totals[1]), eve)


def simulate_counts(
    config: EveConfig,
    rounds: int,
    seed: int,
    *,
    blocks: list[int] | None = None,
    workers: int = 1,
    backend: str | None = None,
) -> Tally:
    """Raw counts over the requested blocks (all blocks covering ``rounds`` by default)."""
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    kernel = _kernel(backend)
    tables = build_tables(config)
    n_blocks = -(-rounds // BLOCK)
    todo = range(n_blocks) if blocks is None else blocks
    jobs = [(b, min(BLOCK, rounds - b * BLOCK)) for b in todo]
    total = Tally()
    if workers <= 1:
        for b, count in jobs:
            total += _run_block(kernel, tables, seed, b, count)
        return total
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for t in pool.map(lambda job: _run_block(kernel, tables, seed, *job), jobs):
            total += t
    return total


def _eve_entropy(eve: np.ndarray, rounds: int) -> tuple[float, float]:
    """Plug-in conditional entropy H(A | guess) and its delta-method standard error."""
    joint = eve.reshape(8, 2) / rounds
    marg = joint.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(joint > 0, joint / marg, 1.0)
    grad = -np.log2(cond)
    h = float(np.sum(joint * grad))
    var = (np.sum(joint * grad**2) - h**2) / rounds
    return h, math.sqrt(max(var, 0.0))


def simulate_monte_carlo(
    config: EveConfig | NetworkParams,
    rounds: int,
    seed: int,
    *,
    workers: int = 1,
    backend: str | None = None,
) -> SecurityAnalysis:
    if isinstance(config, NetworkParams):
        config = EveConfig(config)
    t = simulate_counts(config, rounds, seed, workers=workers, backend=backend)
    rate = t.conclusive / t.rounds
    defined = t.conclusive > 0
    e_ab = t.errors / t.conclusive if defined else float("nan")
    h_ae, h_se = _eve_entropy(t.eve, t.rounds)
    stderr = {
        "E_AB": math.sqrt(e_ab * (1 - e_ab) / t.conclusive) if defined else float("nan"),
        "conclusive_rate": math.sqrt(rate * (1 - rate) / t.rounds),
        "H_AE": h_se,
    }
    return SecurityAnalysis(
        y=config.params.y,
        x=config.params.x,
        H_AE=h_ae,
        I_AE=1.0 - h_ae,
        E_AB=e_ab,
        I_AB=1.0 - binary_entropy(e_ab) if defined else float("nan"),
        conclusive_rate=rate,
        mode="monte_carlo",
        rounds=t.rounds,
        seed=seed,
        stderr=stderr,
        e_ab_defined=defined,
    )
