import math

import numpy as np
import pytest

from qcomb.biqkd import enumerate_error_rate
from qcomb.biqkd.montecarlo import (
    BLOCK,
    EveConfig,
    Tally,
    available_backends,
    build_tables,
    round_uniforms,
    simulate_counts,
    simulate_monte_carlo,
)
from qcomb.networks import x_from_y

needs_compiled = pytest.mark.skipif("cython" not in available_backends(), reason="compiled kernel not built")


def test_round_uniforms_are_counter_addressed():
    a = round_uniforms(5, 3, 100)
    b = round_uniforms(5, 3, 40)
    assert np.array_equal(a[:40], b)
    assert not np.array_equal(round_uniforms(5, 4, 40), b)
    assert not np.array_equal(round_uniforms(6, 3, 40), b)
    assert a.shape == (100, 6)
    assert a.min() >= 0 and a.max() < 1


def test_tables_normalized():
    t = build_tables(EveConfig(x_from_y(0.3)))
    assert np.all(np.diff(t.guess_cum, axis=-1) >= 0)
    assert np.all((t.p_first >= 0) & (t.p_first <= 1))
    assert set(np.unique(t.decode)) <= {-1, 0, 1}


def test_zero_weight_guess_never_drawn():
    # at the projective point a basis-state input makes some guesses impossible
    cfg = EveConfig(x_from_y(0.0), network_weights=(1.0, 0.0))
    t = simulate_counts(cfg, 50_000, 3, backend="python")
    lik_zero = t.eve[0, 1:, 0]
    assert lik_zero.sum() == 0


def test_rerun_is_bit_identical():
    cfg = EveConfig(x_from_y(0.3))
    assert simulate_counts(cfg, 150_000, 9) == simulate_counts(cfg, 150_000, 9)


def test_worker_count_does_not_change_counts():
    cfg = EveConfig(x_from_y(0.6))
    assert simulate_counts(cfg, 3 * BLOCK + 17, 1, workers=1) == simulate_counts(cfg, 3 * BLOCK + 17, 1, workers=3)


def test_block_partition_invariance():
    cfg = EveConfig(x_from_y(0.45))
    rounds = 4 * BLOCK
    whole = simulate_counts(cfg, rounds, 11)
    parts = Tally()
    for chunk in ([0, 2], [3], [1]):
        parts += simulate_counts(cfg, rounds, 11, blocks=chunk)
    assert parts == whole


def test_different_seeds_differ():
    cfg = EveConfig(x_from_y(0.3))
    assert simulate_counts(cfg, 10_000, 1) != simulate_counts(cfg, 10_000, 2)


@needs_compiled
@pytest.mark.parametrize("y", [0.0, 0.5, 1.0])
def test_compiled_matches_python(y):
    cfg = EveConfig(x_from_y(y))
    rounds = 2 * BLOCK + 1000
    assert simulate_counts(cfg, rounds, 42, backend="cython") == simulate_counts(cfg, rounds, 42, backend="python")


def test_unknown_backend():
    with pytest.raises(ValueError):
        simulate_counts(EveConfig(x_from_y(0.3)), 10, 0, backend="fortran")


def test_no_eve_produces_no_errors():
    t = simulate_counts(EveConfig(x_from_y(1.0)), 200_000, 5)
    assert t.errors == 0
    assert t.conclusive > 0


@pytest.mark.parametrize("y", [0.0, 0.3, 0.6, 0.9])
def test_agrees_with_enumeration(y):
    p = x_from_y(y)
    exact = enumerate_error_rate(p)
    sim = simulate_monte_carlo(p, 300_000, 20240327)
    for key in ("E_AB", "conclusive_rate", "H_AE"):
        se = sim.stderr[key]
        assert abs(getattr(sim, key) - getattr(exact, key)) <= 4 * se + 1e-12, key


def test_zero_conclusive_rounds_flagged():
    p = x_from_y(0.5)
    for seed in range(200):
        sim = simulate_monte_carlo(p, 1, seed)
        if not sim.e_ab_defined:
            assert math.isnan(sim.E_AB) and math.isnan(sim.I_AB)
            assert math.isnan(sim.stderr["E_AB"])
            return
    pytest.fail("no seed produced an inconclusive single round")


def test_input_validation():
    cfg = EveConfig(x_from_y(0.3))
    with pytest.raises(ValueError):
        simulate_counts(cfg, 0, 1)
    with pytest.raises(ValueError):
        simulate_counts(cfg, 10, -1)
    with pytest.raises(ValueError):
        EveConfig(x_from_y(0.3), network_weights=(0.7, 0.7))


def test_record_fields():
    sim = simulate_monte_carlo(x_from_y(0.3), 1000, 7)
    d = sim.as_dict()
    assert d["mode"] == "monte_carlo" and d["rounds"] == 1000 and d["seed"] == 7
    assert set(d["stderr"]) == {"E_AB", "conclusive_rate", "H_AE"}
