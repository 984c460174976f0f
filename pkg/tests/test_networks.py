import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcomb.comb import network_fidelity, network_gain, outcome_probabilities, validate_tester
from qcomb.networks import (
    ConstraintError,
    NetworkParams,
    closed_form_metrics,
    guess_probability_closed_form,
    optimal_i_network,
    projective_network,
    x_from_y,
)

Y_GRID = [k / 20 for k in range(21)]


class TestParams:
    def test_endpoints(self):
        assert x_from_y(0.0) == NetworkParams(1.0, 0.0)
        assert x_from_y(1.0) == NetworkParams(0.0, 1.0)

    def test_interior_value(self):
        p = x_from_y(0.5)
        assert p.x == pytest.approx((-0.5 + math.sqrt(3.25)) / 2)

    def test_off_curve_rejected(self):
        with pytest.raises(ConstraintError):
            NetworkParams(0.5, 0.5)

    def test_out_of_range_rejected(self):
        with pytest.raises(ConstraintError):
            x_from_y(1.5)
        with pytest.raises(ConstraintError):
            x_from_y(-0.1)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 1.0))
    def test_constraint_holds(self, y):
        p = x_from_y(y)
        assert abs(p.constraint_residual) <= 1e-12
        assert 0.0 <= p.x <= 1.0


class TestOptimalNetwork:
    def test_x1_is_projective(self, std):
        a = optimal_i_network(std, x_from_y(0.0))
        b = projective_network(std)
        for ra, rb in zip(a.elements, b.elements):
            assert np.allclose(ra.matrix, rb.matrix, atol=1e-15)

    def test_y1_is_identity_channel(self, std, rng):
        from qcomb.bases import haar_random_su2

        t = optimal_i_network(std, x_from_y(1.0))
        for _ in range(5):
            p = haar_random_su2(rng)
            assert abs(network_fidelity(t, p) - 1) <= 1e-12
            assert np.allclose(outcome_probabilities(t, p), 0.25, atol=1e-12)

    @pytest.mark.parametrize("basis_name", ["std", "muub"])
    def test_normalization_on_grid(self, basis_name, request):
        basis = request.getfixturevalue(basis_name)
        for y in Y_GRID:
            report = validate_tester(optimal_i_network(basis, x_from_y(y)))
            assert report.passed, (y, report.as_dict())

    def test_all_sixteen_pairings(self, std, muub):
        for y in (0.0, 0.3, 0.8):
            p = x_from_y(y)
            t = optimal_i_network(std, p)
            for k, m in enumerate(muub):
                probs = outcome_probabilities(t, m)
                assert np.allclose(probs, guess_probability_closed_form(p, None), atol=1e-12), (y, k)
            for k, u in enumerate(std):
                probs = outcome_probabilities(t, u)
                for i in range(4):
                    expected = guess_probability_closed_form(p, i == k)
                    assert abs(probs[i] - expected) <= 1e-12

    def test_averages_independent_of_chosen_pair(self, std, muub):
        for y in (0.0, 0.5, 1.0):
            p = x_from_y(y)
            t = optimal_i_network(std, p)
            cf = closed_form_metrics(p)
            for u in std:
                for m in muub:
                    g = (network_gain(t, u) + network_gain(t, m)) / 2
                    f = (network_fidelity(t, u) + network_fidelity(t, m)) / 2
                    assert abs(g - cf["G_avg_opt"]) <= 1e-12
                    assert abs(f - cf["F_avg_opt"]) <= 1e-12

    def test_closed_form_probabilities_sum(self):
        for y in Y_GRID:
            p = x_from_y(y)
            tot = guess_probability_closed_form(p, True) + 3 * guess_probability_closed_form(p, False)
            assert abs(tot - 1) <= 1e-12
            assert abs(4 * guess_probability_closed_form(p, None) - 1) <= 1e-12

    def test_closed_form_matches_comb_on_grid(self, std, a2):
        for y in Y_GRID:
            p = x_from_y(y)
            t = optimal_i_network(std, p)
            g = (network_gain(t, std[0]) + network_gain(t, a2)) / 2
            f = (network_fidelity(t, std[0]) + network_fidelity(t, a2)) / 2
            cf = closed_form_metrics(p)
            assert abs(g - cf["G_avg_opt"]) <= 1e-10
            assert abs(f - cf["F_avg_opt"]) <= 1e-10

    def test_swapped_roles(self, std, muub):
        # a network built on the unbiased basis treats the Paulis as the unbiased inputs
        for y in (0.0, 0.45, 1.0):
            p = x_from_y(y)
            t = optimal_i_network(muub, p)
            g = (network_gain(t, muub[0]) + network_gain(t, std[0])) / 2
            f = (network_fidelity(t, muub[0]) + network_fidelity(t, std[0])) / 2
            cf = closed_form_metrics(p)
            assert abs(g - cf["G_avg_opt"]) <= 1e-10
            assert abs(f - cf["F_avg_opt"]) <= 1e-10

    def test_gain_decreases_fidelity_increases(self):
        rows = [closed_form_metrics(x_from_y(y)) for y in Y_GRID]
        g = [r["G_avg_opt"] for r in rows]
        f = [r["F_avg_opt"] for r in rows]
        assert all(a >= b - 1e-15 for a, b in zip(g, g[1:]))
        assert all(a <= b + 1e-15 for a, b in zip(f, f[1:]))
        assert g[0] == pytest.approx(5 / 8) and g[-1] == pytest.approx(1 / 4)
        assert f[0] == pytest.approx(5 / 8) and f[-1] == pytest.approx(1.0)
