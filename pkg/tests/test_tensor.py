import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcomb.bases import PAULI_I, PAULI_X, haar_random_su2
from qcomb.tensor import (
    WireCollisionError,
    WireError,
    WiredOperator,
    approx_equal,
    default_eps,
    permute_wires,
    partial_trace,
    partial_transpose,
    tensor_product,
    vectorize,
)


def on(m, *wires):
    return WiredOperator.from_order(m, wires)


def random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def swap_matrix(d=2):
    # oracle: |a>|b> -> |b>|a>, written out basis state by basis state
    s = np.zeros((d * d, d * d))
    for a, b in itertools.product(range(d), repeat=2):
        s[b * d + a, a * d + b] = 1
    return s


class TestTensorProduct:
    def test_identity(self):
        out = tensor_product(on(PAULI_I, 1), on(PAULI_I, 0))
        assert out.wires == (1, 0)
        assert np.array_equal(out.matrix, np.eye(4))

    def test_block_structure(self):
        out = tensor_product(on(PAULI_X, 1), on(PAULI_I, 0))
        expected = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
        assert np.array_equal(out.matrix, expected)

    def test_reverse_operand_order_is_canonicalized(self):
        flipped = tensor_product(on(PAULI_I, 0), on(PAULI_X, 1))
        raw = np.kron(PAULI_I, PAULI_X)  # written in wire order (0, 1)
        s = swap_matrix()
        assert np.array_equal(flipped.matrix, s @ raw @ s.T)
        assert np.array_equal(flipped.matrix, tensor_product(on(PAULI_X, 1), on(PAULI_I, 0)).matrix)

    def test_collision(self):
        with pytest.raises(WireCollisionError):
            tensor_product(on(PAULI_X, 1), on(PAULI_X, 1))

    def test_duplicate_wire_labels_rejected(self):
        with pytest.raises(WireCollisionError):
            WiredOperator.from_order(np.eye(4), (1, 1))

    def test_noncanonical_constructor_rejected(self):
        with pytest.raises(WireError):
            WiredOperator(np.eye(4), (0, 1))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            WiredOperator(np.eye(3), (1, 0))


class TestVectorize:
    def test_identity(self):
        assert np.array_equal(vectorize(PAULI_I).vector, [1, 0, 0, 1])

    def test_pauli_x(self):
        assert np.array_equal(vectorize(PAULI_X).vector, [0, 1, 1, 0])

    def test_inner_product(self):
        ket = vectorize(PAULI_X)
        assert ket.inner(ket) == pytest.approx(2.0)

    def test_index_convention(self):
        m = np.arange(4).reshape(2, 2)
        v = vectorize(m).vector
        for i, j in itertools.product(range(2), repeat=2):
            assert v[i * 2 + j] == m[i, j]

    def test_non_square(self):
        with pytest.raises(ValueError):
            vectorize(np.ones((2, 3)))

    def test_unitary_norm(self, rng):
        u = haar_random_su2(rng)
        assert abs(vectorize(u).inner(vectorize(u)) - 2) < 1e-12

    def test_identities_on_random_unitaries(self, rng):
        eye_ket = vectorize(np.eye(2)).vector
        for _ in range(100):
            m, n = haar_random_su2(rng), haar_random_su2(rng)
            vec = vectorize(m).vector
            assert np.max(np.abs(np.kron(m, np.eye(2)) @ eye_ket - vec)) <= 1e-12
            assert np.max(np.abs(np.kron(np.eye(2), m.T) @ eye_ket - vec)) <= 1e-12
            assert abs(vectorize(m).inner(vectorize(n)) - np.trace(m.conj().T @ n)) <= 1e-12


class TestPartialTrace:
    def test_maximally_entangled_marginal(self):
        proj = vectorize(np.eye(2), 1, 0).projector()
        out = partial_trace(proj, {0})
        assert out.wires == (1,)
        assert np.allclose(out.matrix, np.eye(2), atol=1e-15)

    def test_full_trace(self, rng):
        op = WiredOperator(random_matrix(rng, 8), (3, 2, 0))
        out = partial_trace(op, {3, 2, 0})
        assert out.matrix.shape == (1, 1)
        assert abs(out.matrix[0, 0] - np.trace(op.matrix)) < 1e-12

    def test_factorization(self, rng):
        a, b = random_matrix(rng, 2), random_matrix(rng, 2)
        prod = tensor_product(on(a, 1), on(b, 0))
        assert approx_equal(partial_trace(prod, {1}).matrix, np.trace(a) * b)
        assert approx_equal(partial_trace(prod, {0}).matrix, np.trace(b) * a)

    def test_middle_wire(self, rng):
        a, b, c = (random_matrix(rng, 2) for _ in range(3))
        prod = tensor_product(tensor_product(on(a, 3), on(b, 2)), on(c, 0))
        out = partial_trace(prod, {2})
        assert out.wires == (3, 0)
        assert approx_equal(out.matrix, np.trace(b) * np.kron(a, c))

    def test_unknown_wire(self):
        with pytest.raises(WireError):
            partial_trace(WiredOperator.identity((1, 0)), {2})


class TestPartialTranspose:
    def test_involution(self, rng):
        r = WiredOperator(random_matrix(rng, 16), (3, 2, 1, 0))
        assert np.array_equal(partial_transpose(partial_transpose(r, 1), 1).matrix, r.matrix)

    def test_product_case(self, rng):
        a, b = random_matrix(rng, 2), random_matrix(rng, 2)
        out = partial_transpose(tensor_product(on(a, 1), on(b, 0)), 1)
        assert approx_equal(out.matrix, np.kron(a.T, b))

    def test_trace_preserved(self, rng):
        r = WiredOperator(random_matrix(rng, 8), (2, 1, 0))
        for w in r.wires:
            assert abs(partial_transpose(r, w).trace() - r.trace()) < 1e-12

    def test_all_wires_is_full_transpose(self, rng):
        r = WiredOperator(random_matrix(rng, 4), (1, 0))
        assert np.array_equal(partial_transpose(partial_transpose(r, 1), 0).matrix, r.matrix.T)

    def test_unknown_wire(self):
        with pytest.raises(WireError):
            partial_transpose(WiredOperator.identity((1, 0)), 5)


@settings(max_examples=50, deadline=None)
@given(perm=st.permutations([3, 2, 1, 0]), seed=st.integers(0, 2**32 - 1))
def test_reorder_roundtrip_is_bit_exact(perm, seed):
    m = random_matrix(np.random.default_rng(seed), 16)
    op = WiredOperator.from_order(m, perm)
    assert np.array_equal(op.reorder(perm), m)
    there = permute_wires(m, (3, 2, 1, 0), perm)
    assert np.array_equal(permute_wires(there, perm, (3, 2, 1, 0)), m)


def test_eps_env_override(monkeypatch):
    assert default_eps() == 1e-12
    monkeypatch.setenv("QCOMB_EPS", "1e-6")
    assert default_eps() == 1e-6
    assert approx_equal(np.zeros(2), np.full(2, 1e-7))


def test_operators_are_immutable():
    op = WiredOperator.identity((1, 0))
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5
