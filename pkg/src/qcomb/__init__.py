"""Quantum 2-testers for qubit unitaries and a two-way QKD security analysis."""
from .bases import decompose, haar_random_su2, is_mutually_unbiased, muub_basis, standard_basis
from .comb import (
    Tester,
    choi_of_unitary,
    gain,
    link,
    network_fidelity,
    network_gain,
    outcome_probabilities,
    validate_tester,
)
from .networks import NetworkParams, closed_form_metrics, optimal_i_network, projective_network, x_from_y
from .tensor import WiredOperator, partial_trace, partial_transpose, tensor_product, vectorize
from .tradeoff import curve, info_disturbance

__version__ = "0.1.0"
