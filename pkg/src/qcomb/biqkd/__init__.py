"""Two-way QKD with decoding by exclusion, attacked by the optimal-I network."""
from .analysis import *  # noqa: F401,F403
from .montecarlo import EveConfig, Tally, simulate_counts, simulate_monte_carlo  # noqa: F401
from .protocol import *  # noqa: F401,F403
