"""Discrete-time quantum walks on the line with switchable coin disorder.

The package simulates a single walker whose two-level coin is rotated by a
fixed coin, a prescribed {H, F} coin sequence, or randomly drawn coins
(per step, per site, or both), and provides the analyses built on top of
that dynamics: coin-position entanglement entropy, transport exponents,
exhaustive statistics over the space of coin sequences, Lempel-Ziv sequence
complexity, and a simulated projective-measurement tomography chain.
"""

from .coins import (
    fourier_coin,
    hadamard_coin,
    hwp_coin,
    identity_coin,
    is_unitary,
    phase_invariant_distance,
    qwp_coin,
)
from .entanglement import (
    SiteDecomposition,
    asymptotic_entropy,
    density_eigenvalues,
    entropy_curve,
    reduced_coin_density,
    site_decomposition,
    state_entropy,
    von_neumann_entropy,
)
from .sequences import (
    ENHANCER_20,
    CoinSequence,
    SweepReport,
    best_sequences,
    entropy_of_sequence,
    exhaustive_sweep,
    interval_weighted_mean,
    lz_complexity,
    lz_parse,
    parse_sequence,
    reference_sequences,
    sampled_sweep,
    vocabulary,
)
from .tomography import (
    ProjectionCounts,
    TomographyResult,
    fidelity,
    projector_probabilities,
    reconstruct_site,
    similarity,
    simulate_counts,
    tomographic_entropy,
)
from .transport import (
    MomentSeries,
    PositionDistribution,
    PowerLawFit,
    classical_baseline,
    ensemble_moment_series,
    fit_power_law,
    moment_series,
    position_distribution,
    second_moment,
)
from .walk import (
    CoinPolicy,
    DynamicRandom,
    DynamicSequence,
    InitialCoin,
    Ordered,
    StaticAndDynamic,
    StaticRandom,
    WalkState,
    evolve,
    initial_state,
    shift,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "CoinPolicy",
    "CoinSequence",
    "DynamicRandom",
    "DynamicSequence",
    "ENHANCER_20",
    "InitialCoin",
    "MomentSeries",
    "Ordered",
    "PositionDistribution",
    "PowerLawFit",
    "ProjectionCounts",
    "SiteDecomposition",
    "StaticAndDynamic",
    "StaticRandom",
    "SweepReport",
    "TomographyResult",
    "WalkState",
    "asymptotic_entropy",
    "best_sequences",
    "classical_baseline",
    "density_eigenvalues",
    "ensemble_moment_series",
    "entropy_curve",
    "entropy_of_sequence",
    "evolve",
    "exhaustive_sweep",
    "fidelity",
    "fit_power_law",
    "fourier_coin",
    "hadamard_coin",
    "hwp_coin",
    "identity_coin",
    "initial_state",
    "interval_weighted_mean",
    "is_unitary",
    "lz_complexity",
    "lz_parse",
    "moment_series",
    "parse_sequence",
    "phase_invariant_distance",
    "position_distribution",
    "projector_probabilities",
    "qwp_coin",
    "reconstruct_site",
    "reduced_coin_density",
    "reference_sequences",
    "sampled_sweep",
    "second_moment",
    "shift",
    "similarity",
    "simulate_counts",
    "site_decomposition",
    "state_entropy",
    "step",
    "tomographic_entropy",
    "von_neumann_entropy",
    "vocabulary",
]
