"""Reduced coin density matrices and the coin-position entanglement entropy.

For a pure walker state the entanglement between coin and position is the
von Neumann entropy of the reduced 2x2 coin matrix, measured in bits, so it
ranges from 0 (product state) to 1 (maximally entangled).  Eigenvalues of
the 2x2 Hermitian matrix are computed in closed form; no iterative solver
is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .walk import CoinPolicy, InitialCoin, WalkState, evolve

__all__ = [
    "SiteDecomposition",
    "check_density_matrix",
    "density_eigenvalues",
    "reduced_coin_density",
    "site_decomposition",
    "von_neumann_entropy",
    "state_entropy",
    "entropy_curve",
    "asymptotic_entropy",
]

#: Sites with probability at or below this weight are omitted from
#: decompositions (their local state is undefined).
NEGLIGIBLE_SITE_PROBABILITY = 1e-14


def check_density_matrix(rho: NDArray[np.complex128], atol: float = 1e-8) -> NDArray[np.complex128]:
    """Validate a 2x2 density matrix: Hermitian, unit trace, PSD within `atol`.

    Returns the matrix as complex128; raises ValueError otherwise.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > atol or abs(np.trace(rho).imag) > atol:
        raise ValueError(f"density matrix trace {np.trace(rho)} is not 1")
    if min(density_eigenvalues(rho)) < -atol:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    return rho


def density_eigenvalues(rho: NDArray[np.complex128]) -> tuple[float, float]:
    """Closed-form eigenvalues (descending) of a 2x2 Hermitian trace-1 matrix.

    lambda = 1/2 +- sqrt((rho00 - rho11)^2 / 4 + |rho01|^2).
    """
    half_gap = np.sqrt(
        ((rho[0, 0].real - rho[1, 1].real) / 2.0) ** 2 + abs(rho[0, 1]) ** 2
    )
    return 0.5 + half_gap, 0.5 - half_gap


def reduced_coin_density(state: WalkState) -> NDArray[np.complex128]:
    """Trace out the position register: rho_C = sum_j (a, b)_j (a, b)_j^dagger.

    Raises
    ------
    ValueError
        If the state norm is off by more than 1e-6.
    """
    a, b = state.amps
    norm = float(np.sum(np.abs(a) ** 2) + np.sum(np.abs(b) ** 2))
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"state is not normalized (norm^2 = {norm})")
    r00 = np.sum(np.abs(a) ** 2)
    r01 = np.sum(a * np.conj(b))
    r11 = np.sum(np.abs(b) ** 2)
    return np.array([[r00, r01], [np.conj(r01), r11]], dtype=np.complex128)


@dataclass(frozen=True)
class SiteDecomposition:
    """Per-site weights and local coin states: rho_C = sum_j p_j rho_j.

    Only sites with p_j above :data:`NEGLIGIBLE_SITE_PROBABILITY` appear.
    """

    sites: NDArray[np.int64]
    probabilities: NDArray[np.float64]
    local_states: NDArray[np.complex128]  # (n_sites, 2, 2)

    def reconstruct(self) -> NDArray[np.complex128]:
        """Mix the local states back together: sum_j p_j rho_j."""
        return np.einsum("j,jkl->kl", self.probabilities, self.local_states)


def site_decomposition(state: WalkState) -> SiteDecomposition:
    """Decompose the coin state by lattice site.

    p_j = |a(j)|^2 + |b(j)|^2 and rho_j is the normalized spinor projector at
    site j.  Mixing the records with weights p_j reproduces
    :func:`reduced_coin_density` up to numerical dust.
    """
    reduced_coin_density(state)  # normalization check
    probs = state.probabilities()
    keep = probs > NEGLIGIBLE_SITE_PROBABILITY
    spinors = state.amps[:, keep].T  # (n, 2)
    p = probs[keep]
    rhos = spinors[:, :, None] * spinors.conj()[:, None, :] / p[:, None, None]
    return SiteDecomposition(
        sites=state.sites[keep], probabilities=p, local_states=rhos
    )


def _binary_entropy(lam: float) -> float:
    s = 0.0
    for x in (lam, 1.0 - lam):
        if x > 0.0:
            s -= x * np.log2(x)
    return s


def von_neumann_entropy(rho: NDArray[np.complex128]) -> float:
    """Von Neumann entropy -Tr[rho log2 rho] of a 2x2 density matrix, in bits.

    Eigenvalues come from the closed form and are clamped to [0, 1] before
    the logarithm (0 log 0 := 0).  Invalid input (non-Hermitian, trace far
    from 1, or significantly negative spectrum) raises ValueError.
    """
    rho = check_density_matrix(rho)
    lam = float(np.clip(density_eigenvalues(rho)[0], 0.0, 1.0))
    return _binary_entropy(lam)


def state_entropy(state: WalkState) -> float:
    """Coin-position entanglement entropy of a walker state."""
    return von_neumann_entropy(reduced_coin_density(state))


def entropy_curve(
    init: InitialCoin, policy: CoinPolicy, steps: int
) -> list[tuple[int, float]]:
    """Entanglement entropy at every step of a walk.

    Returns (t, S_E) pairs for t = 0 .. steps; S_E(0) = 0 for the localized
    product initial state.
    """
    return [(state.t, state_entropy(state)) for state in evolve(init, policy, steps)]


def asymptotic_entropy(
    init: InitialCoin,
    policy: CoinPolicy,
    steps: int = 1024,
    tail: int = 64,
) -> float:
    """Long-time entanglement estimate: mean S_E over the final `tail` steps.

    The entropy oscillates around its limiting value with decaying
    amplitude; averaging the last `tail` steps of a long run (default
    t in [961, 1024]) gives a stable estimate of that limit.
    """
    if not 1 <= tail <= steps:
        raise ValueError(f"tail must lie in [1, steps], got tail={tail} steps={steps}")
    trajectory = evolve(init, policy, steps)
    return float(np.mean([state_entropy(s) for s in trajectory[steps - tail + 1 :]]))
