"""Simulated measurement chain: projective counts, state reconstruction, scores.

Mirrors how an experiment would estimate the coin-position entanglement of a
walker state: split a photon-count budget equally over the three Pauli bases,
draw multinomial counts over (site, outcome) cells, reconstruct each site's
coin state by linear inversion of the Stokes parameters, and reassemble the
reduced coin matrix as sum_j p_j rho_j.  A noiseless mode replaces counts by
their exact expected values, making the round trip exact.

Projector labels follow the polarization convention H/V (z basis), D/A
(x basis), L/R (y basis) with L = (|up> + i|down>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .coins import SIGMA_X, SIGMA_Y, SIGMA_Z
from .entanglement import (
    NEGLIGIBLE_SITE_PROBABILITY,
    check_density_matrix,
    reduced_coin_density,
    von_neumann_entropy,
)
from .transport import PositionDistribution, position_distribution
from .walk import WalkState

__all__ = [
    "PROJECTOR_LABELS",
    "BASIS_PAIRS",
    "ProjectionCounts",
    "TomographyResult",
    "projector_probabilities",
    "simulate_counts",
    "reconstruct_site",
    "project_to_physical",
    "fidelity",
    "similarity",
    "tomographic_entropy",
]

PROJECTOR_LABELS = ("H", "V", "D", "A", "L", "R")
BASIS_PAIRS = (("H", "V"), ("D", "A"), ("L", "R"))


def _joint_probabilities(state: WalkState) -> NDArray[np.float64]:
    """(n_sites, 6) joint probabilities of (site, projector outcome).

    Each basis pair's column block sums to 1 over all sites.
    """
    a, b = state.amps
    half = 0.5
    cols = [
        np.abs(a) ** 2,                      # H
        np.abs(b) ** 2,                      # V
        half * np.abs(a + b) ** 2,           # D
        half * np.abs(a - b) ** 2,           # A
        half * np.abs(a - 1j * b) ** 2,      # L
        half * np.abs(a + 1j * b) ** 2,      # R
    ]
    return np.stack(cols, axis=1)


def projector_probabilities(state: WalkState, j: int) -> dict[str, float]:
    """Joint probabilities of the six projective outcomes at site j.

    Values are Born probabilities of the (unnormalized) spinor at j, so they
    carry the site weight p_j: the H and V entries sum to p_j, as do D+A and
    L+R.  Raises ValueError for a site with no occupation.
    """
    probs = _joint_probabilities(state)
    idx = j + state.t
    if abs(j) > state.t or probs[idx, 0] + probs[idx, 1] <= NEGLIGIBLE_SITE_PROBABILITY:
        raise ValueError(f"site {j} carries no probability")
    return dict(zip(PROJECTOR_LABELS, probs[idx].tolist()))


@dataclass(frozen=True)
class ProjectionCounts:
    """Counts per (site, projector), columns ordered H, V, D, A, L, R.

    `counts` holds integers after a multinomial draw and real expected
    values in noiseless mode.
    """

    sites: NDArray[np.int64]
    counts: NDArray[np.float64]
    total: int
    noiseless: bool

    def pair_totals(self, row: int) -> tuple[float, float, float]:
        c = self.counts[row]
        return float(c[0] + c[1]), float(c[2] + c[3]), float(c[4] + c[5])


def simulate_counts(
    state: WalkState, total_counts: int, seed: int = 0, noiseless: bool = False
) -> ProjectionCounts:
    """Projective count record for `state` with a global photon budget.

    The budget splits as evenly as possible over the three basis pairs (any
    remainder goes to the earliest pairs in H/V, D/A, L/R order).  Within a
    pair the counts follow one multinomial draw over the (site, outcome)
    cells; with ``noiseless=True`` the draw is replaced by its expectation.

    Raises
    ------
    ValueError
        If `total_counts` < 1.
    """
    if total_counts < 1:
        raise ValueError(f"total_counts must be >= 1, got {total_counts}")
    probs = _joint_probabilities(state)
    n_sites = probs.shape[0]
    budgets = [total_counts // 3] * 3
    for k in range(total_counts % 3):
        budgets[k] += 1
    counts = np.zeros((n_sites, 6), dtype=np.float64)
    rng = np.random.default_rng(seed)
    for pair, budget in enumerate(budgets):
        block = probs[:, 2 * pair : 2 * pair + 2]
        if noiseless:
            counts[:, 2 * pair : 2 * pair + 2] = budget * block
            continue
        flat = block.reshape(-1)
        drawn = rng.multinomial(budget, flat / flat.sum())
        counts[:, 2 * pair : 2 * pair + 2] = drawn.reshape(n_sites, 2)
    return ProjectionCounts(
        sites=state.sites, counts=counts, total=total_counts, noiseless=noiseless
    )


def project_to_physical(rho: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Nearest physical state: negative eigenvalues clamped, trace renormalized."""
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0.0, None)
    if vals.sum() <= 0.0:
        return np.eye(2, dtype=np.complex128) / 2.0
    vals = vals / vals.sum()
    return (vecs * vals) @ vecs.conj().T


def reconstruct_site(site_counts) -> NDArray[np.complex128]:
    """Linear-inversion estimate of one site's coin state from its six counts.

    Stokes components r_k = (N_plus - N_minus) / (N_plus + N_minus) for the
    z (H/V), x (D/A) and y (L/R) pairs give rho = (I + r . sigma)/2, which is
    then projected back to the physical set if count noise pushed the Stokes
    vector outside the Bloch ball.

    Raises
    ------
    ValueError
        If any basis-pair total is zero.
    """
    c = np.asarray(site_counts, dtype=np.float64)
    if c.shape != (6,):
        raise ValueError(f"expected 6 projector counts, got shape {c.shape}")
    rho = np.eye(2, dtype=np.complex128) / 2.0
    for (plus, minus), sigma in zip(((0, 1), (2, 3), (4, 5)), (SIGMA_Z, SIGMA_X, SIGMA_Y)):
        total = c[plus] + c[minus]
        if total <= 0.0:
            raise ValueError(
                f"basis pair {PROJECTOR_LABELS[plus]}/{PROJECTOR_LABELS[minus]} "
                "has zero counts"
            )
        rho = rho + 0.5 * ((c[plus] - c[minus]) / total) * sigma
    return project_to_physical(rho)


def fidelity(a: NDArray[np.complex128], b: NDArray[np.complex128]) -> float:
    """Uhlmann fidelity of two qubit states via the closed form.

    F = Tr(a b) + 2 sqrt(det(a) det(b)), equal to (Tr sqrt(sqrt(a) b sqrt(a)))^2
    for 2x2 density matrices.  Symmetric, in [0, 1], and 1 exactly when the
    states coincide.
    """
    a = check_density_matrix(a)
    b = check_density_matrix(b)
    det_term = max(np.linalg.det(a).real, 0.0) * max(np.linalg.det(b).real, 0.0)
    value = np.trace(a @ b).real + 2.0 * np.sqrt(det_term)
    return float(np.clip(value, 0.0, 1.0))


def similarity(p_exp: PositionDistribution, p_th: PositionDistribution) -> float:
    """Bhattacharyya coefficient sum_x sqrt(p_exp(x) p_th(x)) over the support union."""
    for name, dist in (("first", p_exp), ("second", p_th)):
        total = float(np.sum(dist.probabilities))
        if abs(total - 1.0) > 1e-6:
            raise ValueError(f"{name} distribution is not normalized (sum = {total})")
        if np.any(dist.probabilities < -1e-12):
            raise ValueError(f"{name} distribution has negative entries")
    a = p_exp.as_dict()
    b = p_th.as_dict()
    overlap = 0.0
    for site in set(a) | set(b):
        overlap += np.sqrt(max(a.get(site, 0.0), 0.0) * max(b.get(site, 0.0), 0.0))
    return float(min(overlap, 1.0))


@dataclass(frozen=True)
class TomographyResult:
    """Reconstruction of a walker state from simulated projective counts."""

    sites: NDArray[np.int64]
    p_hat: NDArray[np.float64]
    rho_hat: NDArray[np.complex128]            # (n_sites, 2, 2)
    rho_c_hat: NDArray[np.complex128]
    entropy_hat: float
    exact_entropy: float
    site_fidelities: NDArray[np.float64]
    rho_c_fidelity: float
    distribution_similarity: float
    counts: ProjectionCounts
    total_counts: int
    seed: int
    noiseless: bool


def tomographic_entropy(
    state: WalkState, total_counts: int, seed: int = 0, noiseless: bool = False
) -> TomographyResult:
    """Estimate the coin-position entanglement the way a counting experiment would.

    Site weights p_hat_j come from the H/V counts alone; each occupied site's
    coin state is reconstructed by linear inversion, and the estimated
    reduced matrix is sum_j p_hat_j rho_hat_j.  At sites where count noise
    left an x or y basis pair empty, that Stokes component is taken as zero
    (no data, no inferred polarization); the z pair defines which sites exist
    at all.  Reports per-site and whole-matrix fidelities against the exact
    state and the Bhattacharyya similarity of the estimated position
    distribution.
    """
    counts = simulate_counts(state, total_counts, seed=seed, noiseless=noiseless)
    z_totals = counts.counts[:, 0] + counts.counts[:, 1]
    keep = z_totals > 0.0
    kept_counts = counts.counts[keep]
    sites = state.sites[keep]
    p_hat = z_totals[keep] / z_totals.sum()

    rho_hat = np.empty((len(sites), 2, 2), dtype=np.complex128)
    for row, c in enumerate(kept_counts):
        if c[2] + c[3] > 0.0 and c[4] + c[5] > 0.0:
            rho_hat[row] = reconstruct_site(c)
        else:
            rho = np.eye(2, dtype=np.complex128) / 2.0
            for (plus, minus), sigma in zip(
                ((0, 1), (2, 3), (4, 5)), (SIGMA_Z, SIGMA_X, SIGMA_Y)
            ):
                total = c[plus] + c[minus]
                if total > 0.0:
                    rho = rho + 0.5 * ((c[plus] - c[minus]) / total) * sigma
            rho_hat[row] = project_to_physical(rho)

    rho_c_hat = np.einsum("j,jkl->kl", p_hat, rho_hat)
    rho_c_hat = 0.5 * (rho_c_hat + rho_c_hat.conj().T)  # shave numerical dust

    truth_rho_c = reduced_coin_density(state)
    amps = state.amps[:, keep]
    site_fid = np.empty(len(sites), dtype=np.float64)
    for row in range(len(sites)):
        spinor = amps[:, row]
        weight = float(np.vdot(spinor, spinor).real)
        truth = np.outer(spinor, spinor.conj()) / weight
        site_fid[row] = fidelity(rho_hat[row], truth)

    estimated_dist = PositionDistribution(sites=sites, probabilities=p_hat)
    return TomographyResult(
        sites=sites,
        p_hat=p_hat,
        rho_hat=rho_hat,
        rho_c_hat=rho_c_hat,
        entropy_hat=von_neumann_entropy(rho_c_hat),
        exact_entropy=von_neumann_entropy(truth_rho_c),
        site_fidelities=site_fid,
        rho_c_fidelity=fidelity(rho_c_hat, truth_rho_c),
        distribution_similarity=similarity(estimated_dist, position_distribution(state)),
        counts=counts,
        total_counts=total_counts,
        seed=seed,
        noiseless=noiseless,
    )
