"""Walker state and coin-shift dynamics for one-dimensional quantum walks.

The walker lives on the integer lattice with a two-level internal coin.  A
state after t steps is stored densely as a (2, 2t+1) complex array; row 0
holds the |up> amplitudes a(j), row 1 the |down> amplitudes b(j), and lattice
site j maps to column j + t.  One step applies a 2x2 coin to every site's
spinor and then shifts the |up> component to j+1 and the |down> component to
j-1, so an n-step walk consumes exactly n coins.

Coin policies cover the ordered walk (one fixed coin), a prescribed coin
sequence, and randomly drawn coins that vary per step (dynamic disorder),
per site (static disorder), or both.  Random draws use numpy's seeded PCG64
generator, so runs are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from numpy.typing import NDArray

from .coins import fourier_coin, hadamard_coin, require_unitary

__all__ = [
    "WalkState",
    "InitialCoin",
    "Ordered",
    "DynamicSequence",
    "DynamicRandom",
    "StaticRandom",
    "StaticAndDynamic",
    "CoinPolicy",
    "CoinPlan",
    "initial_state",
    "shift",
    "step",
    "evolve",
    "plan_coins",
]


@dataclass(frozen=True, eq=False)
class WalkState:
    """Walker wave function after `t` steps.

    Attributes
    ----------
    t : int
        Number of steps taken so far.
    amps : NDArray[np.complex128]
        Array of shape (2, 2t+1); ``amps[0, j + t]`` is the |up> amplitude
        a(j) and ``amps[1, j + t]`` the |down> amplitude b(j).
    """

    t: int
    amps: NDArray[np.complex128]

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError(f"step count must be non-negative, got {self.t}")
        if self.amps.shape != (2, 2 * self.t + 1):
            raise ValueError(
                f"amplitude array has shape {self.amps.shape}, "
                f"expected (2, {2 * self.t + 1}) at t={self.t}"
            )

    @property
    def sites(self) -> NDArray[np.int64]:
        """Lattice sites j = -t .. t in ascending order."""
        return np.arange(-self.t, self.t + 1)

    def spinor(self, j: int) -> NDArray[np.complex128]:
        """(a(j), b(j)) at site j; zero outside the support window."""
        if abs(j) > self.t:
            return np.zeros(2, dtype=np.complex128)
        return self.amps[:, j + self.t].copy()

    def probabilities(self) -> NDArray[np.float64]:
        """Per-site probabilities |a(j)|^2 + |b(j)|^2, ascending j."""
        return np.sum(np.abs(self.amps) ** 2, axis=0)

    def norm(self) -> float:
        """Total probability (1 for a valid state)."""
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class InitialCoin:
    """Initial coin state cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>.

    Angles are in degrees: theta in [0, 180], phi in [0, 360).
    """

    theta_deg: float
    phi_deg: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta_deg <= 180.0):
            raise ValueError(f"theta must lie in [0, 180] degrees, got {self.theta_deg}")
        if not (0.0 <= self.phi_deg < 360.0):
            raise ValueError(f"phi must lie in [0, 360) degrees, got {self.phi_deg}")

    @property
    def spinor(self) -> NDArray[np.complex128]:
        th = np.deg2rad(self.theta_deg)
        ph = np.deg2rad(self.phi_deg)
        return np.array(
            [np.cos(th / 2.0), np.exp(1j * ph) * np.sin(th / 2.0)],
            dtype=np.complex128,
        )


def _default_alphabet() -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    return (hadamard_coin(), fourier_coin())


@dataclass(frozen=True)
class Ordered:
    """Same coin at every step."""

    coin: NDArray[np.complex128]


@dataclass(frozen=True)
class DynamicSequence:
    """Coins prescribed by a symbol sequence over {H, F}, first symbol first.

    `sequence` may be a text string like ``"FFHFH"`` or any object with a
    ``text`` attribute holding one (e.g. :class:`dtqw.sequences.CoinSequence`).
    """

    sequence: Union[str, object]

    @property
    def text(self) -> str:
        seq = self.sequence
        return seq if isinstance(seq, str) else seq.text


@dataclass(frozen=True)
class DynamicRandom:
    """Fresh uniform coin draw from `alphabet` at every step."""

    seed: int
    alphabet: tuple[NDArray[np.complex128], NDArray[np.complex128]] = field(
        default_factory=_default_alphabet
    )


@dataclass(frozen=True)
class StaticRandom:
    """One uniform coin draw per site, frozen for the whole walk.

    The assignment covers `site_range` (inclusive), drawn once before the
    evolution; None means [-steps, steps].
    """

    seed: int
    alphabet: tuple[NDArray[np.complex128], NDArray[np.complex128]] = field(
        default_factory=_default_alphabet
    )
    site_range: tuple[int, int] | None = None


@dataclass(frozen=True)
class StaticAndDynamic:
    """Static per-site pattern combined with a fresh per-step pattern.

    The coin applied at site j on step t is ``alphabet[s_j XOR d_t]`` where
    the bits s_j come from `static_seed` (one per site, drawn once) and the
    bits d_t from `dynamic_seed` (one per step).  Holding either stream
    constant recovers the pure static or pure dynamic policy.
    """

    static_seed: int
    dynamic_seed: int
    alphabet: tuple[NDArray[np.complex128], NDArray[np.complex128]] = field(
        default_factory=_default_alphabet
    )


CoinPolicy = Union[Ordered, DynamicSequence, DynamicRandom, StaticRandom, StaticAndDynamic]


class CoinPlan:
    """Resolved coin assignment for a walk of a fixed number of steps.

    Uniform plans hold one coin per step; sitewise plans hold a per-site bit
    pattern (and optionally per-step bits) indexing a two-coin alphabet.
    All randomness is consumed at construction, so applying the plan is
    deterministic.
    """

    def __init__(
        self,
        steps: int,
        per_step_coins: NDArray[np.complex128] | None = None,
        alphabet: NDArray[np.complex128] | None = None,
        site_bits: NDArray[np.int64] | None = None,
        site_origin: int = 0,
        step_bits: NDArray[np.int64] | None = None,
    ) -> None:
        self.steps = steps
        self.per_step_coins = per_step_coins
        self.alphabet = alphabet
        self.site_bits = site_bits
        self.site_origin = site_origin  # lattice site of site_bits[0]
        self.step_bits = step_bits

    @property
    def uniform(self) -> bool:
        return self.per_step_coins is not None

    def coin_matrix(self, t: int, j: int) -> NDArray[np.complex128]:
        """Coin applied at site j during step t (t = 0 .. steps-1)."""
        if not 0 <= t < self.steps:
            raise ValueError(f"step index {t} outside 0..{self.steps - 1}")
        if self.uniform:
            return self.per_step_coins[t]
        idx = j - self.site_origin
        if not 0 <= idx < len(self.site_bits):
            raise ValueError(f"site {j} outside the static assignment range")
        bit = int(self.site_bits[idx])
        if self.step_bits is not None:
            bit ^= int(self.step_bits[t])
        return self.alphabet[bit]


def plan_coins(policy: CoinPolicy, steps: int) -> CoinPlan:
    """Resolve `policy` into the explicit coin assignment for `steps` steps.

    Raises
    ------
    ValueError
        If a prescribed sequence length differs from `steps`, a static site
        range does not cover the light cone, or a coin is not unitary.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")

    if isinstance(policy, Ordered):
        coin = require_unitary(policy.coin)
        return CoinPlan(steps, per_step_coins=np.broadcast_to(coin, (steps, 2, 2)))

    if isinstance(policy, DynamicSequence):
        text = policy.text.upper()
        if len(text) != steps:
            raise ValueError(
                f"sequence length {len(text)} does not match steps={steps}"
            )
        bad = set(text) - {"H", "F"}
        if bad:
            raise ValueError(f"sequence contains symbols outside {{H, F}}: {sorted(bad)}")
        table = {"H": hadamard_coin(), "F": fourier_coin()}
        coins = np.stack([table[c] for c in text])
        return CoinPlan(steps, per_step_coins=coins)

    if isinstance(policy, DynamicRandom):
        alphabet = np.stack([require_unitary(c) for c in policy.alphabet])
        picks = np.random.default_rng(policy.seed).integers(0, 2, size=steps)
        return CoinPlan(steps, per_step_coins=alphabet[picks])

    if isinstance(policy, StaticRandom):
        alphabet = np.stack([require_unitary(c) for c in policy.alphabet])
        lo, hi = policy.site_range if policy.site_range is not None else (-steps, steps)
        if lo > -steps or hi < steps:
            raise ValueError(
                f"site range [{lo}, {hi}] does not cover the light cone [-{steps}, {steps}]"
            )
        bits = np.random.default_rng(policy.seed).integers(0, 2, size=hi - lo + 1)
        return CoinPlan(steps, alphabet=alphabet, site_bits=bits, site_origin=lo)

    if isinstance(policy, StaticAndDynamic):
        alphabet = np.stack([require_unitary(c) for c in policy.alphabet])
        site_bits = np.random.default_rng(policy.static_seed).integers(
            0, 2, size=2 * steps + 1
        )
        step_bits = np.random.default_rng(policy.dynamic_seed).integers(0, 2, size=steps)
        return CoinPlan(
            steps,
            alphabet=alphabet,
            site_bits=site_bits,
            site_origin=-steps,
            step_bits=step_bits,
        )

    raise TypeError(f"unsupported coin policy: {policy!r}")


def initial_state(init: InitialCoin) -> WalkState:
    """Localized t=0 state: the coin spinor of `init` at the origin."""
    return WalkState(t=0, amps=init.spinor.reshape(2, 1))


def shift(state: WalkState) -> WalkState:
    """Conditional displacement: |up> amplitudes move j -> j+1, |down> j -> j-1.

    The support window grows by one site on each side, so the returned state
    carries t+1.  The norm is preserved exactly.
    """
    width = state.amps.shape[1]
    out = np.zeros((2, width + 2), dtype=np.complex128)
    out[0, 2:] = state.amps[0]
    out[1, :-2] = state.amps[1]
    return WalkState(t=state.t + 1, amps=out)


def step(state: WalkState, coin: NDArray[np.complex128]) -> WalkState:
    """Apply `coin` to every site's spinor, then shift.  Increments t by 1."""
    coin = require_unitary(coin)
    return shift(WalkState(t=state.t, amps=coin @ state.amps))


def _sitewise_step(state: WalkState, plan: CoinPlan, t: int) -> WalkState:
    lo = -state.t - plan.site_origin
    idx = plan.site_bits[lo : lo + 2 * state.t + 1].copy()
    if plan.step_bits is not None:
        idx ^= plan.step_bits[t]
    c = plan.alphabet[idx]  # (width, 2, 2)
    a, b = state.amps
    mixed = np.empty_like(state.amps)
    mixed[0] = c[:, 0, 0] * a + c[:, 0, 1] * b
    mixed[1] = c[:, 1, 0] * a + c[:, 1, 1] * b
    return shift(WalkState(t=state.t, amps=mixed))


def evolve(init: InitialCoin, policy: CoinPolicy, steps: int) -> list[WalkState]:
    """Run the walk and return the whole trajectory.

    Parameters
    ----------
    init : InitialCoin
        Initial coin state, placed at the origin.
    policy : CoinPolicy
        How coins are chosen; random policies are resolved once up front from
        their seeds, so identical arguments give bit-identical trajectories.
    steps : int
        Number of coin-shift applications (>= 1).  Exactly `steps` coins are
        consumed: the one-step operator is applied once per step, and
        ``trajectory[k]`` is the state after k applications.

    Returns
    -------
    list[WalkState]
        States for t = 0 .. steps.
    """
    plan = plan_coins(policy, steps)
    state = initial_state(init)
    trajectory = [state]
    for t in range(steps):
        if plan.uniform:
            state = step(state, plan.per_step_coins[t])
        else:
            state = _sitewise_step(state, plan, t)
        trajectory.append(state)
    return trajectory
