import numpy as np
import pytest
from scipy.linalg import expm

from dtqw.coins import (
    SIGMA_Y,
    SIGMA_Z,
    coin_from_name,
    fourier_coin,
    hadamard_coin,
    hwp_coin,
    identity_coin,
    is_unitary,
    phase_invariant_distance,
    qwp_coin,
)
from oracles import random_unitary

UP = np.array([1, 0], dtype=complex)


def test_hadamard_on_up():
    out = hadamard_coin() @ UP
    np.testing.assert_allclose(out, np.array([1, 1]) / np.sqrt(2), atol=1e-15)


def test_hadamard_is_involution():
    np.testing.assert_allclose(hadamard_coin() @ hadamard_coin(), np.eye(2), atol=1e-15)


def test_fourier_on_up():
    out = fourier_coin() @ UP
    np.testing.assert_allclose(out, np.array([1, 1j]) / np.sqrt(2), atol=1e-15)


def test_fourier_fourth_power_is_minus_identity():
    # brute-force matrix-product oracle
    f4 = np.linalg.matrix_power(fourier_coin(), 4)
    np.testing.assert_allclose(f4, -np.eye(2), atol=1e-14)


@pytest.mark.parametrize(
    "coin",
    [hadamard_coin(), fourier_coin(), identity_coin(), hwp_coin(0.3), qwp_coin(np.pi / 3)],
)
def test_constructors_are_unitary(coin):
    np.testing.assert_allclose(coin @ coin.conj().T, np.eye(2), atol=1e-12)


def test_hwp_at_pi_over_8_is_hadamard():
    d = phase_invariant_distance(hwp_coin(np.pi / 8), hadamard_coin())
    # record the actual phase relating the two matrices
    ratio = hwp_coin(np.pi / 8)[0, 0] / hadamard_coin()[0, 0]
    print(f"hwp(pi/8) vs Hadamard: distance {d:.3e}, relative phase {ratio:.6f}")
    assert d < 1e-12


def test_hwp_at_zero_is_sigma_z():
    np.testing.assert_allclose(hwp_coin(0.0), SIGMA_Z, atol=1e-15)


def test_hwp_matches_matrix_exponential_oracle():
    angle = np.pi / 4
    oracle = expm(-2j * angle * SIGMA_Y) @ SIGMA_Z
    np.testing.assert_allclose(hwp_coin(angle), oracle, atol=1e-12)


def test_qwp_at_minus_pi_over_4_is_fourier():
    d = phase_invariant_distance(qwp_coin(-np.pi / 4), fourier_coin())
    ratio = qwp_coin(-np.pi / 4)[0, 0] / fourier_coin()[0, 0]
    print(f"qwp(-pi/4) vs Fourier: distance {d:.3e}, relative phase {ratio:.6f}")
    assert d < 1e-12


def test_qwp_at_zero_is_pure_z_rotation():
    expected = np.diag([np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)])
    np.testing.assert_allclose(qwp_coin(0.0), expected, atol=1e-15)


def test_qwp_matches_matrix_exponential_oracle():
    angle = 0.7
    oracle = (
        expm(-1j * angle * SIGMA_Y)
        @ expm(-1j * (np.pi / 4) * SIGMA_Z)
        @ expm(1j * angle * SIGMA_Y)
    )
    np.testing.assert_allclose(qwp_coin(angle), oracle, atol=1e-12)


@pytest.mark.parametrize("bad", [float("nan"), float("inf")])
def test_wave_plates_reject_non_finite_angles(bad):
    with pytest.raises(ValueError):
        hwp_coin(bad)
    with pytest.raises(ValueError):
        qwp_coin(bad)


def test_hwp_determinant_has_unit_modulus(rng):
    for _ in range(100):
        theta = rng.uniform(-10, 10)
        assert abs(abs(np.linalg.det(hwp_coin(theta))) - 1.0) < 1e-12


def test_hwp_is_pi_periodic_up_to_phase(rng):
    for _ in range(50):
        theta = rng.uniform(-5, 5)
        assert phase_invariant_distance(hwp_coin(theta + np.pi), hwp_coin(theta)) < 1e-9


def test_phase_distance_identical_inputs_is_zero():
    assert phase_invariant_distance(hadamard_coin(), hadamard_coin()) == 0.0


def test_phase_distance_ignores_global_phase():
    h = hadamard_coin()
    assert phase_invariant_distance(h, np.exp(1j * np.pi / 7) * h) < 1e-12


def test_phase_distance_h_vs_f_matches_grid_search():
    h, f = hadamard_coin(), fourier_coin()
    phases = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 1_000_000, endpoint=False))
    diffs = h[None, :, :] - phases[:, None, None] * f[None, :, :]
    brute = np.sqrt(np.sum(np.abs(diffs) ** 2, axis=(1, 2))).min()
    closed = phase_invariant_distance(h, f)
    assert closed > 0.0
    assert abs(closed - brute) < 1e-6  # grid resolution limits the oracle
    assert abs(closed - np.sqrt(2.0)) < 1e-12


def test_phase_distance_rejects_non_unitary():
    with pytest.raises(ValueError):
        phase_invariant_distance(np.eye(2) * 2.0, hadamard_coin())
    with pytest.raises(ValueError):
        phase_invariant_distance(hadamard_coin(), np.ones((2, 2), dtype=complex))


def test_phase_distance_symmetry_and_triangle(rng):
    for _ in range(300):
        u, v, w = (random_unitary(rng) for _ in range(3))
        duv = phase_invariant_distance(u, v)
        dvu = phase_invariant_distance(v, u)
        assert abs(duv - dvu) < 1e-9
        assert duv <= phase_invariant_distance(u, w) + phase_invariant_distance(w, v) + 1e-9


def test_coin_from_name():
    np.testing.assert_array_equal(coin_from_name("h"), hadamard_coin())
    np.testing.assert_array_equal(coin_from_name("F"), fourier_coin())
    np.testing.assert_array_equal(coin_from_name("I"), identity_coin())
    with pytest.raises(ValueError):
        coin_from_name("X")


def test_is_unitary_tolerance():
    assert is_unitary(hadamard_coin())
    assert not is_unitary(hadamard_coin() * 1.001)
    assert not is_unitary(np.eye(3))
