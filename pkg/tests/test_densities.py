import itertools

import numpy as np
import pytest

from conjcrypt.densities import (
    analytic_distance,
    analytic_sigma_distance,
    eve_ensemble,
    hadamard_kraus_operators,
    hadamard_mixing_channel,
    kraus_completeness_error,
    plaintext_density,
    receiver_ensemble,
    rho_b_direct,
    rho_b_recursive,
    rho_difference_factorized,
    sigma_b,
)
from conjcrypt.errors import DimensionCapError
from conjcrypt.linalg import trace_distance, validate_density
from conjcrypt.scheme import CONJUGATE_KETS


def test_single_qubit_states_by_hand():
    # rho_0^1 = (|0><0| + |+><+|)/2, rho_1^1 = (|1><1| + |-><-|)/2
    r0 = np.array([[3, 1], [1, 1]]) / 4
    r1 = np.array([[1, -1], [-1, 3]]) / 4
    assert np.allclose(rho_b_direct(0, 1), r0, atol=1e-16)
    assert np.allclose(rho_b_direct(1, 1), r1, atol=1e-16)


def test_direct_matches_brute_force_sum():
    k = 2
    for b in (0, 1):
        total = np.zeros((4, 4), dtype=complex)
        count = 0
        for r in itertools.product((0, 1), repeat=k):
            if sum(r) % 2 != b:
                continue
            for s in itertools.product((0, 1), repeat=k):
                v = np.kron(CONJUGATE_KETS[s[0]][r[0]], CONJUGATE_KETS[s[1]][r[1]])
                total += np.outer(v, v.conj())
                count += 1
        assert count == 8
        assert np.allclose(rho_b_direct(b, k), total / count, atol=1e-15)


@pytest.mark.parametrize("k", range(1, 7))
def test_states_are_valid(k):
    for b in (0, 1):
        validate_density(rho_b_direct(b, k))
        validate_density(sigma_b(b, k))


@pytest.mark.parametrize("k", range(1, 7))
def test_recursion_and_factorisation(k):
    for b in (0, 1):
        assert np.max(np.abs(rho_b_recursive(b, k) - rho_b_direct(b, k))) < 1e-12
    diff = rho_b_direct(0, k) - rho_b_direct(1, k)
    assert np.max(np.abs(diff - rho_difference_factorized(k))) < 1e-12


@pytest.mark.parametrize("k", range(1, 7))
def test_distances_match_numpy_oracle(k):
    # oracle: numpy eigvalsh of the difference
    for build, ref in ((rho_b_direct, analytic_distance), (sigma_b, analytic_sigma_distance)):
        a, b = build(0, k), build(1, k)
        oracle = 0.5 * np.abs(np.linalg.eigvalsh(a - b)).sum()
        assert abs(trace_distance(a, b) - oracle) < 1e-12
        assert abs(oracle - ref(k)) < 1e-12


@pytest.mark.parametrize("k", range(1, 5))
def test_channel_maps_sigma_to_rho(k):
    ops = hadamard_kraus_operators(k)
    assert len(ops) == 2**k
    assert kraus_completeness_error(ops) < 1e-12
    for b in (0, 1):
        assert np.max(np.abs(hadamard_mixing_channel(sigma_b(b, k), k) - rho_b_direct(b, k))) < 1e-12


def test_channel_is_trace_preserving_on_random_state():
    gen = np.random.default_rng(2)
    g = gen.normal(size=(8, 8)) + 1j * gen.normal(size=(8, 8))
    rho = g @ g.conj().T
    rho /= np.trace(rho)
    out = hadamard_mixing_channel(rho, 3)
    assert abs(np.trace(out) - 1) < 1e-12
    validate_density(out)
    with pytest.raises(ValueError):
        hadamard_mixing_channel(rho, 2)


def test_ensembles_are_maximally_mixed():
    for n, k in ((1, 1), (1, 2), (2, 2), (1, 4), (3, 2)):
        dim = 2 ** (n * k)
        assert np.max(np.abs(receiver_ensemble(n, k) - np.eye(dim) / dim)) < 1e-12
        assert np.max(np.abs(receiver_ensemble(n, k, key="1" * k) - np.eye(dim) / dim)) < 1e-12
        assert np.max(np.abs(eve_ensemble(n, k) - np.eye(dim) / dim)) < 1e-12


def test_plaintext_density_is_product():
    rho = plaintext_density("10", 2)
    assert np.allclose(rho, np.kron(rho_b_direct(1, 2), rho_b_direct(0, 2)))
    with pytest.raises(DimensionCapError):
        plaintext_density("1" * 7, 2)


def test_caps():
    with pytest.raises(DimensionCapError):
        rho_b_direct(0, 9)
    with pytest.raises(ValueError):
        sigma_b(0, 0)
    with pytest.raises(DimensionCapError):
        eve_ensemble(7, 2)
