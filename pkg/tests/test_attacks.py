import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conjcrypt.attacks import (
    BREIDBART_ANGLE,
    Povm,
    angle_grid,
    basis_povm,
    breidbart_classical_distance,
    breidbart_distributions,
    breidbart_povm,
    breidbart_prob_difference,
    computational_povm,
    measurement_family_scan,
    outcome_distribution,
    product_basis_probabilities,
    rotated_product_povm,
    sample_measurement,
    uniform_povm,
)
from conjcrypt.densities import analytic_distance, rho_b_direct
from conjcrypt.errors import InvalidPovmError
from conjcrypt.linalg import trace_distance
from conjcrypt.scheme import Key, ParityString, encode_bit


def test_breidbart_single_qubit():
    p = outcome_distribution(rho_b_direct(0, 1), breidbart_povm(1))
    assert abs(p["0"] - math.cos(math.pi / 8) ** 2) < 1e-15
    # the Breidbart basis diagonalises rho_0^1
    vals = np.linalg.eigvalsh(rho_b_direct(0, 1))
    assert abs(max(vals) - math.cos(math.pi / 8) ** 2) < 1e-15


@pytest.mark.parametrize("k", range(1, 5))
def test_breidbart_differences(k):
    beta, gamma = breidbart_distributions(k)
    assert abs(sum(beta.values()) - 1) < 1e-12
    for r in beta:
        assert abs(beta[r] - gamma[r] - breidbart_prob_difference(r, k)) < 1e-12


@pytest.mark.parametrize("k", range(1, 7))
def test_breidbart_saturates_trace_distance(k):
    d = trace_distance(rho_b_direct(0, k), rho_b_direct(1, k))
    assert abs(breidbart_classical_distance(k) - d) < 1e-9
    assert abs(d - analytic_distance(k)) < 1e-9


@pytest.mark.parametrize("k", range(1, 5))
def test_scan_never_beats_trace_distance(k):
    res = measurement_family_scan(k)
    assert res.max_excess <= 1e-9
    assert res.breidbart_is_argmax
    assert abs(res.best_angle - BREIDBART_ANGLE) < 1e-12


def test_scan_argmax_independent_oracle():
    # one qubit, common-angle family: distance is |cos 2t + sin 2t| / 2 in closed form
    res = measurement_family_scan(1)
    t = res.angles
    closed = np.abs(np.cos(2 * t) + np.sin(2 * t)) / 2
    assert np.max(np.abs(res.distances - closed)) < 1e-12


def test_scan_errors():
    with pytest.raises(ValueError):
        measurement_family_scan(1, angles=[])
    with pytest.raises(ValueError):
        measurement_family_scan(5)
    with pytest.raises(ValueError):
        angle_grid(0)


def test_fast_probabilities_match_povm():
    rho = rho_b_direct(1, 3)
    for theta in (0.0, 0.3, BREIDBART_ANGLE, 2.0):
        fast = product_basis_probabilities(rho, theta, 3)
        slow = outcome_distribution(rho, rotated_product_povm(theta, 3))
        assert max(abs(fast[r] - slow[r]) for r in fast) < 1e-14


def test_povm_validation():
    with pytest.raises(InvalidPovmError):
        Povm((np.eye(2),), ("0", "1"))
    with pytest.raises(InvalidPovmError):
        Povm((np.eye(2) / 2, np.eye(2) / 2), ("0", "0"))
    with pytest.raises(InvalidPovmError):
        Povm((np.eye(2), np.eye(2)), ("0", "1"))
    with pytest.raises(InvalidPovmError):
        Povm((np.diag([1.5, 0.5]), np.diag([-0.5, 0.5])), ("0", "1"))
    with pytest.raises(InvalidPovmError):
        Povm((), ())
    uniform_povm(4)
    computational_povm(3)


def test_sampling_matches_born_rule(rng):
    rho = rho_b_direct(0, 1)
    labels = sample_measurement(rho, breidbart_povm(1), rng, size=20000)
    p = math.cos(math.pi / 8) ** 2
    assert abs(np.mean(labels == "0") - p) < 4 * math.sqrt(p * (1 - p) / 20000)


def test_sampling_symbolic_state(rng):
    state = encode_bit(1, Key("00"), ParityString("10", 1))
    assert sample_measurement(state, computational_povm(2), rng) == "10"


@settings(max_examples=40, deadline=None)
@given(st.floats(0, math.pi), st.integers(1, 3), st.integers(0, 1))
def test_distribution_is_normalised(theta, k, b):
    p = outcome_distribution(rho_b_direct(b, k), rotated_product_povm(theta, k))
    assert abs(sum(p.values()) - 1) < 1e-12
    assert all(0 <= v <= 1 for v in p.values())


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 2 * math.pi))
def test_single_qubit_bases_bounded_by_helstrom(phi):
    # any real orthonormal basis, not only the scanned grid
    v0 = np.array([math.cos(phi), math.sin(phi)])
    v1 = np.array([-math.sin(phi), math.cos(phi)])
    povm = basis_povm([v0, v1])
    p = outcome_distribution(rho_b_direct(0, 1), povm)
    q = outcome_distribution(rho_b_direct(1, 1), povm)
    assert abs(p["0"] - q["0"]) <= analytic_distance(1) + 1e-12
