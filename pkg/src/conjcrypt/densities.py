"""Exact mixed states of the scheme: cipher states, sigma states, ensembles.

Every builder that averages over keys or parity strings counts its terms
while enumerating and checks the count against the expected
normalisation, so an indexing bug shows up as an error, not a wrong
matrix.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import DimensionCapError
from .linalg import DIMENSION_CAP, kron, kron_all, projector
from .scheme import CONJUGATE_KETS, HADAMARD, IDENTITY_2, KET_1, KET_PLUS, parity_class, parse_bits

MAX_QUBITS = 8

# sigma states use |phi_0> = |+>, |phi_1> = |1>
SIGMA_KETS = (KET_PLUS, KET_1)


def _check_k(k: int, limit: int = MAX_QUBITS) -> None:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > limit:
        raise DimensionCapError(f"k={k} exceeds the {limit}-qubit cap")


def _product_vectors(index_strings, kets_for) -> np.ndarray:
    """Columns are the product vectors for each index string."""
    cols = []
    for idx in index_strings:
        v = np.ones(1, dtype=np.complex128)
        for j, i in enumerate(idx):
            v = np.kron(v, kets_for(j, i))
        cols.append(v)
    return np.stack(cols, axis=1)


def _mixture(vectors: np.ndarray, expected_count: int) -> np.ndarray:
    count = vectors.shape[1]
    if count != expected_count:
        raise AssertionError(f"enumerated {count} terms, expected {expected_count}")
    return (vectors @ vectors.conj().T) / count


def rho_b_direct(b: int, k: int) -> np.ndarray:
    """Eve's cipher state for plaintext bit ``b``, by full enumeration.

    Uniform mixture of ``|r_1>_{s_1} ... |r_k>_{s_k}`` over all 2^k keys and
    the 2^(k-1) strings ``r`` of parity ``b``.
    """
    _check_k(k)
    terms = [
        (r, s)
        for r in parity_class(b, k)
        for s in itertools.product((0, 1), repeat=k)
    ]
    vecs = _product_vectors(
        [tuple(zip(r, s)) for r, s in terms],
        lambda j, rs: CONJUGATE_KETS[rs[1]][rs[0]],
    )
    return _mixture(vecs, 2 ** (2 * k - 1))


def rho_b_recursive(b: int, k: int) -> np.ndarray:
    """Same state from the one-qubit-at-a-time recursion.

    ``rho_0^k = (rho_0^{k-1} x rho_0^1 + rho_1^{k-1} x rho_1^1) / 2`` and
    ``rho_1^k = (rho_0^{k-1} x rho_1^1 + rho_1^{k-1} x rho_0^1) / 2``.
    """
    _check_k(k)
    base = (rho_b_direct(0, 1), rho_b_direct(1, 1))
    cur = base
    for _ in range(k - 1):
        r0 = (kron(cur[0], base[0]) + kron(cur[1], base[1])) / 2
        r1 = (kron(cur[0], base[1]) + kron(cur[1], base[0])) / 2
        cur = (r0, r1)
    return cur[b]


def rho_difference_factorized(k: int) -> np.ndarray:
    """``Delta^{(x)k} / 2^(k-1)`` with ``Delta = rho_0^1 - rho_1^1``."""
    _check_k(k)
    delta = rho_b_direct(0, 1) - rho_b_direct(1, 1)
    return kron_all([delta] * k) / 2 ** (k - 1)


def sigma_b(b: int, k: int) -> np.ndarray:
    """Mixture over parity-``b`` index strings of products of |+> and |1>."""
    _check_k(k)
    vecs = _product_vectors(parity_class(b, k), lambda j, i: SIGMA_KETS[i])
    return _mixture(vecs, 2 ** (k - 1))


def hadamard_kraus_operators(k: int) -> list[np.ndarray]:
    """``(1/sqrt2)^k H^{i_1} x ... x H^{i_k}`` for every index string i."""
    _check_k(k)
    ops = []
    for idx in itertools.product((0, 1), repeat=k):
        factors = [HADAMARD if i else IDENTITY_2 for i in idx]
        ops.append(np.sqrt(0.5) ** k * kron_all(factors))
    return ops


def kraus_completeness_error(ops) -> float:
    total = sum(u.conj().T @ u for u in ops)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def hadamard_mixing_channel(rho, k: int) -> np.ndarray:
    """Apply the trace-preserving channel sum_i U_i rho U_i^dagger."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2**k, 2**k):
        raise ValueError(f"input has shape {rho.shape}, expected dimension {2**k}")
    return sum(u @ rho @ u.conj().T for u in hadamard_kraus_operators(k))


def plaintext_density(x, k: int, cap: int = DIMENSION_CAP) -> np.ndarray:
    """Eve's view of the encryption of bit string ``x``: the product of per-bit states."""
    bits = parse_bits(x)
    if not bits:
        raise ValueError("plaintext must be non-empty")
    if 2 ** (len(bits) * k) > cap:
        raise DimensionCapError(f"{len(bits)}*{k} qubits exceed the dimension cap {cap}")
    per_bit = {b: rho_b_direct(b, k) for b in set(bits)}
    return kron_all((per_bit[b] for b in bits), cap=cap)


def _block_sum(k: int, keys) -> tuple[np.ndarray, int]:
    # sum over keys s, plaintext bits m and r in the parity class of m
    total = np.zeros((2**k, 2**k), dtype=np.complex128)
    count = 0
    for s in keys:
        for m in (0, 1):
            for r in parity_class(m, k):
                total += kron_all(projector(CONJUGATE_KETS[sj][rj]) for rj, sj in zip(r, s))
                count += 1
    return total, count


def _ensemble(n: int, k: int, keys, expected_per_block: int, cap: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_k(k, limit=int(math.log2(cap)))
    if 2 ** (n * k) > cap:
        raise DimensionCapError(f"{n}*{k} qubits exceed the dimension cap {cap}")
    block, count = _block_sum(k, keys)
    if count != expected_per_block:
        raise AssertionError(f"enumerated {count} terms per block, expected {expected_per_block}")
    total = kron_all([block] * n, cap=cap)
    return total / count**n


def receiver_ensemble(n: int, k: int, key=None, cap: int = DIMENSION_CAP) -> np.ndarray:
    """Bob's state for a fixed key, averaged over plaintexts and parity strings.

    The normalisation is 2^(n k); ``key`` defaults to the all-zero key.
    """
    s = parse_bits(key) if key is not None else (0,) * k
    if len(s) != k:
        raise ValueError("key length differs from k")
    return _ensemble(n, k, [s], 2**k, cap)


def eve_ensemble(n: int, k: int, cap: int = DIMENSION_CAP) -> np.ndarray:
    """Eve's state averaged also over all keys; normalisation 2^(2 k n)."""
    keys = list(itertools.product((0, 1), repeat=k))
    return _ensemble(n, k, keys, 2 ** (2 * k), cap)


def analytic_distance(k: int) -> float:
    """Closed form ``(sqrt(2)/2)^k`` for both the rho and the sigma pair."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return (math.sqrt(2) / 2) ** k


def analytic_sigma_distance(k: int) -> float:
    if k < 1:
        raise ValueError("k must be at least 1")
    return math.sin(math.pi / 4) ** k
