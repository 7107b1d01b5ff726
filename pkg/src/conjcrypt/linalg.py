"""Dense complex matrix algebra for operators on at most a dozen qubits.

Matrices are plain ``numpy`` complex arrays. Eigenvalues come from a
cyclic Jacobi solver for Hermitian matrices written here, so that the
trace distances reported elsewhere do not depend on LAPACK.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionCapError,
    InvalidStateError,
    OutcomeSpaceError,
    SymmetryError,
)

DIMENSION_CAP = 2**12
EIGEN_DIMENSION_CAP = 2**8

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite square complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b, cap: int = DIMENSION_CAP) -> np.ndarray:
    """Tensor product with the left factor indexing the coarse blocks."""
    a = as_matrix(a)
    b = as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    if dim > cap:
        raise DimensionCapError(f"dimension {dim} exceeds cap {cap}")
    return np.kron(a, b)


def kron_all(factors, cap: int = DIMENSION_CAP) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = kron(out, f, cap=cap)
    return out


def hermitian_part(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Symmetrize ``(A + A^dagger)/2``, refusing matrices that are far from Hermitian."""
    a = as_matrix(a)
    asym = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if asym >= tol:
        raise SymmetryError(f"matrix is not Hermitian (max asymmetry {asym:.3e})")
    return (a + a.conj().T) / 2


def round_robin_pairs(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule for even ``n``: n-1 rounds of n/2 disjoint pairs.

    Every unordered pair of indices appears exactly once per sweep.
    """
    if n % 2:
        raise ValueError("round-robin schedule needs an even number of indices")
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        ps, qs = [], []
        for i in range(n // 2):
            x, y = players[i], players[n - 1 - i]
            ps.append(min(x, y))
            qs.append(max(x, y))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _rotate_adjacent(a: np.ndarray) -> None:
    # Pairs are the index blocks (2i, 2i+1). For each, the unitary U with
    # (U^H A U)[2i, 2i+1] = 0: a phase on the second index makes the coupling
    # real, then the real Jacobi rotation. Zero couplings get U = I.
    n = a.shape[0]
    h = n // 2
    d = np.diagonal(a).real
    apq = a[0::2, 1::2].diagonal().copy()
    g = np.abs(apq)
    live = g > 0.0
    safe_g = np.where(live, g, 1.0)
    ph = np.where(live, apq / safe_g, 1.0)
    theta = (d[1::2] - d[0::2]) / (2.0 * safe_g)
    with np.errstate(over="ignore", invalid="ignore"):
        t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
    t = np.where(theta == 0.0, 1.0, t)
    t = np.where(live, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    u = np.empty((h, 2, 2), dtype=np.complex128)
    u[:, 0, 0] = c
    u[:, 0, 1] = s
    u[:, 1, 0] = -s * np.conj(ph)
    u[:, 1, 1] = c * np.conj(ph)
    # rows: A <- U^H A, then columns: A <- A U, both blockwise
    a[...] = np.matmul(u.conj().transpose(0, 2, 1), a.reshape(h, 2, n)).reshape(n, n)
    a[...] = np.matmul(a.reshape(n, h, 1, 2), u).reshape(n, n)

    idx = np.arange(h)
    a[2 * idx, 2 * idx + 1] = 0.0
    a[2 * idx + 1, 2 * idx] = 0.0
    diag = np.arange(n)
    a[diag, diag] = a[diag, diag].real


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def jacobi_eigenvalues(
    a,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    cap: int = EIGEN_DIMENSION_CAP,
) -> tuple[np.ndarray, int]:
    """Cyclic Jacobi on a Hermitian matrix, round-robin pair ordering.

    Each round rotates n/2 disjoint index pairs at once; the working matrix
    is kept permuted so the current pairs sit in adjacent rows. Returns the
    eigenvalues in descending order and the number of sweeps used.
    Convergence means the off-diagonal Frobenius norm fell below ``tol``
    (relative to the Frobenius norm when that exceeds one).
    """
    a = hermitian_part(a)
    n = a.shape[0]
    if n > cap:
        raise DimensionCapError(f"eigendecomposition limited to dimension {cap}, got {n}")
    if n == 1:
        return np.array([a[0, 0].real]), 0
    # odd dimension: append a decoupled zero index, dropped at the end
    m = n + (n % 2)
    work = np.zeros((m, m), dtype=np.complex128)
    work[:n, :n] = a
    scale = max(1.0, float(np.linalg.norm(a)))
    threshold = tol * scale
    schedule = round_robin_pairs(m)
    position = np.arange(m)  # position[label] = current row of that label
    sweeps = 0
    while _off_norm(work) >= threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p, q in schedule:
            sel = np.empty(m, dtype=np.intp)
            sel[0::2] = position[p]
            sel[1::2] = position[q]
            work = work[sel][:, sel]
            position[p] = np.arange(0, m, 2)
            position[q] = np.arange(1, m, 2)
            _rotate_adjacent(work)
    diag = np.diagonal(work).real[position[:n]]
    return np.sort(diag)[::-1], sweeps


def hermitian_eigenvalues(a, **kwargs) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, largest first."""
    return jacobi_eigenvalues(a, **kwargs)[0]


def trace_norm(a) -> float:
    return float(np.sum(np.abs(hermitian_eigenvalues(a))))


def validate_density(rho, tol: float = 1e-12, eig_tol: float = 1e-10) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the matrix."""
    rho = as_matrix(rho)
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidStateError("density operator is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"density operator has trace {tr}")
    if rho.shape[0] <= EIGEN_DIMENSION_CAP:
        lowest = hermitian_eigenvalues(rho)[-1]
        if lowest < -eig_tol:
            raise InvalidStateError(f"negative eigenvalue {lowest:.3e}")
    return rho


def trace_distance(a, b) -> float:
    """``D(a, b) = tr|a - b| / 2`` from the eigenvalues of the difference."""
    a = validate_density(a)
    b = validate_density(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return 0.5 * trace_norm(a - b)


def kolmogorov_distance(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    """Classical trace distance between two distributions on the same outcomes."""
    if set(p) != set(q):
        raise OutcomeSpaceError("distributions have different outcome spaces")
    return 0.5 * sum(abs(p[r] - q[r]) for r in sorted(p))


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=np.complex128).reshape(-1, 1)
    return v @ v.conj().T


def partial_trace_first(rho, dim_first: int) -> np.ndarray:
    """Trace out the left tensor factor of dimension ``dim_first``."""
    rho = as_matrix(rho)
    dim_rest = rho.shape[0] // dim_first
    r = rho.reshape(dim_first, dim_rest, dim_first, dim_rest)
    return np.einsum("ijik->jk", r)


def partial_trace_last(rho, dim_last: int) -> np.ndarray:
    rho = as_matrix(rho)
    dim_rest = rho.shape[0] // dim_last
    r = rho.reshape(dim_rest, dim_last, dim_rest, dim_last)
    return np.einsum("ijkj->ik", r)
