"""Measurement attacks on the cipher states.

Covers POVM evaluation and sampling, the Breidbart measurement (every
qubit measured in the basis rotated by pi/8), and a scan over rotated
product bases that compares each basis with the trace-distance bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .densities import MAX_QUBITS, rho_b_direct
from .errors import DimensionCapError, InvalidPovmError
from .linalg import as_matrix, hermitian_eigenvalues, kolmogorov_distance, kron_all, projector, trace_distance
from .scheme import ProductState, Rng

BREIDBART_ANGLE = math.pi / 8
POVM_TOL = 1e-10


@dataclass(frozen=True)
class Povm:
    """Positive operators summing to the identity, one per outcome label."""

    elements: tuple[np.ndarray, ...]
    labels: tuple[str, ...]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        elements = tuple(as_matrix(e) for e in self.elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(elements) != len(self.labels):
            raise InvalidPovmError("one label per element required")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidPovmError("labels must be distinct")
        if not elements:
            raise InvalidPovmError("empty POVM")
        if self.validate:
            check_povm(elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)


def check_povm(elements, tol: float = POVM_TOL) -> None:
    dim = elements[0].shape[0]
    if any(e.shape != (dim, dim) for e in elements):
        raise InvalidPovmError("elements have different dimensions")
    for e in elements:
        if np.max(np.abs(e - e.conj().T)) > tol:
            raise InvalidPovmError("element is not Hermitian")
        if dim <= 16 and hermitian_eigenvalues(e)[-1] < -tol:
            raise InvalidPovmError("element is not positive semidefinite")
    total = sum(elements)
    if np.max(np.abs(total - np.eye(dim))) > tol:
        raise InvalidPovmError("elements do not sum to the identity")


def basis_povm(vectors, labels=None) -> Povm:
    """Projective measurement onto the given orthonormal vectors."""
    vectors = [np.asarray(v, dtype=np.complex128) for v in vectors]
    if labels is None:
        width = max(1, (len(vectors) - 1).bit_length())
        labels = [format(i, f"0{width}b") for i in range(len(vectors))]
    return Povm(tuple(projector(v) for v in vectors), tuple(labels))


def computational_povm(k: int) -> Povm:
    return rotated_product_povm(0.0, k)


def rotated_basis(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """``cos t|0> + sin t|1>`` and its orthogonal complement."""
    c, s = math.cos(theta), math.sin(theta)
    return (np.array([c, s], dtype=np.complex128), np.array([-s, c], dtype=np.complex128))


def rotated_product_povm(theta: float, k: int) -> Povm:
    """Every qubit measured in the basis rotated by ``theta``; labels are k-bit strings."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > MAX_QUBITS:
        raise DimensionCapError(f"k={k} exceeds the {MAX_QUBITS}-qubit cap")
    single = [projector(v) for v in rotated_basis(theta)]
    elements, labels = [], []
    for r in itertools.product((0, 1), repeat=k):
        elements.append(kron_all(single[b] for b in r))
        labels.append("".join(map(str, r)))
    return Povm(tuple(elements), tuple(labels), validate=k <= 4)


def product_basis_probabilities(rho, theta: float, k: int) -> dict[str, float]:
    """Outcome distribution of ``rotated_product_povm(theta, k)`` via ``diag(V^H rho V)``."""
    rho = as_matrix(rho)
    v = kron_all([np.column_stack(rotated_basis(theta))] * k)
    diag = np.einsum("ir,ij,jr->r", v.conj(), rho, v).real
    width = k
    return {format(i, f"0{width}b"): min(max(float(p), 0.0), 1.0) for i, p in enumerate(diag)}


def breidbart_povm(k: int) -> Povm:
    return rotated_product_povm(BREIDBART_ANGLE, k)


def uniform_povm(dim: int, labels=("0", "1")) -> Povm:
    w = 1.0 / len(labels)
    return Povm(tuple(w * np.eye(dim) for _ in labels), tuple(labels))


def outcome_distribution(rho, povm: Povm) -> dict[str, float]:
    """Born probabilities ``Tr(rho E)`` keyed by outcome label."""
    rho = as_matrix(rho)
    if rho.shape[0] != povm.dim:
        raise ValueError(f"state dimension {rho.shape[0]} differs from POVM dimension {povm.dim}")
    probs = {}
    for label, e in zip(povm.labels, povm.elements):
        # Tr(rho E) as an elementwise sum avoids the full matrix product
        p = float(np.sum(rho * e.T).real)
        probs[label] = min(max(p, 0.0), 1.0)
    return probs


def sample_measurement(state, povm: Povm, rng: Rng, size: int | None = None):
    """Draw outcome labels with Born probabilities.

    ``state`` is a density matrix or a symbolic ``ProductState``. With
    ``size`` given, returns an array of labels instead of one label.
    """
    if isinstance(state, ProductState):
        state = state.density()
    probs = outcome_distribution(state, povm)
    p = np.array([probs[label] for label in povm.labels])
    p = p / p.sum()
    idx = rng.choice(len(p), size=size, p=p)
    labels = np.array(povm.labels)
    return labels[idx] if size is not None else str(labels[idx])


def breidbart_prob_difference(r, k: int) -> float:
    """``P_r(rho_0^k) - P_r(rho_1^k) = 2 (-1)^w(r) (sqrt2/4)^k`` with w the Hamming weight."""
    r = str(r) if not isinstance(r, str) else r
    if len(r) != k:
        raise ValueError(f"outcome {r!r} does not have length {k}")
    w = r.count("1")
    return 2.0 * (-1) ** w * (math.sqrt(2) / 4) ** k


def breidbart_distributions(k: int) -> tuple[dict[str, float], dict[str, float]]:
    povm = breidbart_povm(k)
    return outcome_distribution(rho_b_direct(0, k), povm), outcome_distribution(rho_b_direct(1, k), povm)


def breidbart_classical_distance(k: int) -> float:
    beta, gamma = breidbart_distributions(k)
    return kolmogorov_distance(beta, gamma)


@dataclass(frozen=True)
class ScanResult:
    k: int
    angles: np.ndarray
    distances: np.ndarray
    best_angle: float
    best_distance: float
    trace_distance: float

    @property
    def breidbart_is_argmax(self) -> bool:
        return math.isclose(self.best_angle, BREIDBART_ANGLE, abs_tol=1e-12)

    @property
    def max_excess(self) -> float:
        """Largest amount by which any scanned basis beats the trace distance."""
        return float(np.max(self.distances) - self.trace_distance)


def angle_grid(resolution: int = 256) -> np.ndarray:
    """``resolution`` equally spaced angles in [0, pi); includes pi/8 when 8 divides it."""
    if resolution < 1:
        raise ValueError("empty measurement family")
    return np.arange(resolution) * (math.pi / resolution)


def measurement_family_scan(k: int, angles=None, tie_tol: float = 1e-12) -> ScanResult:
    """Best Kolmogorov distance over product bases rotated by a common angle.

    Ties within ``tie_tol`` go to the smallest angle.
    """
    if k < 1 or k > 4:
        raise ValueError("family scan supports 1 <= k <= 4")
    angles = angle_grid() if angles is None else np.asarray(angles, dtype=float)
    if angles.size == 0:
        raise ValueError("empty measurement family")
    rho0, rho1 = rho_b_direct(0, k), rho_b_direct(1, k)
    dists = np.empty(angles.size)
    for i, theta in enumerate(angles):
        p = product_basis_probabilities(rho0, float(theta), k)
        q = product_basis_probabilities(rho1, float(theta), k)
        dists[i] = kolmogorov_distance(p, q)
    best = float(np.max(dists))
    first = int(np.nonzero(dists >= best - tie_tol)[0][0])
    return ScanResult(
        k=k,
        angles=angles,
        distances=dists,
        best_angle=float(angles[first]),
        best_distance=float(dists[first]),
        trace_distance=trace_distance(rho0, rho1),
    )
