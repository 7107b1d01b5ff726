"""Bell-pair construction behind the key-attack argument.

Alice measures her half of ``(|00> + |11>)/sqrt2`` in the computational
basis (b = 0) or the Hadamard basis (b = 1). Eve's half then collapses to
one of the four conjugate-coding states. If Eve could read the basis off
her qubit, b would travel faster than light. Here we check numerically
that Eve's reduced state is identical for both b, so no measurement has
any advantage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attacks import Povm, outcome_distribution
from .errors import InvalidPovmError
from .linalg import partial_trace_first, projector
from .scheme import CONJUGATE_KETS, IDENTITY_2, Rng


@dataclass(frozen=True)
class BellExperimentResult:
    basis_choice: int
    alice_outcome: int
    eve_state: np.ndarray
    probability: float


def bell_pair() -> np.ndarray:
    v = np.zeros(4, dtype=np.complex128)
    v[0] = v[3] = np.sqrt(0.5)
    return v


def conditional_eve_states(b: int) -> list[tuple[float, np.ndarray]]:
    """``(probability, Eve's post-measurement state)`` for each of Alice's outcomes."""
    if b not in (0, 1):
        raise ValueError("basis choice must be a bit")
    phi = bell_pair()
    out = []
    for outcome in (0, 1):
        # Alice holds the left qubit
        proj = np.kron(projector(CONJUGATE_KETS[b][outcome]), IDENTITY_2)
        post = proj @ phi
        p = float(np.vdot(post, post).real)
        joint = projector(post / np.sqrt(p))
        out.append((p, partial_trace_first(joint, 2)))
    return out


def alice_measure(b: int, rng: Rng) -> BellExperimentResult:
    branches = conditional_eve_states(b)
    outcome = int(rng.random() >= branches[0][0])
    p, state = branches[outcome]
    return BellExperimentResult(b, outcome, state, p)


def eve_marginal(b: int) -> np.ndarray:
    """Eve's state averaged over Alice's outcomes."""
    return sum(p * state for p, state in conditional_eve_states(b))


def empirical_eve_marginal(b: int, trials: int, rng: Rng) -> tuple[np.ndarray, np.ndarray]:
    """Average of Eve's collapsed states over ``trials`` runs.

    Returns the average and the per-entry standard error of that average,
    the latter from the exact branch probabilities.
    """
    branches = conditional_eve_states(b)
    p0 = branches[0][0]
    outcomes = rng.random(trials) >= p0
    n1 = int(np.count_nonzero(outcomes))
    s0, s1 = branches[0][1], branches[1][1]
    mean = ((trials - n1) * s0 + n1 * s1) / trials
    spread = np.abs(s1 - s0) * np.sqrt(p0 * (1 - p0))
    return mean, spread / np.sqrt(trials)


def signalling_advantage(povm: Povm) -> float:
    """``|Pr[first outcome | b=0] - Pr[first outcome | b=1]|`` on Eve's marginals."""
    if povm.dim != 2:
        raise InvalidPovmError("signalling advantage is defined for single-qubit POVMs")
    label = povm.labels[0]
    p0 = outcome_distribution(eve_marginal(0), povm)[label]
    p1 = outcome_distribution(eve_marginal(1), povm)[label]
    return abs(p0 - p1)


def random_qubit_povm(rng: Rng, outcomes: int = 2) -> Povm:
    """Random POVM from Gaussian positive operators normalised by ``S^{-1/2}``."""
    mats = []
    for _ in range(outcomes):
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        mats.append(g @ g.conj().T)
    total = sum(mats)
    w, v = np.linalg.eigh(total)
    inv_sqrt = v @ np.diag(w**-0.5) @ v.conj().T
    elements = [inv_sqrt @ m @ inv_sqrt for m in mats]
    # clean rounding so the elements are exactly Hermitian
    elements = [(e + e.conj().T) / 2 for e in elements]
    labels = [str(i) for i in range(outcomes)]
    return Povm(tuple(elements), tuple(labels))


def signal_bits(bits, povm: Povm, rng: Rng) -> list[str]:
    """Try to send ``bits`` by repeating the construction once per bit.

    Eve measures each received qubit with ``povm`` and reports the
    outcome. The outcomes carry no information about the bits.
    """
    guesses = []
    for b in bits:
        result = alice_measure(int(b), rng)
        probs = outcome_distribution(result.eve_state, povm)
        p = np.array([probs[x] for x in povm.labels])
        guesses.append(povm.labels[int(rng.choice(len(p), p=p / p.sum()))])
    return guesses
