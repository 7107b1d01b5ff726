"""Key recovery by exhaustive search once the ciphertext exceeds the unicity distance.

The plaintext is a maximal-length LFSR stream. Eve's detector flags a
stream as structured when its linear complexity (Berlekamp-Massey) is at
most ``L``. Decrypting with the right key gives a structured stream.
Every wrong key gives noise, or, for the deterministic cipher, a
complemented stream whose complexity is ``L + 1``. Each simulated qubit
can be measured only once, which is why the probabilistic cipher forces
Eve to spend a fresh group of ciphertexts on every candidate key.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousResultError, BudgetExhaustedError
from .scheme import QPC_P1, Key, Rng, bits_to_str, make_rng, measure_blocks, sample_parity_strings

# feedback exponents of primitive trinomials/pentanomials (x^L + ... + 1)
PRIMITIVE_TAPS = {
    2: (2, 1),
    3: (3, 2),
    4: (4, 3),
    5: (5, 3),
    6: (6, 5),
    7: (7, 6),
    8: (8, 6, 5, 4),
    9: (9, 5),
    10: (10, 7),
    11: (11, 9),
    12: (12, 6, 4, 1),
    13: (13, 4, 3, 1),
    14: (14, 5, 3, 1),
    15: (15, 14),
    16: (16, 15, 13, 4),
}

THREADS_ENV = "CONJCRYPT_THREADS"


@dataclass(frozen=True)
class PlaintextSource:
    """LFSR with recurrence ``a[n] = XOR of a[n - t]`` over the taps ``t``."""

    taps: tuple[int, ...]
    seed: tuple[int, ...]

    def __post_init__(self):
        L = max(self.taps)
        if len(self.seed) != L:
            raise ValueError(f"seed must have {L} bits")
        if not any(self.seed):
            raise ValueError("all-zero seed generates the zero stream")

    @property
    def register_length(self) -> int:
        return max(self.taps)

    @classmethod
    def maximal(cls, L: int, rng: Rng) -> PlaintextSource:
        seed = (0,) * L
        while not any(seed):
            seed = tuple(int(b) for b in rng.integers(0, 2, size=L))
        return cls(PRIMITIVE_TAPS[L], seed)


def prg_stream(source: PlaintextSource, length: int) -> np.ndarray:
    if length < 1:
        raise ValueError("length must be positive")
    L = source.register_length
    a = list(source.seed)
    while len(a) < length:
        n = len(a)
        bit = 0
        for t in source.taps:
            bit ^= a[n - t]
        a.append(bit)
    return np.array(a[:length], dtype=np.int8)


def linear_complexity(bits) -> int:
    """Berlekamp-Massey over GF(2); polynomials are Python ints, bit i = coeff of x^i."""
    s = [int(b) for b in bits]
    c, b = 1, 1
    lc, m = 0, 1
    for n in range(len(s)):
        d = s[n]
        for i in range(1, lc + 1):
            d ^= ((c >> i) & 1) & s[n - i]
        if d == 0:
            m += 1
        elif 2 * lc <= n:
            t = c
            c ^= b << m
            lc = n + 1 - lc
            b = t
            m = 1
        else:
            c ^= b << m
            m += 1
    return lc


@dataclass(frozen=True)
class DetectorConfig:
    N: int = 64
    L: int = 8

    def __post_init__(self):
        if self.L < 1 or self.N <= 2 * self.L:
            raise ValueError("detector needs N > 2L and L >= 1")


def is_pseudorandom(bits, cfg: DetectorConfig) -> bool:
    """True iff the first N bits have linear complexity at most L."""
    bits = np.asarray(bits)
    if bits.size < cfg.N:
        raise ValueError(f"need at least {cfg.N} bits, got {bits.size}")
    return linear_complexity(bits[: cfg.N]) <= cfg.L


class CiphertextSupply:
    """Ciphertext blocks that can each be handed out (and measured) only once."""

    def __init__(self, blocks: np.ndarray, qubits_per_block: int):
        self._blocks = blocks
        self.qubits_per_block = qubits_per_block
        self._next = 0

    @property
    def qubits_consumed(self) -> int:
        return self._next * self.qubits_per_block

    @property
    def remaining(self) -> int:
        return len(self._blocks) - self._next

    def take(self, count: int) -> np.ndarray:
        if count > self.remaining:
            raise BudgetExhaustedError(
                f"asked for {count} blocks, {self.remaining} left "
                f"after {self.qubits_consumed} qubits"
            )
        out = self._blocks[self._next : self._next + count]
        self._next += count
        return out


@dataclass
class AttackReport:
    scheme: str
    k: int
    true_key: str
    recovered_key: str | None
    qubits_consumed: int
    candidates_tested: int
    passing: list[str] = field(default_factory=list)
    true_key_passed: bool = False
    wrong_key_ones: int = 0
    wrong_key_bits: int = 0
    budget: int = 0

    @property
    def success(self) -> bool:
        return self.recovered_key is not None and self.recovered_key == self.true_key

    @property
    def ambiguous(self) -> bool:
        return len(self.passing) > 1


def probabilistic_budget(k: int, cfg: DetectorConfig) -> int:
    return k * 2**k * cfg.N


def deterministic_budget(k: int, cfg: DetectorConfig) -> int:
    return 2 * k * cfg.N


def _finish(report: AttackReport, strict: bool) -> AttackReport:
    if len(report.passing) == 1:
        report.recovered_key = report.passing[0]
    elif report.ambiguous and strict:
        raise AmbiguousResultError(f"{len(report.passing)} candidate keys pass", report.passing)
    return report


def attack_probabilistic(
    k: int, cfg: DetectorConfig, rng: Rng, budget: int | None = None, strict: bool = False
) -> AttackReport:
    """Exhaustive key search against the conjugate-coding cipher.

    Alice encrypts ``budget // k`` plaintext bits under a random key. Eve
    walks the 2^k candidate keys in lexicographic order, measures a fresh
    group of N ciphertext blocks in each candidate's bases, and runs the
    detector on the resulting parity bits.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = probabilistic_budget(k, cfg) if budget is None else budget
    key = Key.random(k, rng)
    source = PlaintextSource.maximal(cfg.L, rng)
    n_blocks = budget // k
    plain = prg_stream(source, max(n_blocks, 1))[:n_blocks]
    supply = CiphertextSupply(sample_parity_strings(plain, k, rng), k)
    report = AttackReport("probabilistic", k, str(key), None, 0, 0, budget=budget)
    for cand in itertools.product((0, 1), repeat=k):
        r = supply.take(cfg.N)
        decoded = measure_blocks(r, key.bits, cand, rng).sum(axis=1) % 2
        report.candidates_tested += 1
        label = bits_to_str(cand)
        passed = is_pseudorandom(decoded, cfg)
        if label == str(key):
            report.true_key_passed = passed
        else:
            report.wrong_key_ones += int(decoded.sum())
            report.wrong_key_bits += int(decoded.size)
        if passed:
            report.passing.append(label)
        report.qubits_consumed = supply.qubits_consumed
    return _finish(report, strict)


def attack_deterministic(
    k: int, cfg: DetectorConfig, rng: Rng, budget: int | None = None, strict: bool = False
) -> AttackReport:
    """Pair-by-pair key search against the quantum private channel.

    Each block carries k/2 qubits, qubit j encrypted with key pair
    ``(s[2j], s[2j+1])``. Position j across blocks carries the plaintext
    stream decimated by k/2. For every pair, Eve spends N blocks (that
    pair's qubit only) on each of the 4 candidate pairs.
    """
    if k < 2 or k % 2:
        raise ValueError("the deterministic scheme needs an even k")
    half = k // 2
    budget = deterministic_budget(k, cfg) if budget is None else budget
    key = Key.random(k, rng)
    source = PlaintextSource.maximal(cfg.L, rng)
    n_blocks = budget // half
    plain = prg_stream(source, max(n_blocks * half, 1))[: n_blocks * half].reshape(n_blocks, half)
    supply = CiphertextSupply(plain, half)
    s1 = np.array(key.bits[0::2], dtype=np.intp)
    s2 = np.array(key.bits[1::2], dtype=np.intp)
    report = AttackReport("deterministic", k, str(key), None, 0, 0, budget=budget)
    pair_passing: list[list[tuple[int, int]]] = [[] for _ in range(half)]
    true_ok = [False] * half
    for cand in itertools.product((0, 1), repeat=2):
        # one group of N blocks per candidate pair, shared across positions
        m = supply.take(cfg.N).astype(np.intp)
        p1 = QPC_P1[m, s1[None, :], s2[None, :], cand[0], cand[1]]
        decoded = (rng.random(m.shape) < p1).astype(np.int8)
        for j in range(half):
            report.candidates_tested += 1
            passed = is_pseudorandom(decoded[:, j], cfg)
            if cand == (int(s1[j]), int(s2[j])):
                true_ok[j] = passed
            else:
                report.wrong_key_ones += int(decoded[:, j].sum())
                report.wrong_key_bits += cfg.N
            if passed:
                pair_passing[j].append(cand)
        report.qubits_consumed = supply.qubits_consumed
    report.true_key_passed = all(true_ok)
    if all(len(p) == 1 for p in pair_passing):
        report.passing = ["".join(f"{a}{b}" for a, b in (p[0] for p in pair_passing))]
    else:
        combos = itertools.product(*pair_passing)
        report.passing = ["".join(f"{a}{b}" for a, b in combo) for combo in combos]
    return _finish(report, strict)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


ATTACKS = {"probabilistic": attack_probabilistic, "deterministic": attack_deterministic}


def run_attacks(scheme: str, k: int, cfg: DetectorConfig, seed: int, runs: int) -> list[AttackReport]:
    """``runs`` independent attacks, run r seeded by ``(seed, scheme, k, r)``.

    Results come back in run order whatever the thread count.
    """
    attack = ATTACKS[scheme]

    def one(run: int) -> AttackReport:
        return attack(k, cfg, make_rng(seed, "unicity", scheme, k, run))

    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        return list(pool.map(one, range(runs)))


@dataclass(frozen=True)
class UnicityRow:
    k: int
    qubits_probabilistic: int
    qubits_deterministic: int
    ratio: float
    runs: int = 0
    success_probabilistic: float | None = None
    success_deterministic: float | None = None


def compare_unicity(k_values, cfg: DetectorConfig, seed: int = 0, runs: int = 0) -> list[UnicityRow]:
    """Budgets of both attacks per k, plus Monte Carlo success rates when ``runs > 0``."""
    rows = []
    for k in sorted(k_values):
        if k % 2:
            raise ValueError(f"k={k}: the comparison needs even k")
        qp, qd = probabilistic_budget(k, cfg), deterministic_budget(k, cfg)
        sp = sd = None
        if runs:
            reps = run_attacks("probabilistic", k, cfg, seed, runs)
            repd = run_attacks("deterministic", k, cfg, seed, runs)
            sp = sum(r.success for r in reps) / runs
            sd = sum(r.success for r in repd) / runs
        rows.append(UnicityRow(k, qp, qd, qp / qd, runs, sp, sd))
    return rows
