"""The conjugate-coding probabilistic cipher and the deterministic QPC cipher.

Ciphertext blocks are kept symbolic: a ``ProductState`` is the list of
``(bit, basis)`` pairs, and only becomes a vector or density operator when
asked to.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from functools import reduce
from operator import xor

import numpy as np

from .errors import ParityError
from .linalg import DIMENSION_CAP, kron_all, projector

SQRT_HALF = np.sqrt(0.5)

KET_0 = np.array([1.0, 0.0], dtype=np.complex128)
KET_1 = np.array([0.0, 1.0], dtype=np.complex128)
KET_PLUS = np.array([SQRT_HALF, SQRT_HALF], dtype=np.complex128)
KET_MINUS = np.array([SQRT_HALF, -SQRT_HALF], dtype=np.complex128)

# CONJUGATE_KETS[basis][bit]: |0>_0 = |0>, |1>_0 = |1>, |0>_1 = |+>, |1>_1 = |->
CONJUGATE_KETS = ((KET_0, KET_1), (KET_PLUS, KET_MINUS))

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) * SQRT_HALF
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

Rng = np.random.Generator


def _label_word(label) -> int:
    if isinstance(label, (int, np.integer)):
        return int(label) & 0xFFFFFFFF
    return zlib.crc32(str(label).encode("utf-8"))


def make_rng(seed: int, *labels) -> Rng:
    """Counter-based (Philox) generator for ``seed``, split by a label path.

    ``make_rng(7, "unicity", 4, run)`` gives a stream that depends only on
    its arguments, so parallel trials reproduce regardless of scheduling.
    """
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    words = [seed & 0xFFFFFFFF, seed >> 32, *(_label_word(x) for x in labels)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))


def spawn(rng: Rng, *labels) -> Rng:
    """Derive an independent child stream from ``rng`` and a label path."""
    seed = int(rng.integers(0, 2**63))
    return make_rng(seed, *labels)


def parse_bits(bits) -> tuple[int, ...]:
    """Accept ``"0110"``, a sequence of 0/1 ints, or a numpy bit array."""
    if isinstance(bits, str):
        if any(ch not in "01" for ch in bits):
            raise ValueError(f"not a bit string: {bits!r}")
        return tuple(int(ch) for ch in bits)
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"not a bit sequence: {bits!r}")
    return out


def bits_to_str(bits) -> str:
    return "".join(str(int(b)) for b in bits)


def parity(bits) -> int:
    return reduce(xor, parse_bits(bits), 0)


@dataclass(frozen=True)
class Key:
    """Basis string ``s`` shared by the two parties."""

    bits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", parse_bits(self.bits))
        if not self.bits:
            raise ValueError("key must have at least one bit")

    @property
    def k(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return bits_to_str(self.bits)

    @classmethod
    def random(cls, k: int, rng: Rng) -> Key:
        return cls(tuple(int(b) for b in rng.integers(0, 2, size=k)))


@dataclass(frozen=True)
class ParityString:
    """Member ``r`` of the parity class of strings whose XOR is ``parity``."""

    bits: tuple[int, ...]
    parity: int

    def __post_init__(self):
        object.__setattr__(self, "bits", parse_bits(self.bits))
        if parity(self.bits) != self.parity:
            raise ParityError(f"XOR of {bits_to_str(self.bits)} is not {self.parity}")

    @property
    def k(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class EncodedQubit:
    bit: int
    basis: int

    def vector(self) -> np.ndarray:
        return CONJUGATE_KETS[self.basis][self.bit]


@dataclass(frozen=True)
class ProductState:
    qubits: tuple[EncodedQubit, ...]

    @property
    def k(self) -> int:
        return len(self.qubits)

    def vector(self, cap: int = DIMENSION_CAP) -> np.ndarray:
        if 2**self.k > cap:
            raise ValueError(f"{self.k} qubits exceed the dimension cap {cap}")
        out = np.ones(1, dtype=np.complex128)
        for q in self.qubits:
            out = np.kron(out, q.vector())
        return out

    def density(self) -> np.ndarray:
        return kron_all(projector(q.vector()) for q in self.qubits)


def parity_class(b: int, k: int) -> list[tuple[int, ...]]:
    """All k-bit strings with XOR equal to ``b``, in lexicographic order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    out = []
    for x in range(2**k):
        bits = tuple((x >> (k - 1 - j)) & 1 for j in range(k))
        if parity(bits) == b:
            out.append(bits)
    return out


def sample_parity_string(b: int, k: int, rng: Rng) -> ParityString:
    """Uniform draw from the 2^(k-1) strings of parity ``b``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if b not in (0, 1):
        raise ValueError("b must be a bit")
    head = [int(x) for x in rng.integers(0, 2, size=k - 1)]
    last = reduce(xor, head, b)
    return ParityString(tuple(head) + (last,), b)


def encode_bit(m: int, key: Key, r: ParityString) -> ProductState:
    if r.parity != m:
        raise ParityError(f"parity string encodes {r.parity}, plaintext bit is {m}")
    if r.k != key.k:
        raise ValueError(f"parity string length {r.k} differs from key length {key.k}")
    return ProductState(tuple(EncodedQubit(rj, sj) for rj, sj in zip(r.bits, key.bits)))


def measure_qubit(qubit: EncodedQubit, basis: int, rng: Rng | None = None) -> int:
    """Born-rule measurement of one conjugate-coded qubit in ``basis``.

    A matching basis returns the encoded bit without touching ``rng``.
    """
    if basis == qubit.basis:
        return qubit.bit
    if rng is None:
        raise ValueError("mismatched-basis measurement needs an rng")
    p0 = abs(np.vdot(CONJUGATE_KETS[basis][0], qubit.vector())) ** 2
    return int(rng.random() >= p0)


def decrypt_bit(state: ProductState, key: Key, rng: Rng | None = None) -> int:
    """Measure each qubit in the key basis and return the parity of the results."""
    if state.k != key.k:
        raise ValueError(f"state has {state.k} qubits, key has {key.k} bits")
    return reduce(xor, (measure_qubit(q, s, rng) for q, s in zip(state.qubits, key.bits)), 0)


def encrypt_message(m, key: Key, rng: Rng) -> list[ProductState]:
    bits = parse_bits(m)
    if not bits:
        raise ValueError("message must have at least one bit")
    return [encode_bit(b, key, sample_parity_string(b, key.k, rng)) for b in bits]


def decrypt_message(blocks, key: Key, rng: Rng | None = None) -> str:
    return bits_to_str(decrypt_bit(block, key, rng) for block in blocks)


def qpc_encrypt(b: int, s1: int, s2: int) -> np.ndarray:
    """Deterministic quantum private channel: ``H^s1 X^s2 |b>``."""
    for v in (b, s1, s2):
        if v not in (0, 1):
            raise ValueError("qpc inputs must be bits")
    h = HADAMARD if s1 else IDENTITY_2
    x = PAULI_X if s2 else IDENTITY_2
    return h @ x @ (KET_1 if b else KET_0)


def qpc_decrypt(state, s1: int, s2: int, rng: Rng | None = None) -> int:
    """Undo ``H^s1 X^s2`` and measure in the computational basis.

    With the right key the outcome is certain. With a wrong key the
    Born-rule outcome is drawn from ``rng``.
    """
    h = HADAMARD if s1 else IDENTITY_2
    x = PAULI_X if s2 else IDENTITY_2
    psi = x @ h @ np.asarray(state, dtype=np.complex128)
    p1 = float(abs(psi[1]) ** 2)
    if p1 < 1e-12:
        return 0
    if p1 > 1 - 1e-12:
        return 1
    if rng is None:
        raise ValueError("uncertain outcome needs an rng")
    return int(rng.random() < p1)


def sample_parity_strings(bits, k: int, rng: Rng) -> np.ndarray:
    """Vectorised ``sample_parity_string``: one row of ``r`` per plaintext bit."""
    m = np.asarray(parse_bits(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.int8)
    if k < 1:
        raise ValueError("k must be at least 1")
    r = np.empty((m.size, k), dtype=np.int8)
    r[:, :-1] = rng.integers(0, 2, size=(m.size, k - 1))
    r[:, -1] = (m + r[:, :-1].sum(axis=1)) % 2
    return r


def _snap(table: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    # certain outcomes must not consume randomness-dependent branches
    table[np.abs(table) < tol] = 0.0
    table[np.abs(table - 1.0) < tol] = 1.0
    return table


def _conjugate_p1_table() -> np.ndarray:
    # p1[measured basis, prepared basis, prepared bit] = Pr[outcome 1]
    table = np.empty((2, 2, 2))
    for mb in (0, 1):
        for pb in (0, 1):
            for bit in (0, 1):
                table[mb, pb, bit] = abs(np.vdot(CONJUGATE_KETS[mb][1], CONJUGATE_KETS[pb][bit])) ** 2
    return _snap(table)


CONJUGATE_P1 = _conjugate_p1_table()


def measure_blocks(r: np.ndarray, prepared_key, measured_key, rng: Rng) -> np.ndarray:
    """Batch Born-rule measurement of conjugate-coded blocks.

    ``r`` holds one row of encoded bits per block, all prepared in the bases
    ``prepared_key`` and measured in ``measured_key``. Qubits whose basis
    matches reproduce their bit exactly.
    """
    pk = np.asarray(parse_bits(prepared_key), dtype=np.intp)
    mk = np.asarray(parse_bits(measured_key), dtype=np.intp)
    p1 = CONJUGATE_P1[mk[None, :], pk[None, :], r.astype(np.intp)]
    out = (rng.random(r.shape) < p1).astype(np.int8)
    exact = pk == mk
    out[:, exact] = r[:, exact]
    return out


def _qpc_p1_table() -> np.ndarray:
    # p1[b, s1, s2, c1, c2] = Pr[qpc_decrypt with key (c1, c2) returns 1]
    table = np.empty((2,) * 5)
    for b, s1, s2, c1, c2 in np.ndindex(*table.shape):
        h = HADAMARD if c1 else IDENTITY_2
        x = PAULI_X if c2 else IDENTITY_2
        psi = x @ h @ qpc_encrypt(b, s1, s2)
        table[b, s1, s2, c1, c2] = abs(psi[1]) ** 2
    return _snap(table)


QPC_P1 = _qpc_p1_table()
