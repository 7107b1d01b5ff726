"""Classical probabilistic wrapper around a base block cipher.

Each block is passed through a randomly indexed bijection ``H_lambda``
before encryption. The receiver tries every inverse and keeps the
candidate whose CRC redundancy checks out. The base cipher and the
transform family are minimal stand-ins; only the wrapper logic and the
cost accounting matter here.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AmbiguousResultError, RedundancyError
from .scheme import Rng, bits_to_str, parse_bits

FAMILY_SEED = 0x5EED_CAFE


@dataclass(frozen=True)
class TransformIndex:
    value: int
    family_size: int

    def __post_init__(self):
        if self.family_size < 1:
            raise ValueError("family size must be positive")
        if not 1 <= self.value <= self.family_size:
            raise ValueError(f"index {self.value} outside 1..{self.family_size}")


def _family_params(index: TransformIndex, k: int) -> tuple[int, int]:
    if index.value == 1:
        return 0, 0
    seq = np.random.SeedSequence([FAMILY_SEED, k, index.value])
    rng = np.random.Generator(np.random.Philox(seq))
    mask = int.from_bytes(rng.bytes((k + 7) // 8), "big") % (1 << k)
    shift = int(rng.integers(0, k))
    return mask, shift


def _rotl(x: int, shift: int, k: int) -> int:
    full = (1 << k) - 1
    return ((x << shift) | (x >> (k - shift))) & full if shift else x


def h_transform(index: TransformIndex, block) -> str:
    """``rotate_left(x XOR mask, shift)``, the identity for index 1."""
    bits = parse_bits(block)
    k = len(bits)
    mask, shift = _family_params(index, k)
    x = int(bits_to_str(bits), 2) ^ mask
    return format(_rotl(x, shift, k), f"0{k}b")


def h_inverse(index: TransformIndex, block) -> str:
    bits = parse_bits(block)
    k = len(bits)
    mask, shift = _family_params(index, k)
    x = _rotl(int(bits_to_str(bits), 2), (k - shift) % k, k)
    return format(x ^ mask, f"0{k}b")


def crc(bits, width: int = 8, poly: int = 0x07) -> str:
    """Bitwise MSB-first CRC with zero initial value (CRC-8/SMBUS for the defaults)."""
    reg = 0
    top = 1 << (width - 1)
    full = (1 << width) - 1
    for b in parse_bits(bits):
        reg ^= b << (width - 1)
        reg = ((reg << 1) ^ poly) & full if reg & top else (reg << 1) & full
    return format(reg, f"0{width}b")


def key_pad(key, block_index: int, k: int) -> int:
    digest = hashlib.blake2b(
        f"{bits_to_str(parse_bits(key))}:{block_index}".encode(), digest_size=(k + 7) // 8
    ).digest()
    return int.from_bytes(digest, "big") % (1 << k)


def base_encrypt(block: str, key, block_index: int) -> str:
    k = len(block)
    return format(int(block, 2) ^ key_pad(key, block_index, k), f"0{k}b")


base_decrypt = base_encrypt


@dataclass
class DecryptionStats:
    blocks: int = 0
    candidates_tried: int = 0
    ambiguous: int = 0


def classical_encrypt(m, key, family_size: int, rng: Rng, crc_width: int = 8) -> list[str]:
    """Split ``m`` into payloads, append CRC, apply a random ``H_lambda``, then encrypt.

    Each ciphertext block has the key length; the payload is that minus the CRC width.
    """
    key_bits = parse_bits(key)
    k = len(key_bits)
    payload = k - crc_width
    if payload < 1:
        raise ValueError("key too short for the configured CRC width")
    bits = bits_to_str(parse_bits(m))
    if not bits or len(bits) % payload:
        raise ValueError(f"message length must be a positive multiple of {payload}")
    out = []
    for i in range(0, len(bits), payload):
        chunk = bits[i : i + payload]
        block = chunk + crc(chunk, crc_width)
        lam = TransformIndex(int(rng.integers(1, family_size + 1)), family_size)
        out.append(base_encrypt(h_transform(lam, block), key_bits, i // payload))
    return out


def decryption_candidates(block: str, key, block_index: int, family_size: int) -> list[str]:
    y = base_decrypt(block, key, block_index)
    return [h_inverse(TransformIndex(lam, family_size), y) for lam in range(1, family_size + 1)]


def classical_decrypt(
    blocks, key, family_size: int, crc_width: int = 8, stats: DecryptionStats | None = None
) -> str:
    """Try every inverse transform and keep the one candidate that passes the CRC."""
    key_bits = parse_bits(key)
    out = []
    for i, block in enumerate(blocks):
        candidates = decryption_candidates(block, key_bits, i, family_size)
        payloads = sorted(
            {c[:-crc_width] for c in candidates if crc(c[:-crc_width], crc_width) == c[-crc_width:]}
        )
        if stats is not None:
            stats.blocks += 1
            stats.candidates_tried += len(candidates)
        if not payloads:
            raise RedundancyError(f"block {i}: no candidate passes the redundancy check")
        if len(payloads) > 1:
            if stats is not None:
                stats.ambiguous += 1
            raise AmbiguousResultError(f"block {i}: {len(payloads)} candidates pass", payloads)
        out.append(payloads[0])
    return "".join(out)


@dataclass(frozen=True)
class ComplexityProfile:
    t1: int | Fraction
    t2: int | Fraction
    t3: int | Fraction
    t4: int | Fraction
    n: int
    k: int
    l: int  # noqa: E741

    def __post_init__(self):
        for name in ("t1", "t2", "t3", "t4", "n", "k", "l"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class ComplexityEstimate:
    enc: Fraction
    dec: Fraction
    dec_worst: Fraction
    exhaustive: Fraction

    @property
    def overflow(self) -> bool:
        """True when a value no longer fits a double."""
        try:
            for v in (self.enc, self.dec, self.dec_worst, self.exhaustive):
                float(v)
        except OverflowError:
            return True
        return False


def complexity_estimates(p: ComplexityProfile) -> ComplexityEstimate:
    """Exact costs with rational arithmetic, so huge ``l^n`` cannot overflow.

    ``enc = n (t1 + t3)``, ``dec = n (t2 + l t4 / 2)`` (expected number of
    inverse trials), ``exhaustive = 2^k n (t2 + l^n t4)``. ``dec_worst``
    charges all ``l`` inverse trials.
    """
    t1, t2, t3, t4 = (Fraction(x) for x in (p.t1, p.t2, p.t3, p.t4))
    return ComplexityEstimate(
        enc=p.n * (t1 + t3),
        dec=p.n * (t2 + Fraction(p.l, 2) * t4),
        dec_worst=p.n * (t2 + p.l * t4),
        exhaustive=2**p.k * p.n * (t2 + p.l**p.n * t4),
    )
