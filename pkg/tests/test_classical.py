import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conjcrypt.classical import (
    ComplexityProfile,
    DecryptionStats,
    TransformIndex,
    classical_decrypt,
    classical_encrypt,
    complexity_estimates,
    crc,
    h_inverse,
    h_transform,
)
from conjcrypt.errors import AmbiguousResultError, RedundancyError
from conjcrypt.scheme import make_rng


def test_crc8_check_value():
    # standard CRC-8 (poly 0x07, init 0) check value over ASCII "123456789"
    bits = "".join(format(c, "08b") for c in b"123456789")
    assert int(crc(bits), 2) == 0xF4


def test_identity_transform():
    assert h_transform(TransformIndex(1, 4), "10110010") == "10110010"


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16), st.text("01", min_size=2, max_size=40))
def test_transforms_are_bijections(lam, block):
    idx = TransformIndex(lam, 16)
    assert h_inverse(idx, h_transform(idx, block)) == block


def test_transform_is_permutation():
    idx = TransformIndex(3, 4)
    images = {h_transform(idx, "".join(b)) for b in itertools.product("01", repeat=6)}
    assert len(images) == 64


def test_index_validation():
    with pytest.raises(ValueError):
        TransformIndex(0, 4)
    with pytest.raises(ValueError):
        TransformIndex(5, 4)


def test_round_trip_and_stats():
    rng = make_rng(5, "classical")
    key = "".join(str(b) for b in rng.integers(0, 2, size=32))
    msg = "".join(str(b) for b in rng.integers(0, 2, size=24 * 3))
    stats = DecryptionStats()
    blocks = classical_encrypt(msg, key, 1, rng)
    assert classical_decrypt(blocks, key, 1, stats=stats) == msg
    assert stats.blocks == 3 and stats.candidates_tried == 3


def test_ambiguity_rate_is_small():
    # with an 8-bit CRC each wrong inverse passes with probability 2^-8
    rng = make_rng(6, "ambiguity")
    ok = ambiguous = 0
    for _ in range(200):
        key = "".join(str(b) for b in rng.integers(0, 2, size=32))
        msg = "".join(str(b) for b in rng.integers(0, 2, size=24))
        try:
            ok += classical_decrypt(classical_encrypt(msg, key, 4, rng), key, 4) == msg
        except AmbiguousResultError as exc:
            ambiguous += 1
            assert msg in exc.candidates
    assert ok + ambiguous == 200
    assert ambiguous <= 10


def test_redundancy_failure():
    key = "0" * 32
    blocks = classical_encrypt("0" * 24, key, 1, make_rng(0))
    tampered = [blocks[0][:-1] + str(1 - int(blocks[0][-1]))]
    with pytest.raises(RedundancyError):
        classical_decrypt(tampered, key, 1)


def test_encrypt_errors(rng):
    with pytest.raises(ValueError):
        classical_encrypt("0" * 10, "0" * 32, 2, rng)
    with pytest.raises(ValueError):
        classical_encrypt("0", "0" * 8, 2, rng)


def test_complexity_closed_forms():
    p = ComplexityProfile(1, 2, 3, 4, n=5, k=6, l=7)
    est = complexity_estimates(p)
    assert est.enc == 5 * (1 + 3)
    assert est.dec == 5 * (2 + Fraction(7 * 4, 2))
    assert est.dec_worst == 5 * (2 + 7 * 4)
    assert est.exhaustive == 2**6 * 5 * (2 + 7**5 * 4)
    assert not est.overflow


def test_complexity_overflow_flag():
    est = complexity_estimates(ComplexityProfile(1, 1, 1, 1, n=400, k=64, l=2**10))
    assert est.overflow
    with pytest.raises(ValueError):
        ComplexityProfile(-1, 0, 0, 0, n=1, k=1, l=1)
