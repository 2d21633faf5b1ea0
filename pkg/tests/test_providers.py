import hashlib
import threading
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqhybrid.providers import (
    KeyMismatchError,
    LatencyProvider,
    MockProvider,
    NoProviderError,
    ProviderError,
    UnknownAlgorithmError,
    derive_seed,
    expand,
    get_provider,
    mock_keygen,
    parse_seed,
    with_latency,
)
from pqhybrid.registry import builtin_registry

ZERO = bytes(32)


def flip(data, bit):
    b = bytearray(data)
    b[bit // 8] ^= 1 << (bit % 8)
    return bytes(b)


def test_expand_oracle():
    seed = b"abc"
    want = hashlib.sha256(seed + b"\x00\x00\x00\x00").digest() + hashlib.sha256(seed + b"\x00\x00\x00\x01").digest()
    assert expand(seed, 40) == want[:40]
    assert expand(seed, 0) == b""


def test_mldsa44_keygen():
    kp = mock_keygen("ML-DSA-44", ZERO)
    assert len(kp.public_key) == 1312
    assert kp == mock_keygen("ML-DSA-44", ZERO)
    assert kp.seed == ZERO
    assert kp.private_key.hex() not in repr(kp)


def test_keys_differ_per_algorithm_and_seed():
    a = mock_keygen("ML-DSA-44", ZERO).public_key
    b = mock_keygen("ML-DSA-44", b"\x01" + ZERO[1:]).public_key
    assert a != b
    assert mock_keygen("ML-DSA-65", ZERO).public_key[:32] != a[:32]


def test_slh_dsa_has_no_provider():
    with pytest.raises(NoProviderError):
        get_provider("SLH-DSA-SHA2-128s")


def test_unknown_algorithm():
    with pytest.raises(UnknownAlgorithmError):
        get_provider("RSA-2048")


def test_kem_is_keygen_only():
    p = get_provider("ML-KEM-512")
    kp = p.keygen(ZERO)
    assert len(kp.public_key) == 800
    with pytest.raises(ProviderError):
        p.sign(kp.private_key, b"m")
    assert p.verify(kp.public_key, b"m", b"x") is False


def test_sign_sizes_and_determinism():
    p = get_provider("ML-DSA-44")
    kp = p.keygen(ZERO)
    sig = p.sign(kp.private_key, b"hello")
    assert len(sig) == 2420
    assert sig == p.sign(kp.private_key, b"hello")


@given(st.binary(max_size=64))
def test_ecdsa_length_variable(msg):
    p = get_provider("ECDSA-P256")
    kp = p.keygen(ZERO)
    assert 70 <= len(p.sign(kp.private_key, msg)) <= 72


def test_ecdsa_lengths_cover_range():
    p = get_provider("ECDSA-P256")
    kp = p.keygen(ZERO)
    assert {len(p.sign(kp.private_key, bytes([i]))) for i in range(64)} == {70, 71, 72}


def test_sign_rejects_wrong_key():
    p = get_provider("ML-DSA-44")
    with pytest.raises(KeyMismatchError):
        p.sign(mock_keygen("ECDSA-P256", ZERO).private_key, b"m")


@settings(max_examples=50)
@given(st.binary(min_size=1, max_size=64), st.data())
def test_tamper_detection(msg, data):
    p = get_provider("ECDSA-P256")
    kp = p.keygen(ZERO)
    sig = p.sign(kp.private_key, msg)
    assert p.verify(kp.public_key, msg, sig)
    assert not p.verify(kp.public_key, flip(msg, data.draw(st.integers(0, 8 * len(msg) - 1))), sig)
    assert not p.verify(kp.public_key, msg, flip(sig, data.draw(st.integers(0, 8 * len(sig) - 1))))
    assert not p.verify(kp.public_key, msg, sig[:-1])


def test_verify_never_raises_on_garbage():
    p = get_provider("ML-DSA-44")
    assert p.verify(b"", b"", b"") is False
    assert p.verify(b"x" * 1312, b"", b"") is False


def test_wrong_key_rejected():
    p = get_provider("ML-DSA-44")
    a, b = p.keygen(ZERO), p.keygen(b"\x02" * 32)
    assert not p.verify(b.public_key, b"m", p.sign(a.private_key, b"m"))


def test_keygen_seed_length():
    with pytest.raises(ValueError):
        get_provider("ML-DSA-44").keygen(b"short")


def test_latency_zero_is_identity():
    p = get_provider("ML-DSA-44")
    assert with_latency(p, 0) is p


def test_latency_single_and_sequential():
    p = with_latency(get_provider("ECDSA-P256"), 50)
    kp = p.keygen(ZERO)
    t = time.perf_counter()
    sig = p.sign(kp.private_key, b"m")
    assert time.perf_counter() - t >= 0.050
    assert p.verify(kp.public_key, b"m", sig)
    t = time.perf_counter()
    p.sign(kp.private_key, b"m")
    p.sign(kp.private_key, b"m")
    assert time.perf_counter() - t >= 0.100


def test_latency_overlaps_across_threads():
    p = LatencyProvider(get_provider("ECDSA-P256"), 100)
    kp = p.keygen(ZERO)
    t = time.perf_counter()
    threads = [threading.Thread(target=p.sign, args=(kp.private_key, b"m")) for _ in range(2)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert time.perf_counter() - t < 0.190


def test_latency_rejects_negative():
    with pytest.raises(ValueError):
        LatencyProvider(get_provider("ECDSA-P256"), -1)


def test_provider_mapping_preferred():
    custom = MockProvider(builtin_registry()["ML-DSA-65"])
    assert get_provider("ML-DSA-44", {"ML-DSA-44": custom}) is custom


def test_parse_seed():
    assert parse_seed("00" * 32) == ZERO
    for bad in ("00" * 31, "zz" * 32, ""):
        with pytest.raises(ValueError):
            parse_seed(bad)


def test_derive_seed_independent_labels():
    a, b = derive_seed(ZERO, "ca:ML-DSA-44"), derive_seed(ZERO, "subject:ML-DSA-44")
    assert len(a) == 32 and a != b
    assert a == hashlib.sha256(b"seed" + ZERO + b"ca:ML-DSA-44").digest()
