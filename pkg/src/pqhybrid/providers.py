"""Signature provider interface and deterministic stand-in implementations.

The stand-ins are NOT secure: a signature is a public hash expansion of the
signer's public key and the message, so anyone can forge one. They produce
keys and signatures of exactly the registered sizes, which is what the
certificate encoding, signing order and verification plumbing need.
A real ML-DSA or ECDSA backend plugs in by implementing
:class:`SignatureProvider`.
"""

from __future__ import annotations

import abc
import hashlib
import hmac
import time
from dataclasses import dataclass
from typing import Mapping, Optional

from .registry import VARIABLE, AlgorithmId, Registry, Role, builtin_registry

SEED_LEN = 32


class ProviderError(Exception):
    pass


class UnknownAlgorithmError(ProviderError):
    pass


class NoProviderError(ProviderError):
    pass


class KeyMismatchError(ProviderError):
    pass


@dataclass(frozen=True)
class KeyPair:
    algorithm: str
    public_key: bytes
    private_key: bytes
    seed: bytes

    def __repr__(self) -> str:
        return f"KeyPair({self.algorithm!r}, public_key=<{len(self.public_key)} bytes>)"


class SignatureProvider(abc.ABC):
    """Key generation, signing and verification for one algorithm."""

    algorithm: AlgorithmId

    @abc.abstractmethod
    def keygen(self, seed: bytes) -> KeyPair:
        ...

    @abc.abstractmethod
    def sign(self, private_key: bytes, message: bytes) -> bytes:
        ...

    @abc.abstractmethod
    def verify(self, public_key: bytes, message: bytes, signature: bytes) -> bool:
        """Return False on any mismatch; never raise for bad input."""


def _h(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def expand(seed: bytes, length: int) -> bytes:
    """SHA-256 in counter mode: H(seed || 0) || H(seed || 1) || ... truncated.

    The counter is a 4-byte big-endian integer.
    """
    blocks = []
    for counter in range(-(-length // 32)):
        blocks.append(_h(seed + counter.to_bytes(4, "big")))
    return b"".join(blocks)[:length]


class MockProvider(SignatureProvider):
    """Hash-based stand-in with the size profile of ``algorithm``.

    KEM algorithms get key generation only.
    """

    def __init__(self, algorithm: AlgorithmId):
        if not algorithm.has_provider:
            raise NoProviderError(f"no built-in provider for {algorithm.name}")
        if algorithm.role is Role.COMPOSITE:
            raise NoProviderError(f"{algorithm.name} is composite; use CompositeProvider")
        if not isinstance(algorithm.public_key_len, int):
            raise NoProviderError(f"{algorithm.name} has no fixed public key length")
        self.algorithm = algorithm
        self._tag = algorithm.name.encode()

    def __repr__(self) -> str:
        return f"MockProvider({self.algorithm.name!r})"

    def keygen(self, seed: bytes) -> KeyPair:
        seed = bytes(seed)
        if len(seed) != SEED_LEN:
            raise ValueError(f"seed must be {SEED_LEN} bytes, got {len(seed)}")
        pk = expand(_h(b"pk" + self._tag + seed), self.algorithm.public_key_len)
        return KeyPair(self.algorithm.name, pk, seed + pk, seed)

    def _signature_for(self, public_key: bytes, message: bytes) -> bytes:
        digest = _h(b"sig" + self._tag + public_key + message)
        size = self.algorithm.signature_len
        if size == VARIABLE:
            lo, hi = self.algorithm.signature_range
            size = lo + digest[0] % (hi - lo + 1)
        return expand(digest, size)

    def sign(self, private_key: bytes, message: bytes) -> bytes:
        if self.algorithm.role is not Role.SIGNATURE:
            raise ProviderError(f"{self.algorithm.name} cannot sign")
        if len(private_key) != SEED_LEN + self.algorithm.public_key_len:
            raise KeyMismatchError(
                f"{self.algorithm.name} private key must be "
                f"{SEED_LEN + self.algorithm.public_key_len} bytes, got {len(private_key)}")
        return self._signature_for(bytes(private_key[SEED_LEN:]), bytes(message))

    def verify(self, public_key: bytes, message: bytes, signature: bytes) -> bool:
        if self.algorithm.role is not Role.SIGNATURE:
            return False
        if len(public_key) != self.algorithm.public_key_len:
            return False
        expected = self._signature_for(bytes(public_key), bytes(message))
        return hmac.compare_digest(expected, bytes(signature))


class LatencyProvider(SignatureProvider):
    """Wraps a provider so that every sign call lasts at least ``delay_ms``.

    The wait happens outside any lock, so concurrent callers overlap.
    """

    def __init__(self, inner: SignatureProvider, delay_ms: float):
        if delay_ms < 0:
            raise ValueError("delay must be >= 0")
        self.inner = inner
        self.delay_ms = delay_ms
        self.algorithm = inner.algorithm

    def __repr__(self) -> str:
        return f"LatencyProvider({self.inner!r}, {self.delay_ms}ms)"

    def keygen(self, seed: bytes) -> KeyPair:
        return self.inner.keygen(seed)

    def sign(self, private_key: bytes, message: bytes) -> bytes:
        deadline = time.perf_counter() + self.delay_ms / 1000.0
        sig = self.inner.sign(private_key, message)
        remaining = deadline - time.perf_counter()
        while remaining > 0:
            time.sleep(remaining)
            remaining = deadline - time.perf_counter()
        return sig

    def verify(self, public_key: bytes, message: bytes, signature: bytes) -> bool:
        return self.inner.verify(public_key, message, signature)


def with_latency(provider: SignatureProvider, delay_ms: float) -> SignatureProvider:
    if delay_ms == 0:
        return provider
    return LatencyProvider(provider, delay_ms)


Providers = Mapping[str, SignatureProvider]


def get_provider(name: str, providers: Optional[Providers] = None,
                 registry: Optional[Registry] = None) -> SignatureProvider:
    """Resolve ``name`` to a provider, preferring entries in ``providers``.

    Composite names resolve to a :class:`~pqhybrid.composite.CompositeProvider`
    built from the resolved component providers.
    """
    if providers is not None and name in providers:
        return providers[name]
    registry = registry or builtin_registry()
    alg = registry.lookup(name)
    if alg is None:
        raise UnknownAlgorithmError(f"unknown algorithm {name!r}")
    if alg.role is Role.COMPOSITE:
        from .composite import CompositeProvider

        return CompositeProvider.for_algorithm(alg, providers, registry)
    return MockProvider(alg)


def mock_keygen(name: str, seed: bytes, registry: Optional[Registry] = None) -> KeyPair:
    return get_provider(name, registry=registry).keygen(seed)


def parse_seed(text: str) -> bytes:
    """Seed from its 64-hex-character form."""
    text = text.strip()
    if len(text) != 2 * SEED_LEN:
        raise ValueError(f"seed must be {2 * SEED_LEN} hex characters")
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise ValueError("seed is not valid hex") from None


def derive_seed(master: bytes, label: str) -> bytes:
    """Independent 32-byte seed for one role (e.g. ``"ca:ML-DSA-44"``)."""
    return _h(b"seed" + master + label.encode())
