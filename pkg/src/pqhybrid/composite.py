"""Composite certificates: two keys and two signatures under one algorithm OID.

Both component keys share one SPKI BIT STRING and both component signatures
share the certificate's signature BIT STRING. Inside each BIT STRING the pair
is encoded as ``SEQUENCE { BIT STRING first, BIT STRING second }`` with the
post-quantum component first. A certificate is valid only when both component
signatures verify over the same TBS bytes.
"""

from __future__ import annotations

import datetime
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from . import der
from .der import DerError, DerValue
from .providers import KeyPair, Providers, SignatureProvider, derive_seed, get_provider
from .registry import COMPOSITE_MLDSA44_P256, AlgorithmId, Registry, Role, builtin_registry
from .x509 import (
    Certificate,
    CertificateError,
    Name,
    SubjectPublicKeyInfo,
    TbsCertificate,
    Validity,
    Verdict,
    VerifierProfile,
    encode_tbs,
    key_usage_extension,
    verify,
)

__all__ = [
    "CompositePair", "CompositeProvider", "encode_pair", "decode_pair",
    "composite_keypair", "composite_issue", "composite_verify",
]

# the second component is signed on the calling thread
_executor = ThreadPoolExecutor(max_workers=4, thread_name_prefix="composite-sign")


@dataclass(frozen=True)
class CompositePair:
    first: bytes
    second: bytes

    def __post_init__(self) -> None:
        if not self.first or not self.second:
            raise ValueError("both composite components must be non-empty")


def encode_pair(pair: CompositePair) -> bytes:
    return der.encode_value(DerValue.sequence(DerValue.bit_string(pair.first), DerValue.bit_string(pair.second)))


def decode_pair(data: bytes) -> CompositePair:
    try:
        items = der.decode(data).expect(der.SEQUENCE).children
        if len(items) != 2:
            raise CertificateError(f"composite value must hold 2 elements, got {len(items)}")
        first, second = (item.expect(der.BIT_STRING).as_bytes() for item in items)
        return CompositePair(first, second)
    except (DerError, ValueError) as exc:
        if isinstance(exc, CertificateError):
            raise
        raise CertificateError(f"malformed composite value: {exc}") from None


class CompositeProvider(SignatureProvider):
    """Signs with both components and verifies with logical AND.

    Keys and signatures are :func:`encode_pair` encodings. With
    ``concurrent=True`` the two component signatures are produced in
    parallel; the output is identical either way.
    """

    def __init__(self, algorithm: AlgorithmId, first: SignatureProvider, second: SignatureProvider,
                 concurrent: bool = True):
        if algorithm.role is not Role.COMPOSITE:
            raise ValueError(f"{algorithm.name} is not a composite algorithm")
        self.algorithm = algorithm
        self.first = first
        self.second = second
        self.concurrent = concurrent

    @classmethod
    def for_algorithm(cls, algorithm: AlgorithmId, providers: Optional[Providers] = None,
                      registry: Optional[Registry] = None, concurrent: bool = True) -> "CompositeProvider":
        a, b = algorithm.component_names
        return cls(algorithm, get_provider(a, providers, registry), get_provider(b, providers, registry),
                   concurrent)

    def __repr__(self) -> str:
        return f"CompositeProvider({self.first!r}, {self.second!r}, concurrent={self.concurrent})"

    def keygen(self, seed: bytes) -> KeyPair:
        return composite_keypair(self.algorithm.name,
                                 self.first.keygen(derive_seed(seed, "composite:0")),
                                 self.second.keygen(derive_seed(seed, "composite:1")))

    def sign(self, private_key: bytes, message: bytes) -> bytes:
        keys = decode_pair(private_key)
        if self.concurrent:
            pending = _executor.submit(self.first.sign, keys.first, message)
            second = self.second.sign(keys.second, message)
            first = pending.result()
        else:
            first = self.first.sign(keys.first, message)
            second = self.second.sign(keys.second, message)
        return encode_pair(CompositePair(first, second))

    def verify_components(self, public_key: bytes, message: bytes, signature: bytes) -> tuple:
        """Per-component results ``(first_ok, second_ok)``."""
        try:
            keys = decode_pair(public_key)
            sigs = decode_pair(signature)
        except CertificateError:
            return False, False
        return (self.first.verify(keys.first, message, sigs.first),
                self.second.verify(keys.second, message, sigs.second))

    def verify(self, public_key: bytes, message: bytes, signature: bytes) -> bool:
        first_ok, second_ok = self.verify_components(public_key, message, signature)
        return first_ok and second_ok


def composite_keypair(algorithm: str, first: KeyPair, second: KeyPair) -> KeyPair:
    """Bundle two component key pairs into one composite key pair."""
    return KeyPair(
        algorithm,
        encode_pair(CompositePair(first.public_key, second.public_key)),
        encode_pair(CompositePair(first.private_key, second.private_key)),
        first.seed + second.seed,
    )


def composite_issue(subject: Name, subject_pqc: SubjectPublicKeyInfo, subject_classical: SubjectPublicKeyInfo,
                    issuer: Name, ca_pqc: KeyPair, ca_classical: KeyPair, *,
                    serial: int, validity: Validity, algorithm: str = COMPOSITE_MLDSA44_P256,
                    key_usage: Iterable[str] = ("digitalSignature",),
                    providers: Optional[Providers] = None, registry: Optional[Registry] = None,
                    concurrent: bool = True) -> Certificate:
    """Issue a composite certificate.

    Both component signatures cover the same TBS bytes, so with
    ``concurrent=True`` they are produced in parallel.
    """
    registry = registry or builtin_registry()
    alg = registry.get(algorithm)
    if alg.role is not Role.COMPOSITE:
        raise CertificateError(f"{algorithm} is not a composite algorithm")
    pqc_alg, classical_alg = registry.components(alg)
    if (subject_pqc.algorithm, subject_classical.algorithm) != (pqc_alg.oid, classical_alg.oid):
        raise CertificateError(f"subject keys do not match {alg.name} components")
    if (ca_pqc.algorithm, ca_classical.algorithm) != alg.component_names:
        raise CertificateError(f"CA keys do not match {alg.name} components")
    provider = CompositeProvider.for_algorithm(alg, providers, registry, concurrent)

    spki = SubjectPublicKeyInfo(alg.oid, encode_pair(CompositePair(subject_pqc.key, subject_classical.key)))
    tbs = TbsCertificate(serial, alg.oid, issuer, validity, subject, spki, (key_usage_extension(key_usage),))
    ca = composite_keypair(alg.name, ca_pqc, ca_classical)
    return Certificate(tbs, alg.oid, provider.sign(ca.private_key, encode_tbs(tbs)))


def composite_verify(cert: Certificate, ca_public_keys: tuple, profile: VerifierProfile, *,
                     at: datetime.datetime, providers: Optional[Providers] = None,
                     registry: Optional[Registry] = None) -> Verdict:
    """Verify a composite certificate against the CA's ``(pqc, classical)`` public keys.

    Legacy verifiers do not know the composite OID and always reject.
    """
    ca_pk = encode_pair(CompositePair(*ca_public_keys))
    return verify(cert, ca_pk, profile, at=at, providers=providers, registry=registry)
