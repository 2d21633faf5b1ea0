"""Catalyst certificates: a classical certificate plus an Alt-SPKI extension.

The Alt-SPKI extension is one non-critical extension holding
``SEQUENCE { OBJECT IDENTIFIER alg, BIT STRING key, BIT STRING sig }``.
``sig`` is the CA's post-quantum signature over the TBS with the Alt-SPKI
extension removed, so issuance is two strictly ordered signing phases:
post-quantum first, then the classical outer signature over the TBS that
already contains ``sig``.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from typing import Iterable, Optional

from . import der
from .der import DerValue, Oid
from .providers import KeyPair, Providers, get_provider
from .registry import Registry, Role, builtin_registry
from .x509 import (
    ACCEPT,
    OID_ALT_SPKI,
    Certificate,
    CertificateError,
    Extension,
    Name,
    Reason,
    SubjectPublicKeyInfo,
    TbsCertificate,
    Validity,
    Verdict,
    VerifierProfile,
    encode_tbs,
    key_usage_extension,
    reject,
    sign_tbs,
    verify,
)

__all__ = [
    "AltSpki", "build_pre_tbs", "catalyst_issue", "catalyst_verify", "extract_alt_spki",
]


@dataclass(frozen=True)
class AltSpki:
    alg: Oid
    key: bytes
    sig: bytes

    def to_extension(self) -> Extension:
        value = DerValue.sequence(DerValue.oid(self.alg), DerValue.bit_string(self.key), DerValue.bit_string(self.sig))
        return Extension(OID_ALT_SPKI, False, der.encode_value(value))

    @classmethod
    def from_extension(cls, ext: Extension) -> "AltSpki":
        if ext.oid != OID_ALT_SPKI:
            raise CertificateError(f"not an Alt-SPKI extension: {ext.oid}")
        try:
            items = der.decode(ext.value).expect(der.SEQUENCE).children
            if len(items) != 3:
                raise CertificateError("Alt-SPKI must hold alg, key and sig")
            alg, key, sig = items
            return cls(alg.as_oid(), key.expect(der.BIT_STRING).as_bytes(), sig.expect(der.BIT_STRING).as_bytes())
        except CertificateError:
            raise
        except ValueError as exc:
            raise CertificateError(f"malformed Alt-SPKI: {exc}") from None


def _alt_extensions(tbs: TbsCertificate) -> list:
    return [e for e in tbs.extensions if e.oid == OID_ALT_SPKI]


def extract_alt_spki(tbs: TbsCertificate) -> AltSpki:
    found = _alt_extensions(tbs)
    if len(found) != 1:
        raise CertificateError(f"expected exactly one Alt-SPKI extension, found {len(found)}")
    return AltSpki.from_extension(found[0])


def build_pre_tbs(tbs: TbsCertificate) -> bytes:
    """TBS bytes with the Alt-SPKI extension removed: what the alt signature covers."""
    found = _alt_extensions(tbs)
    if len(found) != 1:
        raise CertificateError(f"expected exactly one Alt-SPKI extension, found {len(found)}")
    return encode_tbs(tbs.without_extension(OID_ALT_SPKI))


def catalyst_issue(subject: Name, subject_classical: SubjectPublicKeyInfo, subject_pqc: SubjectPublicKeyInfo,
                   issuer: Name, ca_classical: KeyPair, ca_pqc: KeyPair, *,
                   serial: int, validity: Validity, key_usage: Iterable[str] = ("digitalSignature",),
                   providers: Optional[Providers] = None, registry: Optional[Registry] = None) -> Certificate:
    registry = registry or builtin_registry()
    classical_alg = registry.get(ca_classical.algorithm)
    pqc_alg = registry.get(ca_pqc.algorithm)
    if not classical_alg.is_classical or classical_alg.role is not Role.SIGNATURE:
        raise CertificateError(f"{classical_alg.name} is not a classical signature algorithm")
    if pqc_alg.is_classical or pqc_alg.role is not Role.SIGNATURE:
        raise CertificateError(f"{pqc_alg.name} is not a post-quantum signature algorithm")
    if subject_pqc.algorithm != pqc_alg.oid:
        # one post-quantum algorithm for both the subject key and the CA alt signature
        raise CertificateError("subject alternative key algorithm differs from the CA's post-quantum algorithm")
    if subject_classical.algorithm != classical_alg.oid:
        raise CertificateError("subject classical key algorithm differs from the CA's classical algorithm")
    pqc_provider = get_provider(pqc_alg.name, providers, registry)

    pre_tbs = TbsCertificate(serial, classical_alg.oid, issuer, validity, subject, subject_classical,
                             (key_usage_extension(key_usage),))
    alt_sig = pqc_provider.sign(ca_pqc.private_key, encode_tbs(pre_tbs))

    alt = AltSpki(pqc_alg.oid, subject_pqc.key, alt_sig)
    tbs = TbsCertificate(serial, classical_alg.oid, issuer, validity, subject, subject_classical,
                         pre_tbs.extensions + (alt.to_extension(),))
    return sign_tbs(tbs, ca_classical, providers, registry)


def catalyst_verify(cert: Certificate, ca_classical_pk: bytes, ca_pqc_pk: bytes, profile: VerifierProfile, *,
                    at: datetime.datetime, providers: Optional[Providers] = None,
                    registry: Optional[Registry] = None) -> Verdict:
    """Legacy verifiers check only the classical signature; PQC-aware ones also check the alt signature."""
    registry = registry or builtin_registry()
    profile = VerifierProfile(profile)
    outer = verify(cert, ca_classical_pk, profile, at=at, providers=providers, registry=registry)
    if not outer or profile is VerifierProfile.LEGACY:
        return outer
    try:
        alt = extract_alt_spki(cert.tbs)
        message = build_pre_tbs(cert.tbs)
    except CertificateError:
        return reject(Reason.MALFORMED_ALT)
    alt_alg = registry.lookup_by_oid(alt.alg)
    if alt_alg is None or alt_alg.role is not Role.SIGNATURE or alt_alg.is_classical or not alt_alg.has_provider:
        return reject(Reason.UNKNOWN_ALGORITHM)
    if not get_provider(alt_alg.name, providers, registry).verify(ca_pqc_pk, message, alt.sig):
        return reject(Reason.BAD_SIGNATURE)
    return ACCEPT
