"""Chameleon certificates: an outer classical certificate carrying a delta
descriptor from which an inner post-quantum certificate is rebuilt.

Descriptor layout (one non-critical extension)::

    DeltaCertificateDescriptor ::= SEQUENCE {
        serialNumber      INTEGER,
        signature     [0] EXPLICIT AlgorithmIdentifier OPTIONAL,
        issuer        [1] EXPLICIT Name OPTIONAL,
        validity      [2] EXPLICIT Validity OPTIONAL,
        subject       [3] EXPLICIT Name OPTIONAL,
        subjectPublicKeyInfo  SubjectPublicKeyInfo,
        extensions    [4] EXPLICIT Extensions OPTIONAL,
        signatureValue    BIT STRING }

An optional field is present exactly when the inner value's DER differs
from the outer one. Absent extensions mean "the outer extensions minus the
descriptor itself".
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass
from typing import Iterable, Optional

from . import der
from .der import CONTEXT, DerValue, Oid
from .providers import KeyPair, Providers
from .registry import Registry, Role, builtin_registry
from .x509 import (
    OID_DELTA_DESCRIPTOR,
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
    algorithm_identifier,
    extensions_from_der_value,
    extensions_to_der_value,
    key_usage_extension,
    parse_algorithm_identifier,
    reject,
    sign_tbs,
    verify,
)

__all__ = [
    "DeltaCertificateDescriptor", "build_descriptor", "reconstruct_delta",
    "chameleon_issue", "chameleon_verify", "extract_descriptor",
]

_SIG_ALG, _ISSUER, _VALIDITY, _SUBJECT, _EXTENSIONS = range(5)


@dataclass(frozen=True)
class DeltaCertificateDescriptor:
    serial: int
    spki: SubjectPublicKeyInfo
    sig: bytes
    signature_alg: Optional[Oid] = None
    issuer: Optional[Name] = None
    validity: Optional[Validity] = None
    subject: Optional[Name] = None
    extensions: Optional[tuple] = None

    def __post_init__(self) -> None:
        if self.serial <= 0:
            raise CertificateError("descriptor serial must be positive")
        if self.extensions is not None:
            object.__setattr__(self, "extensions", tuple(self.extensions))

    def present_fields(self) -> frozenset:
        optional = ("signature_alg", "issuer", "validity", "subject", "extensions")
        return frozenset(f for f in optional if getattr(self, f) is not None)

    def to_der_value(self) -> DerValue:
        items = [DerValue.integer(self.serial)]
        if self.signature_alg is not None:
            items.append(DerValue.explicit(_SIG_ALG, algorithm_identifier(self.signature_alg)))
        if self.issuer is not None:
            items.append(DerValue.explicit(_ISSUER, self.issuer.to_der_value()))
        if self.validity is not None:
            items.append(DerValue.explicit(_VALIDITY, self.validity.to_der_value()))
        if self.subject is not None:
            items.append(DerValue.explicit(_SUBJECT, self.subject.to_der_value()))
        items.append(self.spki.to_der_value())
        if self.extensions is not None:
            items.append(DerValue.explicit(_EXTENSIONS, extensions_to_der_value(self.extensions)))
        items.append(DerValue.bit_string(self.sig))
        return DerValue.sequence(*items)

    def to_extension(self) -> Extension:
        return Extension(OID_DELTA_DESCRIPTOR, False, der.encode_value(self.to_der_value()))

    @classmethod
    def from_der_value(cls, v: DerValue) -> "DeltaCertificateDescriptor":
        items = list(v.expect(der.SEQUENCE).children)
        if len(items) < 3:
            raise CertificateError("descriptor too short")
        fields: dict = {"serial": items.pop(0).as_int(), "sig": items.pop().expect(der.BIT_STRING).as_bytes()}
        parsers = {
            _SIG_ALG: ("signature_alg", parse_algorithm_identifier),
            _ISSUER: ("issuer", Name.from_der_value),
            _VALIDITY: ("validity", Validity.from_der_value),
            _SUBJECT: ("subject", Name.from_der_value),
        }
        last = -1
        while items and items[0].tag_class == CONTEXT and items[0].tag_number in parsers:
            item = items.pop(0)
            if item.tag_number <= last:
                raise CertificateError("descriptor fields out of order")
            last = item.tag_number
            (inner,) = _single(item)
            name, parse = parsers[item.tag_number]
            fields[name] = parse(inner)
        if not items:
            raise CertificateError("descriptor lacks a subjectPublicKeyInfo")
        fields["spki"] = SubjectPublicKeyInfo.from_der_value(items.pop(0))
        if items:
            item = items.pop(0).expect(_EXTENSIONS, CONTEXT)
            (inner,) = _single(item)
            fields["extensions"] = extensions_from_der_value(inner)
        if items:
            raise CertificateError("unexpected trailing descriptor fields")
        return cls(**fields)

    @classmethod
    def from_extension(cls, ext: Extension) -> "DeltaCertificateDescriptor":
        if ext.oid != OID_DELTA_DESCRIPTOR:
            raise CertificateError(f"not a delta descriptor extension: {ext.oid}")
        try:
            return cls.from_der_value(der.decode(ext.value))
        except CertificateError:
            raise
        except ValueError as exc:
            raise CertificateError(f"malformed delta descriptor: {exc}") from None


def _single(item: DerValue) -> tuple:
    if not item.constructed or len(item.children) != 1:
        raise CertificateError("explicit tag must wrap exactly one value")
    return item.children


def _der(v) -> bytes:
    return der.encode_value(v.to_der_value())


def build_descriptor(inner: Certificate, outer_tbs: TbsCertificate) -> DeltaCertificateDescriptor:
    """Descriptor for ``inner`` relative to ``outer_tbs``, eliding equal fields.

    Equality is on canonical DER bytes. Any descriptor already present in
    ``outer_tbs`` is ignored for the extensions comparison.
    """
    it = inner.tbs
    outer_exts = outer_tbs.without_extension(OID_DELTA_DESCRIPTOR).extensions
    same_exts = (der.encode_value(extensions_to_der_value(it.extensions))
                 == der.encode_value(extensions_to_der_value(outer_exts)))
    return DeltaCertificateDescriptor(
        serial=it.serial,
        spki=it.spki,
        sig=inner.signature,
        signature_alg=None if it.signature_alg == outer_tbs.signature_alg else it.signature_alg,
        issuer=None if _der(it.issuer) == _der(outer_tbs.issuer) else it.issuer,
        validity=None if _der(it.validity) == _der(outer_tbs.validity) else it.validity,
        subject=None if _der(it.subject) == _der(outer_tbs.subject) else it.subject,
        extensions=None if same_exts else it.extensions,
    )


def extract_descriptor(tbs: TbsCertificate) -> DeltaCertificateDescriptor:
    found = [e for e in tbs.extensions if e.oid == OID_DELTA_DESCRIPTOR]
    if len(found) != 1:
        raise CertificateError(f"expected exactly one delta descriptor, found {len(found)}")
    return DeltaCertificateDescriptor.from_extension(found[0])


def reconstruct_delta(outer: Certificate) -> Certificate:
    """Rebuild the inner certificate embedded in ``outer``."""
    d = extract_descriptor(outer.tbs)
    base = outer.tbs.without_extension(OID_DELTA_DESCRIPTOR)
    tbs = TbsCertificate(
        serial=d.serial,
        signature_alg=d.signature_alg if d.signature_alg is not None else base.signature_alg,
        issuer=d.issuer if d.issuer is not None else base.issuer,
        validity=d.validity if d.validity is not None else base.validity,
        subject=d.subject if d.subject is not None else base.subject,
        spki=d.spki,
        extensions=d.extensions if d.extensions is not None else base.extensions,
    )
    return Certificate(tbs, tbs.signature_alg, d.sig)


def chameleon_issue(subject: Name, subject_classical: SubjectPublicKeyInfo, subject_pqc: SubjectPublicKeyInfo,
                    issuer: Name, ca_classical: KeyPair, ca_pqc: KeyPair, *,
                    serial: int, inner_serial: int, validity: Validity,
                    key_usage: Iterable[str] = ("digitalSignature",),
                    inner_validity: Optional[Validity] = None,
                    inner_key_usage: Optional[Iterable[str]] = None,
                    inner_subject: Optional[Name] = None,
                    providers: Optional[Providers] = None,
                    registry: Optional[Registry] = None) -> tuple:
    """Issue ``(outer, inner)``: the inner certificate is signed first, then the outer one embeds it.

    ``inner_*`` overrides let the inner certificate differ from the outer
    one; by default only the key, signature algorithm and serial differ.
    """
    registry = registry or builtin_registry()
    classical_alg = registry.get(ca_classical.algorithm)
    pqc_alg = registry.get(ca_pqc.algorithm)
    if not classical_alg.is_classical or classical_alg.role is not Role.SIGNATURE:
        raise CertificateError(f"{classical_alg.name} is not a classical signature algorithm")
    if pqc_alg.is_classical or pqc_alg.role is not Role.SIGNATURE:
        raise CertificateError(f"{pqc_alg.name} is not a post-quantum signature algorithm")
    if serial == inner_serial:
        raise CertificateError("inner and outer serials must differ")

    inner_tbs = TbsCertificate(
        inner_serial, pqc_alg.oid, issuer, inner_validity or validity, inner_subject or subject, subject_pqc,
        (key_usage_extension(inner_key_usage if inner_key_usage is not None else key_usage),))
    inner = sign_tbs(inner_tbs, ca_pqc, providers, registry)

    outer_base = TbsCertificate(serial, classical_alg.oid, issuer, validity, subject, subject_classical,
                                (key_usage_extension(key_usage),))
    descriptor = build_descriptor(inner, outer_base)
    outer_tbs = TbsCertificate(serial, classical_alg.oid, issuer, validity, subject, subject_classical,
                               outer_base.extensions + (descriptor.to_extension(),))
    outer = sign_tbs(outer_tbs, ca_classical, providers, registry)
    return outer, inner


def chameleon_verify(outer: Certificate, ca_classical_pk: bytes, ca_pqc_pk: bytes, profile: VerifierProfile, *,
                     at: datetime.datetime, providers: Optional[Providers] = None,
                     registry: Optional[Registry] = None) -> Verdict:
    """Legacy verifiers check the outer certificate only; PQC-aware ones also rebuild and check the inner one."""
    profile = VerifierProfile(profile)
    verdict = verify(outer, ca_classical_pk, profile, at=at, providers=providers, registry=registry)
    if not verdict or profile is VerifierProfile.LEGACY:
        return verdict
    try:
        inner = reconstruct_delta(outer)
    except CertificateError:
        return reject(Reason.MALFORMED_DELTA)
    return verify(inner, ca_pqc_pk, profile, at=at, providers=providers, registry=registry)
