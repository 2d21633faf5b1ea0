"""Certificate model, DER (de)serialisation, issuance and verification.

Only the fields the hybrid schemes need are modelled: a CN-only name,
validity, one SubjectPublicKeyInfo, and a list of extensions of which only
keyUsage is interpreted here.
"""

from __future__ import annotations

import base64
import binascii
import datetime
import enum
import re
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Union

from . import der
from .der import CONTEXT, DerDecodeError, DerValue, Oid
from .providers import (
    KeyPair,
    NoProviderError,
    ProviderError,
    Providers,
    UnknownAlgorithmError,
    get_provider,
)
from .registry import EXTENSION_ARC, AlgorithmId, Registry, Role, builtin_registry

UTC = datetime.timezone.utc

OID_COMMON_NAME = Oid("2.5.4.3")
OID_KEY_USAGE = Oid("2.5.29.15")
OID_EXTENSION_REQUEST = Oid("1.2.840.113549.1.9.14")
# placeholder identifiers for the hybrid extensions
OID_ALT_SPKI = Oid(f"{EXTENSION_ARC}.1")
OID_DELTA_DESCRIPTOR = Oid(f"{EXTENSION_ARC}.2")
# marks a CSR whose key cannot sign (KEM), so it carries no proof of possession
OID_NO_POP = Oid("1.3.9999.4.1")

CERT_LABEL = "CERTIFICATE"
CSR_LABEL = "CERTIFICATE REQUEST"

DEFAULT_VALIDITY_DAYS = 365

KEY_USAGE_BITS = {
    "digitalSignature": 0,
    "nonRepudiation": 1,
    "keyEncipherment": 2,
    "dataEncipherment": 3,
    "keyAgreement": 4,
    "keyCertSign": 5,
    "cRLSign": 6,
    "encipherOnly": 7,
    "decipherOnly": 8,
}


class CertificateError(ValueError):
    pass


class InvalidCsrError(CertificateError):
    pass


class PemError(ValueError):
    pass


# -- model -------------------------------------------------------------------


@dataclass(frozen=True)
class Name:
    common_name: str

    def __post_init__(self) -> None:
        if not self.common_name:
            raise CertificateError("common name must be non-empty")

    def __str__(self) -> str:
        return f"CN={self.common_name}"

    def to_der_value(self) -> DerValue:
        atv = DerValue.sequence(DerValue.oid(OID_COMMON_NAME), DerValue.utf8(self.common_name))
        return DerValue.sequence(DerValue.set(atv))

    @classmethod
    def from_der_value(cls, v: DerValue) -> "Name":
        try:
            (rdn,) = v.expect(der.SEQUENCE).children
            (atv,) = rdn.expect(der.SET).children
            oid, value = atv.expect(der.SEQUENCE).children
        except ValueError:
            raise CertificateError("only single-RDN CN names are supported") from None
        if oid.as_oid() != OID_COMMON_NAME:
            raise CertificateError(f"unsupported name attribute {oid.as_oid()}")
        return cls(value.as_str())


def _utc_seconds(t: datetime.datetime) -> datetime.datetime:
    if t.tzinfo is None:
        raise CertificateError("timestamps must be timezone-aware (UTC)")
    return t.astimezone(UTC).replace(microsecond=0)


@dataclass(frozen=True)
class Validity:
    not_before: datetime.datetime
    not_after: datetime.datetime

    def __post_init__(self) -> None:
        object.__setattr__(self, "not_before", _utc_seconds(self.not_before))
        object.__setattr__(self, "not_after", _utc_seconds(self.not_after))
        if not self.not_before < self.not_after:
            raise CertificateError("not_before must precede not_after")

    @classmethod
    def starting(cls, at: datetime.datetime, days: int = DEFAULT_VALIDITY_DAYS) -> "Validity":
        at = _utc_seconds(at)
        return cls(at, at + datetime.timedelta(days=days))

    def contains(self, at: datetime.datetime) -> bool:
        return self.not_before <= at <= self.not_after

    def to_der_value(self) -> DerValue:
        return DerValue.sequence(DerValue.time(self.not_before), DerValue.time(self.not_after))

    @classmethod
    def from_der_value(cls, v: DerValue) -> "Validity":
        nb, na = _exactly(v.expect(der.SEQUENCE).children, 2, "Validity")
        return cls(nb.as_time(), na.as_time())


def algorithm_identifier(oid: Oid) -> DerValue:
    return DerValue.sequence(DerValue.oid(oid))


def parse_algorithm_identifier(v: DerValue) -> Oid:
    (oid,) = _exactly(v.expect(der.SEQUENCE).children, 1, "AlgorithmIdentifier")
    return oid.as_oid()


@dataclass(frozen=True)
class SubjectPublicKeyInfo:
    algorithm: Oid
    key: bytes

    def to_der_value(self) -> DerValue:
        return DerValue.sequence(algorithm_identifier(self.algorithm), DerValue.bit_string(self.key))

    @classmethod
    def from_der_value(cls, v: DerValue) -> "SubjectPublicKeyInfo":
        alg, key = _exactly(v.expect(der.SEQUENCE).children, 2, "SubjectPublicKeyInfo")
        return cls(parse_algorithm_identifier(alg), key.expect(der.BIT_STRING).as_bytes())

    @classmethod
    def for_key(cls, keypair: KeyPair, registry: Optional[Registry] = None) -> "SubjectPublicKeyInfo":
        return cls(alg_oid(keypair.algorithm, registry), keypair.public_key)


@dataclass(frozen=True)
class Extension:
    oid: Oid
    critical: bool
    value: bytes

    def to_der_value(self) -> DerValue:
        items = [DerValue.oid(self.oid)]
        if self.critical:
            items.append(DerValue.boolean(True))
        items.append(DerValue.octet_string(self.value))
        return DerValue.sequence(*items)

    @classmethod
    def from_der_value(cls, v: DerValue) -> "Extension":
        items = v.expect(der.SEQUENCE).children
        if len(items) == 2:
            oid, value = items
            critical = False
        elif len(items) == 3:
            oid, crit, value = items
            critical = crit.as_bool()
            if not critical:
                # DEFAULT FALSE must be omitted in DER
                raise CertificateError("explicit critical=FALSE is not DER")
        else:
            raise CertificateError("malformed Extension")
        return cls(oid.as_oid(), critical, value.expect(der.OCTET_STRING).content)


def extensions_to_der_value(extensions: Iterable[Extension]) -> DerValue:
    return DerValue.sequence(*(e.to_der_value() for e in extensions))


def extensions_from_der_value(v: DerValue) -> tuple:
    return tuple(Extension.from_der_value(e) for e in v.expect(der.SEQUENCE).children)


@dataclass(frozen=True)
class TbsCertificate:
    serial: int
    signature_alg: Oid
    issuer: Name
    validity: Validity
    subject: Name
    spki: SubjectPublicKeyInfo
    extensions: tuple = ()

    def __post_init__(self) -> None:
        if self.serial <= 0:
            raise CertificateError("serial must be positive")
        object.__setattr__(self, "extensions", tuple(self.extensions))
        oids = [e.oid for e in self.extensions]
        if len(set(oids)) != len(oids):
            raise CertificateError("duplicate extension OID")

    def extension(self, oid: Oid) -> Optional[Extension]:
        for ext in self.extensions:
            if ext.oid == oid:
                return ext
        return None

    def without_extension(self, oid: Oid) -> "TbsCertificate":
        return replace(self, extensions=tuple(e for e in self.extensions if e.oid != oid))

    def to_der_value(self) -> DerValue:
        items = [
            DerValue.explicit(0, DerValue.integer(2)),  # v3
            DerValue.integer(self.serial),
            algorithm_identifier(self.signature_alg),
            self.issuer.to_der_value(),
            self.validity.to_der_value(),
            self.subject.to_der_value(),
            self.spki.to_der_value(),
        ]
        if self.extensions:
            items.append(DerValue.explicit(3, extensions_to_der_value(self.extensions)))
        return DerValue.sequence(*items)

    def to_der(self) -> bytes:
        return der.encode_value(self.to_der_value())

    @classmethod
    def from_der_value(cls, v: DerValue) -> "TbsCertificate":
        items = list(v.expect(der.SEQUENCE).children)
        if len(items) not in (7, 8):
            raise CertificateError("malformed TBSCertificate")
        (version,) = items[0].expect(0, CONTEXT).children
        if version.as_int() != 2:
            raise CertificateError("only v3 certificates are supported")
        extensions: tuple = ()
        if len(items) == 8:
            (inner,) = items[7].expect(3, CONTEXT).children
            extensions = extensions_from_der_value(inner)
            if not extensions:
                raise CertificateError("empty extensions must be omitted")
        return cls(
            serial=items[1].as_int(),
            signature_alg=parse_algorithm_identifier(items[2]),
            issuer=Name.from_der_value(items[3]),
            validity=Validity.from_der_value(items[4]),
            subject=Name.from_der_value(items[5]),
            spki=SubjectPublicKeyInfo.from_der_value(items[6]),
            extensions=extensions,
        )

    @classmethod
    def from_der(cls, data: bytes) -> "TbsCertificate":
        return _parse(cls, data)


@dataclass(frozen=True)
class Certificate:
    tbs: TbsCertificate
    sig_alg: Oid
    signature: bytes

    def to_der_value(self) -> DerValue:
        return DerValue.sequence(
            self.tbs.to_der_value(), algorithm_identifier(self.sig_alg), DerValue.bit_string(self.signature))

    def to_der(self) -> bytes:
        return der.encode_value(self.to_der_value())

    def to_pem(self) -> str:
        return pem_encode(CERT_LABEL, self.to_der())

    @classmethod
    def from_der_value(cls, v: DerValue) -> "Certificate":
        tbs, alg, sig = _exactly(v.expect(der.SEQUENCE).children, 3, "Certificate")
        return cls(TbsCertificate.from_der_value(tbs), parse_algorithm_identifier(alg),
                   sig.expect(der.BIT_STRING).as_bytes())

    @classmethod
    def from_der(cls, data: bytes) -> "Certificate":
        return _parse(cls, data)

    @classmethod
    def from_pem(cls, text: str) -> "Certificate":
        label, data = pem_decode(text)
        if label != CERT_LABEL:
            raise PemError(f"expected {CERT_LABEL}, got {label}")
        return cls.from_der(data)


def encode_tbs(tbs: TbsCertificate) -> bytes:
    return tbs.to_der()


def _exactly(items: tuple, n: int, what: str) -> tuple:
    if len(items) != n:
        raise CertificateError(f"malformed {what}: expected {n} elements, got {len(items)}")
    return items


def _parse(cls, data: bytes):
    try:
        return cls.from_der_value(der.decode(data))
    except CertificateError:
        raise
    except ValueError as exc:
        raise CertificateError(f"invalid {cls.__name__}: {exc}") from None


def alg_oid(name: str, registry: Optional[Registry] = None) -> Oid:
    registry = registry or builtin_registry()
    alg = registry.lookup(name)
    if alg is None:
        raise UnknownAlgorithmError(f"unknown algorithm {name!r}")
    return alg.oid


# -- keyUsage ----------------------------------------------------------------


def key_usage_extension(usages: Iterable[str]) -> Extension:
    usages = frozenset(usages)
    if not usages:
        raise CertificateError("keyUsage needs at least one usage")
    unknown = usages - KEY_USAGE_BITS.keys()
    if unknown:
        raise CertificateError(f"unknown key usages: {sorted(unknown)}")
    n_bits = max(KEY_USAGE_BITS[u] for u in usages) + 1
    n_bytes = (n_bits + 7) // 8
    value = 0
    for u in usages:
        value |= 1 << (8 * n_bytes - 1 - KEY_USAGE_BITS[u])
    bits = DerValue.bit_string(value.to_bytes(n_bytes, "big"), 8 * n_bytes - n_bits)
    return Extension(OID_KEY_USAGE, True, der.encode_value(bits))


def parse_key_usage(ext: Extension) -> frozenset:
    v = der.decode(ext.value).expect(der.BIT_STRING)
    payload = v.content[1:]
    value = int.from_bytes(payload, "big") if payload else 0
    total = 8 * len(payload)
    return frozenset(name for name, bit in KEY_USAGE_BITS.items()
                     if bit < total and value >> (total - 1 - bit) & 1)


def default_key_usage(alg: AlgorithmId) -> frozenset:
    if alg.role is Role.KEM:
        return frozenset({"dataEncipherment"})
    return frozenset({"digitalSignature"})


# -- CSR ---------------------------------------------------------------------


@dataclass(frozen=True)
class CertificateSigningRequest:
    subject: Name
    spki: SubjectPublicKeyInfo
    requested_key_usage: frozenset = frozenset()
    pop_signature: bytes = b""
    # False for keys that cannot sign (KEM); such requests carry an empty pop
    has_pop: bool = True

    def info_der_value(self) -> DerValue:
        attrs = []
        if self.requested_key_usage:
            ext = key_usage_extension(self.requested_key_usage)
            attrs.append(DerValue.sequence(
                DerValue.oid(OID_EXTENSION_REQUEST), DerValue.set(extensions_to_der_value([ext]))))
        return DerValue.sequence(
            DerValue.integer(0), self.subject.to_der_value(), self.spki.to_der_value(),
            DerValue(CONTEXT, 0, True, tuple(attrs)))

    def info_bytes(self) -> bytes:
        return der.encode_value(self.info_der_value())

    def to_der(self) -> bytes:
        sig_alg = self.spki.algorithm if self.has_pop else OID_NO_POP
        return der.encode_value(DerValue.sequence(
            self.info_der_value(), algorithm_identifier(sig_alg), DerValue.bit_string(self.pop_signature)))

    def to_pem(self) -> str:
        return pem_encode(CSR_LABEL, self.to_der())

    @classmethod
    def from_der(cls, data: bytes) -> "CertificateSigningRequest":
        try:
            info, alg, sig = _exactly(der.decode(data).expect(der.SEQUENCE).children, 3, "CSR")
            version, subject, spki, attrs = _exactly(info.expect(der.SEQUENCE).children, 4, "CSR info")
            if version.as_int() != 0:
                raise CertificateError("unsupported CSR version")
            usage: frozenset = frozenset()
            for attr in attrs.expect(0, CONTEXT).children:
                oid, values = _exactly(attr.expect(der.SEQUENCE).children, 2, "Attribute")
                if oid.as_oid() == OID_EXTENSION_REQUEST:
                    (exts,) = values.expect(der.SET).children
                    for ext in extensions_from_der_value(exts):
                        if ext.oid == OID_KEY_USAGE:
                            usage = parse_key_usage(ext)
            spki_v = SubjectPublicKeyInfo.from_der_value(spki)
            sig_alg = parse_algorithm_identifier(alg)
            has_pop = sig_alg != OID_NO_POP
            if has_pop and sig_alg != spki_v.algorithm:
                raise CertificateError("CSR signature algorithm differs from its key algorithm")
            return cls(Name.from_der_value(subject), spki_v, usage,
                       sig.expect(der.BIT_STRING).as_bytes(), has_pop)
        except CertificateError:
            raise
        except ValueError as exc:
            raise CertificateError(f"invalid CSR: {exc}") from None

    @classmethod
    def from_pem(cls, text: str) -> "CertificateSigningRequest":
        label, data = pem_decode(text)
        if label != CSR_LABEL:
            raise PemError(f"expected {CSR_LABEL}, got {label}")
        return cls.from_der(data)


def create_csr(subject: Name, keypair: KeyPair, key_usage: Optional[Iterable[str]] = None,
               providers: Optional[Providers] = None,
               registry: Optional[Registry] = None) -> CertificateSigningRequest:
    """Build a CSR; signature-capable keys sign the request body (proof of possession)."""
    registry = registry or builtin_registry()
    alg = registry.get(keypair.algorithm)
    usage = frozenset(key_usage) if key_usage is not None else default_key_usage(alg)
    csr = CertificateSigningRequest(subject, SubjectPublicKeyInfo(alg.oid, keypair.public_key),
                                    usage, b"", has_pop=alg.role is not Role.KEM)
    if not csr.has_pop:
        return csr
    pop = get_provider(alg.name, providers, registry).sign(keypair.private_key, csr.info_bytes())
    return replace(csr, pop_signature=pop)


def verify_csr(csr: CertificateSigningRequest, providers: Optional[Providers] = None,
               registry: Optional[Registry] = None) -> bool:
    registry = registry or builtin_registry()
    alg = registry.lookup_by_oid(csr.spki.algorithm)
    if alg is None:
        return False
    if alg.role is Role.KEM:
        return not csr.has_pop and not csr.pop_signature
    if not csr.has_pop:
        return False
    try:
        provider = get_provider(alg.name, providers, registry)
    except ProviderError:
        return False
    return provider.verify(csr.spki.key, csr.info_bytes(), csr.pop_signature)


# -- issuance ----------------------------------------------------------------


class SerialCounter:
    """Thread-safe monotonically increasing serial numbers."""

    def __init__(self, start: int = 1):
        if start <= 0:
            raise ValueError("serials start at 1 or above")
        self._next = start
        self._lock = threading.Lock()

    def next(self) -> int:
        with self._lock:
            n = self._next
            self._next += 1
            return n


def sign_tbs(tbs: TbsCertificate, keypair: KeyPair, providers: Optional[Providers] = None,
             registry: Optional[Registry] = None) -> Certificate:
    provider = get_provider(keypair.algorithm, providers, registry)
    return Certificate(tbs, tbs.signature_alg, provider.sign(keypair.private_key, encode_tbs(tbs)))


def issue(csr: CertificateSigningRequest, issuer_name: Name, issuer_keypair: KeyPair, *,
          serial: int, validity: Validity, key_usage: Optional[Iterable[str]] = None,
          providers: Optional[Providers] = None, registry: Optional[Registry] = None) -> Certificate:
    """Issue a single-algorithm certificate for ``csr``.

    The CA algorithm is the one of ``issuer_keypair``. Without an explicit
    ``key_usage`` the CSR's request is used, falling back to
    digitalSignature for signing keys and dataEncipherment for KEM keys.
    """
    registry = registry or builtin_registry()
    ca_alg = registry.lookup(issuer_keypair.algorithm)
    if ca_alg is None:
        raise UnknownAlgorithmError(f"unknown algorithm {issuer_keypair.algorithm!r}")
    if ca_alg.role is Role.KEM:
        raise CertificateError(f"{ca_alg.name} cannot sign certificates")
    if ca_alg.role is Role.SIGNATURE and not ca_alg.has_provider:
        raise NoProviderError(f"no built-in provider for {ca_alg.name}")
    subject_alg = registry.lookup_by_oid(csr.spki.algorithm)
    if subject_alg is None:
        raise UnknownAlgorithmError(f"unknown subject key algorithm {csr.spki.algorithm}")
    if not verify_csr(csr, providers, registry):
        raise InvalidCsrError("CSR proof of possession does not verify")
    if key_usage is None:
        key_usage = csr.requested_key_usage or default_key_usage(subject_alg)
    tbs = TbsCertificate(serial, ca_alg.oid, issuer_name, validity, csr.subject, csr.spki,
                         (key_usage_extension(key_usage),))
    return sign_tbs(tbs, issuer_keypair, providers, registry)


def self_signed(name: Name, keypair: KeyPair, *, serial: int, validity: Validity,
                providers: Optional[Providers] = None, registry: Optional[Registry] = None) -> Certificate:
    tbs = TbsCertificate(serial, alg_oid(keypair.algorithm, registry), name, validity, name,
                         SubjectPublicKeyInfo.for_key(keypair, registry),
                         (key_usage_extension({"digitalSignature", "keyCertSign"}),))
    return sign_tbs(tbs, keypair, providers, registry)


@dataclass
class CertificateAuthority:
    """A single self-signed CA with one or more signing keys."""

    name: Name
    keys: dict
    serials: SerialCounter = field(default_factory=SerialCounter)

    @classmethod
    def from_keys(cls, name: Name, *keypairs: KeyPair, first_serial: int = 1) -> "CertificateAuthority":
        return cls(name, {k.algorithm: k for k in keypairs}, SerialCounter(first_serial))

    def key(self, algorithm: str) -> KeyPair:
        try:
            return self.keys[algorithm]
        except KeyError:
            raise CertificateError(f"CA {self.name} holds no {algorithm} key") from None

    def public_keys(self) -> dict:
        return {alg: kp.public_key for alg, kp in self.keys.items()}


# -- verification --------------------------------------------------------------


class VerifierProfile(str, enum.Enum):
    LEGACY = "legacy"
    PQC_AWARE = "pqc-aware"

    def knows(self, alg: Optional[AlgorithmId]) -> bool:
        if alg is None or alg.role is Role.KEM:
            return False
        if self is VerifierProfile.LEGACY:
            return alg.role is Role.SIGNATURE and alg.is_classical
        return True

    @property
    def known_extensions(self) -> frozenset:
        if self is VerifierProfile.LEGACY:
            return frozenset({OID_KEY_USAGE})
        return frozenset({OID_KEY_USAGE, OID_ALT_SPKI, OID_DELTA_DESCRIPTOR})


class Reason(str, enum.Enum):
    UNKNOWN_ALGORITHM = "unknown-algorithm"
    BAD_SIGNATURE = "bad-signature"
    EXPIRED = "expired"
    UNKNOWN_CRITICAL_EXTENSION = "unknown-critical-extension"
    MALFORMED_ALT = "malformed-alt"
    MALFORMED_DELTA = "malformed-delta"
    MALFORMED = "malformed-certificate"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: Optional[Reason] = None

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        return "accept" if self.accepted else f"reject({self.reason.value})"


ACCEPT = Verdict(True)


def reject(reason: Reason) -> Verdict:
    return Verdict(False, reason)


def verify(cert: Certificate, issuer_public_key: bytes, profile: VerifierProfile, *,
           at: datetime.datetime, providers: Optional[Providers] = None,
           registry: Optional[Registry] = None) -> Verdict:
    """Check one certificate's signature, extensions and validity window.

    Unknown non-critical extensions are ignored; unknown critical ones reject.
    """
    registry = registry or builtin_registry()
    profile = VerifierProfile(profile)
    if cert.tbs.signature_alg != cert.sig_alg:
        return reject(Reason.BAD_SIGNATURE)
    alg = registry.lookup_by_oid(cert.sig_alg)
    if not profile.knows(alg):
        return reject(Reason.UNKNOWN_ALGORITHM)
    known = profile.known_extensions
    if any(e.critical and e.oid not in known for e in cert.tbs.extensions):
        return reject(Reason.UNKNOWN_CRITICAL_EXTENSION)
    try:
        provider = get_provider(alg.name, providers, registry)
    except (NoProviderError, UnknownAlgorithmError):
        return reject(Reason.UNKNOWN_ALGORITHM)
    if not provider.verify(issuer_public_key, encode_tbs(cert.tbs), cert.signature):
        return reject(Reason.BAD_SIGNATURE)
    if not cert.tbs.validity.contains(_utc_seconds(at)):
        return reject(Reason.EXPIRED)
    return ACCEPT


# -- PEM ---------------------------------------------------------------------

_PEM_RE = re.compile(
    r"-----BEGIN (?P<label>[A-Z ]+)-----\r?\n(?P<body>.*?)-----END (?P<end>[A-Z ]+)-----", re.S)


def pem_encode(label: str, data: bytes) -> str:
    if label not in (CERT_LABEL, CSR_LABEL):
        raise PemError(f"unsupported PEM label {label!r}")
    body = base64.b64encode(data).decode("ascii")
    lines = [f"-----BEGIN {label}-----"]
    lines += [body[i:i + 64] for i in range(0, len(body), 64)]
    lines.append(f"-----END {label}-----")
    return "\n".join(lines) + "\n"


def pem_decode(text: Union[str, bytes]) -> tuple:
    """Return ``(label, der_bytes)`` for the first PEM block in ``text``."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    m = _PEM_RE.search(text)
    if m is None:
        raise PemError("no PEM block found")
    if m["label"] != m["end"]:
        raise PemError("PEM BEGIN/END labels differ")
    body = "".join(m["body"].split())
    try:
        data = base64.b64decode(body, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise PemError(f"invalid base64 in PEM body: {exc}") from None
    return m["label"], data


def load_certificate(path: Union[str, Path]) -> Certificate:
    """Read a PEM or raw DER certificate file."""
    data = Path(path).read_bytes()
    if data.lstrip().startswith(b"-----BEGIN"):
        return Certificate.from_pem(data.decode("ascii"))
    return Certificate.from_der(data)


__all__ = [
    "Name", "Validity", "SubjectPublicKeyInfo", "Extension", "TbsCertificate", "Certificate",
    "CertificateSigningRequest", "CertificateAuthority", "SerialCounter",
    "VerifierProfile", "Verdict", "Reason", "ACCEPT", "reject",
    "CertificateError", "InvalidCsrError", "PemError", "DerDecodeError",
    "key_usage_extension", "parse_key_usage", "default_key_usage", "encode_tbs",
    "create_csr", "verify_csr", "issue", "self_signed", "sign_tbs", "verify",
    "pem_encode", "pem_decode", "load_certificate", "alg_oid",
    "OID_KEY_USAGE", "OID_ALT_SPKI", "OID_DELTA_DESCRIPTOR", "OID_COMMON_NAME",
]
