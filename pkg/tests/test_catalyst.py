import time

import pytest

from pqhybrid import der
from pqhybrid.catalyst import AltSpki, build_pre_tbs, catalyst_issue, catalyst_verify, extract_alt_spki
from pqhybrid.harness import issue_scheme
from pqhybrid.providers import get_provider, mock_keygen, with_latency
from pqhybrid.registry import ECDSA_WITH_SHA256, builtin_registry
from pqhybrid.x509 import (
    OID_ALT_SPKI,
    Certificate,
    CertificateError,
    Extension,
    Reason,
    TbsCertificate,
    VerifierProfile,
    encode_tbs,
    key_usage_extension,
    sign_tbs,
)

REG = builtin_registry()
LEGACY, PQC = VerifierProfile.LEGACY, VerifierProfile.PQC_AWARE


def verify_both(m, cert, profile, at):
    return catalyst_verify(cert, m.ca_classical.public_key, m.ca_pqc.public_key, profile, at=at)


def test_structure(materials, issued):
    cert = issued["catalyst"]
    assert cert.tbs.spki.algorithm == ECDSA_WITH_SHA256 and cert.sig_alg == ECDSA_WITH_SHA256
    assert 70 <= len(cert.signature) <= 72
    ext = cert.tbs.extension(OID_ALT_SPKI)
    assert not ext.critical
    alt = AltSpki.from_extension(ext)
    assert alt.alg == REG["ML-DSA-44"].oid
    assert alt.key == materials.subject_pqc.public_key
    assert len(alt.sig) == 2420


def test_pre_tbs_matches_independent_build(materials, issued):
    cert = issued["catalyst"]
    m = materials
    independent = TbsCertificate(cert.tbs.serial, ECDSA_WITH_SHA256, m.ca_name, m.validity, m.subject,
                                 m.spki(m.subject_classical), (key_usage_extension({"digitalSignature"}),))
    assert build_pre_tbs(cert.tbs) == encode_tbs(independent)
    alt = extract_alt_spki(cert.tbs)
    assert get_provider("ML-DSA-44").verify(m.ca_pqc.public_key, encode_tbs(independent), alt.sig)


def test_pre_tbs_requires_exactly_one(issued):
    tbs = issued["catalyst"].tbs
    with pytest.raises(CertificateError):
        build_pre_tbs(tbs.without_extension(OID_ALT_SPKI))
    doubled = tbs.without_extension(OID_ALT_SPKI)
    ext = tbs.extension(OID_ALT_SPKI)
    # construction forbids duplicate OIDs, so build the invalid value directly
    object.__setattr__(doubled, "extensions", doubled.extensions + (ext, ext))
    with pytest.raises(CertificateError):
        build_pre_tbs(doubled)


def test_verify_profiles(materials, issued, clock):
    cert = issued["catalyst"]
    assert verify_both(materials, cert, LEGACY, clock)
    assert verify_both(materials, cert, PQC, clock)


def _resigned(m, tbs):
    return sign_tbs(tbs, m.ca_classical)


def _replace_alt(tbs, alt_ext):
    base = tbs.without_extension(OID_ALT_SPKI)
    return TbsCertificate(base.serial, base.signature_alg, base.issuer, base.validity, base.subject, base.spki,
                          base.extensions + (alt_ext,))


def test_tampered_alt_sig(materials, issued, clock):
    cert = issued["catalyst"]
    alt = extract_alt_spki(cert.tbs)
    bad = AltSpki(alt.alg, alt.key, bytes([alt.sig[0] ^ 1]) + alt.sig[1:])
    tampered = _resigned(materials, _replace_alt(cert.tbs, bad.to_extension()))
    assert verify_both(materials, tampered, LEGACY, clock)
    assert verify_both(materials, tampered, PQC, clock).reason is Reason.BAD_SIGNATURE


def test_malformed_alt(materials, issued, clock):
    cert = issued["catalyst"]
    tampered = _resigned(materials, _replace_alt(cert.tbs, Extension(OID_ALT_SPKI, False, b"\x30\x00")))
    assert verify_both(materials, tampered, LEGACY, clock)
    assert verify_both(materials, tampered, PQC, clock).reason is Reason.MALFORMED_ALT


def test_alt_with_classical_alg_rejected(materials, issued, clock):
    cert = issued["catalyst"]
    alt = extract_alt_spki(cert.tbs)
    weird = AltSpki(ECDSA_WITH_SHA256, alt.key, alt.sig)
    tampered = _resigned(materials, _replace_alt(cert.tbs, weird.to_extension()))
    assert verify_both(materials, tampered, PQC, clock).reason is Reason.UNKNOWN_ALGORITHM


def test_outer_tamper_rejected_by_both(materials, issued, clock):
    cert = issued["catalyst"]
    bad = Certificate(cert.tbs, cert.sig_alg, bytes([cert.signature[0] ^ 1]) + cert.signature[1:])
    assert verify_both(materials, bad, LEGACY, clock).reason is Reason.BAD_SIGNATURE
    assert verify_both(materials, bad, PQC, clock).reason is Reason.BAD_SIGNATURE


def test_alt_spki_parse_errors():
    with pytest.raises(CertificateError):
        AltSpki.from_extension(Extension(OID_ALT_SPKI, False, b"\x02\x01\x00"))
    with pytest.raises(CertificateError):
        AltSpki.from_extension(Extension(der.Oid("1.2.3"), False, b""))


def test_rejects_mixed_pqc(materials):
    m = materials
    other = mock_keygen("ML-DSA-65", bytes(32))
    with pytest.raises(CertificateError):
        catalyst_issue(m.subject, m.spki(m.subject_classical), m.spki(other), m.ca_name, m.ca_classical,
                       m.ca_pqc, serial=1, validity=m.validity)
    with pytest.raises(CertificateError):
        catalyst_issue(m.subject, m.spki(m.subject_classical), m.spki(m.subject_pqc), m.ca_name, m.ca_pqc,
                       m.ca_classical, serial=1, validity=m.validity)


def test_sequential_wall_time(materials):
    slow = {n: with_latency(get_provider(n), 50) for n in ("ML-DSA-44", "ECDSA-P256")}
    t = time.perf_counter()
    issue_scheme("catalyst", materials, providers=slow)
    assert time.perf_counter() - t >= 0.100
