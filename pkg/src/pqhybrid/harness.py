"""Benchmarks comparing the four certificate shapes.

* sizes: DER length per scheme (expected composite < catalyst < chameleon)
* times: median issuance wall time with injected per-sign latency
  (composite signs both components in parallel; catalyst and chameleon
  must sign sequentially)
* compatibility: which schemes a legacy or PQC-aware verifier accepts
"""

from __future__ import annotations

import datetime
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional

from .catalyst import catalyst_issue, catalyst_verify
from .chameleon import chameleon_issue, chameleon_verify
from .composite import composite_issue, composite_verify
from .providers import KeyPair, Providers, derive_seed, get_provider, with_latency
from .registry import COMPOSITE_MLDSA44_P256, Registry, Role, builtin_registry
from .x509 import (
    OID_ALT_SPKI,
    OID_DELTA_DESCRIPTOR,
    Certificate,
    CertificateSigningRequest,
    Name,
    SubjectPublicKeyInfo,
    Validity,
    Verdict,
    VerifierProfile,
    create_csr,
    issue,
    verify,
)

SCHEMES = ("pure", "composite", "catalyst", "chameleon")
PROFILES = (VerifierProfile.LEGACY, VerifierProfile.PQC_AWARE)

INNER_SERIAL_BASE = 1001

# qualitative cells of the migration comparison: True = accepted
EXPECTED_MATRIX = {
    ("pure", VerifierProfile.LEGACY): False,
    ("composite", VerifierProfile.LEGACY): False,
    ("catalyst", VerifierProfile.LEGACY): True,
    ("chameleon", VerifierProfile.LEGACY): True,
    ("pure", VerifierProfile.PQC_AWARE): True,
    ("composite", VerifierProfile.PQC_AWARE): True,
    ("catalyst", VerifierProfile.PQC_AWARE): True,
    ("chameleon", VerifierProfile.PQC_AWARE): True,
}


class BenchAssertionError(AssertionError):
    pass


@dataclass
class Materials:
    """Names, keys and validity shared by every scheme in one comparison."""

    clock: datetime.datetime
    ca_name: Name
    subject: Name
    ca_pqc: KeyPair
    ca_classical: KeyPair
    subject_pqc: KeyPair
    subject_classical: KeyPair
    validity: Validity
    # subject key of the pure certificate; a KEM key gives a dataEncipherment cert
    pure_subject: Optional[KeyPair] = None

    @property
    def ca_public_keys(self) -> dict:
        return {k.algorithm: k.public_key for k in (self.ca_pqc, self.ca_classical)}

    def spki(self, keypair: KeyPair, registry: Optional[Registry] = None) -> SubjectPublicKeyInfo:
        return SubjectPublicKeyInfo.for_key(keypair, registry)


def materials_from_seed(seed: bytes, clock: datetime.datetime, *, pqc: str = "ML-DSA-44",
                        classical: str = "ECDSA-P256", pure_alg: Optional[str] = None,
                        subject: str = "Alice", ca_name: str = "Test CA",
                        registry: Optional[Registry] = None) -> Materials:
    """Derive every key deterministically from one 32-byte master seed."""

    def key(role: str, alg: str) -> KeyPair:
        return get_provider(alg, registry=registry).keygen(derive_seed(seed, f"{role}:{alg}"))

    subject_pqc = key("subject", pqc)
    return Materials(
        clock=clock,
        ca_name=Name(ca_name),
        subject=Name(subject),
        ca_pqc=key("ca", pqc),
        ca_classical=key("ca", classical),
        subject_pqc=subject_pqc,
        subject_classical=key("subject", classical),
        validity=Validity.starting(clock),
        pure_subject=key("subject", pure_alg) if pure_alg and pure_alg != pqc else subject_pqc,
    )


def pure_csr(m: Materials, registry: Optional[Registry] = None) -> CertificateSigningRequest:
    return create_csr(m.subject, m.pure_subject or m.subject_pqc, registry=registry)


def issue_scheme(scheme: str, m: Materials, *, serial: int = 1, inner_serial: Optional[int] = None,
                 providers: Optional[Providers] = None, registry: Optional[Registry] = None,
                 concurrent: bool = True, csr: Optional[CertificateSigningRequest] = None) -> tuple:
    """Issue one certificate of ``scheme``; chameleon returns ``(outer, inner)``, others a 1-tuple."""
    if scheme == "pure":
        csr = csr or pure_csr(m, registry)
        return (issue(csr, m.ca_name, m.ca_pqc, serial=serial, validity=m.validity,
                      providers=providers, registry=registry),)
    if scheme == "composite":
        return (composite_issue(m.subject, m.spki(m.subject_pqc, registry), m.spki(m.subject_classical, registry),
                                m.ca_name, m.ca_pqc, m.ca_classical, serial=serial, validity=m.validity,
                                algorithm=COMPOSITE_MLDSA44_P256, providers=providers, registry=registry,
                                concurrent=concurrent),)
    if scheme == "catalyst":
        return (catalyst_issue(m.subject, m.spki(m.subject_classical, registry), m.spki(m.subject_pqc, registry),
                               m.ca_name, m.ca_classical, m.ca_pqc, serial=serial, validity=m.validity,
                               providers=providers, registry=registry),)
    if scheme == "chameleon":
        return chameleon_issue(m.subject, m.spki(m.subject_classical, registry), m.spki(m.subject_pqc, registry),
                               m.ca_name, m.ca_classical, m.ca_pqc, serial=serial,
                               inner_serial=inner_serial if inner_serial is not None else INNER_SERIAL_BASE + serial,
                               validity=m.validity, providers=providers, registry=registry)
    raise ValueError(f"unknown scheme {scheme!r}")


def detect_scheme(cert: Certificate, registry: Optional[Registry] = None) -> str:
    registry = registry or builtin_registry()
    alg = registry.lookup_by_oid(cert.sig_alg)
    if alg is not None and alg.role is Role.COMPOSITE:
        return "composite"
    if cert.tbs.extension(OID_DELTA_DESCRIPTOR) is not None:
        return "chameleon"
    if cert.tbs.extension(OID_ALT_SPKI) is not None:
        return "catalyst"
    return "pure"


def verify_scheme(scheme: str, cert: Certificate, ca_public_keys: dict, profile: VerifierProfile, *,
                  at: datetime.datetime, pqc: str = "ML-DSA-44", classical: str = "ECDSA-P256",
                  providers: Optional[Providers] = None, registry: Optional[Registry] = None) -> Verdict:
    """Dispatch to the scheme's verifier with the CA public keys keyed by algorithm name."""
    kw = dict(at=at, providers=providers, registry=registry)
    if scheme == "pure":
        return verify(cert, ca_public_keys[pqc], profile, **kw)
    if scheme == "composite":
        return composite_verify(cert, (ca_public_keys[pqc], ca_public_keys[classical]), profile, **kw)
    if scheme == "catalyst":
        return catalyst_verify(cert, ca_public_keys[classical], ca_public_keys[pqc], profile, **kw)
    if scheme == "chameleon":
        return chameleon_verify(cert, ca_public_keys[classical], ca_public_keys[pqc], profile, **kw)
    raise ValueError(f"unknown scheme {scheme!r}")


# -- reports -------------------------------------------------------------------


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    header = ("scheme", "metric", "value", "unit")

    def add(self, scheme: str, metric: str, value, unit: str) -> None:
        if any(r[0] == scheme and r[1] == metric for r in self.rows):
            raise ValueError(f"duplicate row {scheme}/{metric}")
        self.rows.append((scheme, metric, value, unit))

    def value(self, scheme: str, metric: str):
        for s, m, v, _ in self.rows:
            if s == scheme and m == metric:
                return v
        raise KeyError((scheme, metric))

    def table(self) -> tuple:
        def fmt(v):
            return f"{v:.3f}" if isinstance(v, float) else str(v)
        return self.header, [(s, m, fmt(v), u) for s, m, v, u in self.rows]

    def raise_for_failures(self) -> None:
        if self.failures:
            raise BenchAssertionError("; ".join(self.failures))


@dataclass
class CompatMatrix:
    cells: dict = field(default_factory=dict)

    header = ("scheme", "legacy", "pqc-aware")

    def accepted(self, scheme: str, profile) -> bool:
        return self.cells[(scheme, VerifierProfile(profile))].accepted

    def table(self) -> tuple:
        schemes = [s for s in SCHEMES if any(k[0] == s for k in self.cells)]
        return self.header, [(s,) + tuple(str(self.cells[(s, p)]) for p in PROFILES) for s in schemes]

    def mismatches(self, expected: dict = EXPECTED_MATRIX) -> list:
        return [f"{s}/{p.value}: expected {'accept' if want else 'reject'}, got {self.cells.get((s, p))}"
                for (s, p), want in expected.items()
                if (s, p) not in self.cells or self.cells[(s, p)].accepted != want]


def emit_table(header, rows, fmt: str = "csv") -> str:
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(str(c) for c in r) for r in rows]
    elif fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join(" --- " for _ in header) + "|"]
        lines += ["| " + " | ".join(str(c) for c in r) + " |" for r in rows]
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return "\n".join(lines) + "\n"


def emit_report(report, fmt: str = "csv") -> str:
    header, rows = report.table()
    return emit_table(header, rows, fmt)


# -- benchmarks ----------------------------------------------------------------


def bench_sizes(m: Materials, registry: Optional[Registry] = None) -> BenchReport:
    report = BenchReport()
    for scheme in SCHEMES:
        certs = issue_scheme(scheme, m, registry=registry)
        report.add(scheme, "der_length", len(certs[0].to_der()), "bytes")
    size = {s: report.value(s, "der_length") for s in SCHEMES}
    if not size["composite"] < size["catalyst"] < size["chameleon"]:
        report.failures.append(
            f"size ordering violated: composite={size['composite']} catalyst={size['catalyst']} "
            f"chameleon={size['chameleon']}")
    if not size["pure"] < size["composite"]:
        report.failures.append(f"pure ({size['pure']}) not shorter than composite ({size['composite']})")
    return report


def _median_ms(fn, repetitions: int) -> float:
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(samples)


def latency_providers(latency_ms: float, names=("ML-DSA-44", "ECDSA-P256"),
                      registry: Optional[Registry] = None) -> dict:
    return {n: with_latency(get_provider(n, registry=registry), latency_ms) for n in names}


def bench_times(m: Materials, latency_ms: float = 50.0, repetitions: int = 5,
                registry: Optional[Registry] = None) -> BenchReport:
    """Median issuance time per scheme with ``latency_ms`` added to every sign call."""
    if latency_ms <= 0:
        raise ValueError("latency must be positive")
    if repetitions < 3:
        raise ValueError("need at least 3 repetitions")
    providers = latency_providers(latency_ms, (m.ca_pqc.algorithm, m.ca_classical.algorithm), registry)
    csr = pure_csr(m, registry)  # the subject's proof of possession is not CA work

    report = BenchReport()
    for scheme in SCHEMES:
        ms = _median_ms(lambda: issue_scheme(scheme, m, providers=providers, registry=registry, csr=csr),
                        repetitions)
        report.add(scheme, "issue_median_ms", ms, "ms")
    ms = _median_ms(lambda: issue_scheme("composite", m, providers=providers, registry=registry,
                                         concurrent=False), repetitions)
    report.add("composite", "issue_median_ms_sequential", ms, "ms")

    checks = [
        ("composite", "issue_median_ms", "<", 1.5 * latency_ms),
        ("composite", "issue_median_ms_sequential", ">=", 2 * latency_ms),
        ("catalyst", "issue_median_ms", ">=", 2 * latency_ms),
        ("chameleon", "issue_median_ms", ">=", 2 * latency_ms),
    ]
    for scheme, metric, op, bound in checks:
        v = report.value(scheme, metric)
        ok = v < bound if op == "<" else v >= bound
        if not ok:
            report.failures.append(f"{scheme} {metric} = {v:.1f} ms, expected {op} {bound:.1f} ms")
    return report


def compat_matrix(m: Materials, at: Optional[datetime.datetime] = None,
                  registry: Optional[Registry] = None) -> CompatMatrix:
    at = at or m.clock
    matrix = CompatMatrix()
    for scheme in SCHEMES:
        cert = issue_scheme(scheme, m, registry=registry)[0]
        for profile in PROFILES:
            matrix.cells[(scheme, profile)] = verify_scheme(
                scheme, cert, m.ca_public_keys, profile, at=at, pqc=m.ca_pqc.algorithm,
                classical=m.ca_classical.algorithm, registry=registry)
    return matrix


def registry_table(registry: Optional[Registry] = None) -> tuple:
    registry = registry or builtin_registry()
    header = ("name", "oid", "role", "level", "public_key_len", "signature_len")
    rows = []
    for alg in registry:
        sig = "none" if alg.signature_len is None else alg.signature_len
        if alg.signature_range:
            sig = f"{alg.signature_len} {alg.signature_range[0]}-{alg.signature_range[1]}"
        rows.append((alg.name, str(alg.oid), alg.role.value,
                     "none" if alg.security_level is None else alg.security_level,
                     alg.public_key_len, sig))
    return header, rows
