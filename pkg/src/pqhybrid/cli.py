"""Command-line front end.

Exit codes: 0 success, 1 verification reject, 2 usage or input error,
3 benchmark assertion failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import der
from .catalyst import AltSpki
from .chameleon import DeltaCertificateDescriptor, reconstruct_delta
from .composite import decode_pair
from .harness import (
    EXPECTED_MATRIX,
    SCHEMES,
    bench_sizes,
    bench_times,
    compat_matrix,
    detect_scheme,
    emit_report,
    emit_table,
    issue_scheme,
    materials_from_seed,
    registry_table,
    verify_scheme,
)
from .providers import ProviderError, derive_seed, get_provider, parse_seed
from .registry import Role, builtin_registry
from .x509 import (
    OID_ALT_SPKI,
    OID_DELTA_DESCRIPTOR,
    OID_KEY_USAGE,
    CERT_LABEL,
    Certificate,
    CertificateError,
    PemError,
    Reason,
    VerifierProfile,
    load_certificate,
    parse_key_usage,
    pem_encode,
    reject,
)

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_BENCH = 0, 1, 2, 3
CA_KEYS_FILE = "ca-keys.json"
DEFAULT_SEED = "00" * 32
PROG = "pqhybrid"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # one line, not the multi-line argparse usage block
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", default=DEFAULT_SEED, help="master seed, 64 hex characters")
    p.add_argument("--out", help="output file or directory")
    p.add_argument("--format", choices=("csv", "markdown", "pem", "der"))
    p.add_argument("--profile", choices=[p.value for p in VerifierProfile], default=VerifierProfile.PQC_AWARE.value)
    p.add_argument("--scheme", choices=SCHEMES)
    p.add_argument("--clock", type=int, help="evaluation/issuance time, unix seconds (default: now)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog=PROG, description="Hybrid post-quantum X.509 certificate toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("registry", parents=[common], help="list known algorithms")

    p = sub.add_parser("keygen", parents=[common], help="derive a stand-in key pair from a seed")
    p.add_argument("--alg", required=True)

    p = sub.add_parser("issue", parents=[common], help="issue a certificate of one scheme")
    p.add_argument("--subject", default="Alice")
    p.add_argument("--issuer", default="Test CA")
    p.add_argument("--alg", default="ML-DSA-44", help="subject key algorithm of a pure certificate")

    p = sub.add_parser("verify", parents=[common], help="verify a certificate")
    p.add_argument("cert")
    p.add_argument("--ca-keys", help=f"CA public keys JSON (default: {CA_KEYS_FILE} next to the certificate)")

    p = sub.add_parser("inspect", parents=[common], help="print a certificate's fields")
    p.add_argument("cert")

    p = sub.add_parser("reconstruct", parents=[common], help="rebuild the inner certificate of a chameleon one")
    p.add_argument("cert")

    p = sub.add_parser("bench", parents=[common], help="size, timing or compatibility comparison")
    p.add_argument("kind", choices=("size", "time", "matrix"))
    p.add_argument("--latency", type=float, default=50.0, help="injected ms per sign call (time)")
    p.add_argument("--repetitions", type=int, default=5)
    return parser


def _clock(args) -> datetime.datetime:
    t = args.clock if args.clock is not None else int(time.time())
    return datetime.datetime.fromtimestamp(t, datetime.timezone.utc)


def _seed(args) -> bytes:
    try:
        return parse_seed(args.seed)
    except ValueError as exc:
        raise UsageError(f"--seed: {exc}") from None


def _format(args, allowed: tuple, default: str) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(f"--format {fmt} is not valid for {args.command} (choose from {', '.join(allowed)})")
    return fmt


def _write_text(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cert_bytes(cert: Certificate, fmt: str) -> bytes:
    return cert.to_pem().encode() if fmt == "pem" else cert.to_der()


def cmd_registry(args) -> int:
    header, rows = registry_table()
    _write_text(args, emit_table(header, rows, _format(args, ("csv", "markdown"), "csv")))
    return EXIT_OK


def cmd_keygen(args) -> int:
    try:
        provider = get_provider(args.alg)
    except ProviderError as exc:
        raise UsageError(str(exc)) from None
    if provider.algorithm.role is Role.COMPOSITE:
        raise UsageError("keygen takes a single algorithm, not a composite")
    kp = provider.keygen(_seed(args))
    doc = {"algorithm": kp.algorithm, "seed": kp.seed.hex(), "public_key": kp.public_key.hex()}
    _write_text(args, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_issue(args) -> int:
    if not args.scheme:
        raise UsageError("issue needs --scheme")
    fmt = _format(args, ("pem", "der"), "pem")
    try:
        m = materials_from_seed(_seed(args), _clock(args), pure_alg=args.alg, subject=args.subject,
                                ca_name=args.issuer)
    except ProviderError as exc:
        raise UsageError(str(exc)) from None
    if args.scheme != "pure" and args.alg != "ML-DSA-44":
        raise UsageError("--alg only applies to --scheme pure")
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    certs = issue_scheme(args.scheme, m)
    names = ("outer", "inner") if args.scheme == "chameleon" else (args.scheme,)
    for name, cert in zip(names, certs):
        path = outdir / f"{name}.{fmt}"
        path.write_bytes(_cert_bytes(cert, fmt))
        print(path)
    keys = {alg: pk.hex() for alg, pk in sorted(m.ca_public_keys.items())}
    (outdir / CA_KEYS_FILE).write_text(json.dumps(keys, indent=2) + "\n")
    print(outdir / CA_KEYS_FILE)
    return EXIT_OK


def _ca_keys(args, cert_path: Path) -> dict:
    path = Path(args.ca_keys) if args.ca_keys else cert_path.parent / CA_KEYS_FILE
    if path.exists():
        try:
            return {alg: bytes.fromhex(pk) for alg, pk in json.loads(path.read_text()).items()}
        except (ValueError, AttributeError) as exc:
            raise UsageError(f"{path}: bad CA key file ({exc})") from None
    if args.ca_keys:
        raise UsageError(f"{path}: no such file")
    return materials_from_seed(_seed(args), _clock(args)).ca_public_keys


def cmd_verify(args) -> int:
    path = Path(args.cert)
    at = _clock(args)
    try:
        cert = load_certificate(path)
    except (CertificateError, PemError) as exc:
        print(reject(Reason.MALFORMED))
        print(f"{PROG}: {exc}", file=sys.stderr)
        return EXIT_REJECT
    except OSError as exc:
        raise UsageError(str(exc)) from None
    scheme = args.scheme or detect_scheme(cert)
    keys = _ca_keys(args, path)
    try:
        verdict = verify_scheme(scheme, cert, keys, VerifierProfile(args.profile), at=at)
    except KeyError as exc:
        raise UsageError(f"CA key for {exc} not found") from None
    print(verdict)
    return EXIT_OK if verdict else EXIT_REJECT


def _alg_name(oid) -> str:
    alg = builtin_registry().lookup_by_oid(oid)
    return f"{alg.name} ({oid})" if alg else f"unknown ({oid})"


def _describe_extensions(exts, indent: str) -> list:
    lines = []
    for ext in exts:
        crit = " critical" if ext.critical else ""
        if ext.oid == OID_KEY_USAGE:
            usages = ", ".join(sorted(parse_key_usage(ext)))
            lines.append(f"{indent}Key Usage{crit}: {{{usages}}}")
        elif ext.oid == OID_ALT_SPKI:
            alt = AltSpki.from_extension(ext)
            lines += [f"{indent}Alt-SPKI{crit}:",
                      f"{indent}  alg: {_alg_name(alt.alg)}",
                      f"{indent}  key: {len(alt.key)} bytes",
                      f"{indent}  sig: {len(alt.sig)} bytes"]
        elif ext.oid == OID_DELTA_DESCRIPTOR:
            d = DeltaCertificateDescriptor.from_extension(ext)
            lines.append(f"{indent}DeltaCertificateDescriptor{crit}:")
            lines.append(f"{indent}  serial: {d.serial}")
            if d.signature_alg is not None:
                lines.append(f"{indent}  signature alg: {_alg_name(d.signature_alg)}")
            for label, value in (("issuer", d.issuer), ("validity", d.validity), ("subject", d.subject)):
                if value is not None:
                    lines.append(f"{indent}  {label}: {value}")
            lines.append(f"{indent}  SPKI: {_alg_name(d.spki.algorithm)}, {len(d.spki.key)} bytes")
            if d.extensions is not None:
                lines.append(f"{indent}  extensions:")
                lines += _describe_extensions(d.extensions, indent + "    ")
            lines.append(f"{indent}  sig: {len(d.sig)} bytes")
        else:
            lines.append(f"{indent}{ext.oid}{crit}: {len(ext.value)} bytes")
    return lines


def describe(cert: Certificate) -> str:
    tbs = cert.tbs
    registry = builtin_registry()
    spki_alg = registry.lookup_by_oid(tbs.spki.algorithm)
    lines = [
        f"Scheme: {detect_scheme(cert)}",
        f"Serial: {tbs.serial}",
        f"Issuer: {tbs.issuer}",
        f"Subject: {tbs.subject}",
        f"Validity: {tbs.validity.not_before.isoformat()} .. {tbs.validity.not_after.isoformat()}",
        f"SPKI: {_alg_name(tbs.spki.algorithm)}, {len(tbs.spki.key)} bytes",
    ]
    if spki_alg is not None and spki_alg.role is Role.COMPOSITE:
        pair = decode_pair(tbs.spki.key)
        for name, part in zip(spki_alg.component_names, (pair.first, pair.second)):
            lines.append(f"  {name} key: {len(part)} bytes")
    lines.append("Extensions:")
    lines += _describe_extensions(tbs.extensions, "  ")
    lines.append(f"Sig: {_alg_name(cert.sig_alg)}, {len(cert.signature)} bytes")
    sig_alg = registry.lookup_by_oid(cert.sig_alg)
    if sig_alg is not None and sig_alg.role is Role.COMPOSITE:
        pair = decode_pair(cert.signature)
        for name, part in zip(sig_alg.component_names, (pair.first, pair.second)):
            lines.append(f"  {name} signature: {len(part)} bytes")
    lines.append(f"DER length: {len(cert.to_der())} bytes")
    return "\n".join(lines) + "\n"


def cmd_inspect(args) -> int:
    cert = load_certificate(args.cert)
    _write_text(args, describe(cert))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    fmt = _format(args, ("pem", "der"), "pem")
    inner = reconstruct_delta(load_certificate(args.cert))
    if args.out:
        Path(args.out).write_bytes(_cert_bytes(inner, fmt))
    elif fmt == "pem":
        sys.stdout.write(pem_encode(CERT_LABEL, inner.to_der()))
    else:
        sys.stdout.buffer.write(inner.to_der())
    return EXIT_OK


def cmd_bench(args) -> int:
    fmt = _format(args, ("csv", "markdown"), "csv")
    # benchmarks default to a fixed clock so repeated runs match byte for byte
    if args.clock is None:
        args.clock = 1_735_689_600
    m = materials_from_seed(_seed(args), _clock(args))
    if args.kind == "size":
        report = bench_sizes(m)
        failures = report.failures
    elif args.kind == "time":
        if args.latency <= 0 or args.repetitions < 3:
            raise UsageError("bench time needs --latency > 0 and --repetitions >= 3")
        report = bench_times(m, args.latency, args.repetitions)
        failures = report.failures
    else:
        report = compat_matrix(m)
        failures = report.mismatches(EXPECTED_MATRIX)
    _write_text(args, emit_report(report, fmt))
    for failure in failures:
        print(f"{PROG}: assertion failed: {failure}", file=sys.stderr)
    return EXIT_BENCH if failures else EXIT_OK


COMMANDS = {
    "registry": cmd_registry,
    "keygen": cmd_keygen,
    "issue": cmd_issue,
    "verify": cmd_verify,
    "inspect": cmd_inspect,
    "reconstruct": cmd_reconstruct,
    "bench": cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificateError, PemError, der.DerError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
