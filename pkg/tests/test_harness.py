import pytest

from pqhybrid.harness import (
    EXPECTED_MATRIX,
    SCHEMES,
    BenchAssertionError,
    BenchReport,
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
from pqhybrid.x509 import VerifierProfile


def test_size_ordering(materials):
    r = bench_sizes(materials)
    size = {s: r.value(s, "der_length") for s in SCHEMES}
    assert size["composite"] < size["catalyst"] < size["chameleon"]
    assert size["pure"] < size["composite"]
    assert r.failures == []
    r.raise_for_failures()


def test_sizes_deterministic(materials):
    assert emit_report(bench_sizes(materials)) == emit_report(bench_sizes(materials))


def test_sizes_congruent_with_short_long(materials):
    # the short/short/long cells fall out of ranking the lengths
    r = bench_sizes(materials)
    ranked = sorted(("composite", "catalyst", "chameleon"), key=lambda s: r.value(s, "der_length"))
    assert ranked[-1] == "chameleon"


def test_matrix(materials):
    m = compat_matrix(materials)
    assert m.mismatches(EXPECTED_MATRIX) == []
    assert not m.accepted("composite", "legacy")
    assert m.accepted("catalyst", "legacy")
    assert m.accepted("chameleon", "pqc-aware")
    assert str(m.cells[("composite", VerifierProfile.LEGACY)]) == "reject(unknown-algorithm)"


def test_matrix_mismatch_reported(materials):
    m = compat_matrix(materials)
    flipped = dict(EXPECTED_MATRIX)
    flipped[("composite", VerifierProfile.LEGACY)] = True
    assert len(m.mismatches(flipped)) == 1


def test_bench_times_short_latency(materials):
    r = bench_times(materials, latency_ms=20, repetitions=3)
    assert r.failures == []
    assert r.value("composite", "issue_median_ms") < 30
    assert r.value("catalyst", "issue_median_ms") >= 40
    assert r.value("composite", "issue_median_ms_sequential") >= 40


@pytest.mark.parametrize("latency,reps", [(0, 5), (-1, 5), (50, 2)])
def test_bench_times_preconditions(materials, latency, reps):
    with pytest.raises(ValueError):
        bench_times(materials, latency, reps)


def test_raise_for_failures():
    r = BenchReport(failures=["boom"])
    with pytest.raises(BenchAssertionError, match="boom"):
        r.raise_for_failures()


def test_report_rejects_duplicate_row():
    r = BenchReport()
    r.add("pure", "x", 1, "bytes")
    with pytest.raises(ValueError):
        r.add("pure", "x", 2, "bytes")


def test_emit_table_shapes(materials):
    header = ("a", "b")
    assert emit_table(header, []) == "a,b\n"
    assert emit_table(header, [(1, 2)]).splitlines() == ["a,b", "1,2"]
    md = emit_report(compat_matrix(materials), "markdown").splitlines()
    assert len(md) == 6 and md[1].startswith("|")
    with pytest.raises(ValueError):
        emit_table(header, [], "json")


def test_csv_values_unquoted(materials):
    for line in emit_report(bench_sizes(materials)).splitlines():
        assert '"' not in line and len(line.split(",")) == 4


def test_detect_scheme(issued):
    for scheme in ("pure", "composite", "catalyst"):
        assert detect_scheme(issued[scheme]) == scheme
    assert detect_scheme(issued["chameleon"]) == "chameleon"
    assert detect_scheme(issued["inner"]) == "pure"


def test_verify_scheme_dispatch(materials, issued, clock):
    for scheme in SCHEMES:
        v = verify_scheme(scheme, issued[scheme], materials.ca_public_keys, VerifierProfile.PQC_AWARE, at=clock)
        assert v, scheme
    with pytest.raises(ValueError):
        verify_scheme("quantum", issued["pure"], materials.ca_public_keys, VerifierProfile.PQC_AWARE, at=clock)
    with pytest.raises(ValueError):
        issue_scheme("quantum", materials)


def test_materials_deterministic(clock):
    a = materials_from_seed(bytes(32), clock)
    b = materials_from_seed(bytes(32), clock)
    assert a == b
    c = materials_from_seed(b"\x01" * 32, clock)
    assert c.ca_pqc.public_key != a.ca_pqc.public_key
    assert len({a.ca_pqc.public_key, a.subject_pqc.public_key}) == 2


def test_kem_pure_subject(clock):
    m = materials_from_seed(bytes(32), clock, pure_alg="ML-KEM-512")
    cert = issue_scheme("pure", m)[0]
    assert verify_scheme("pure", cert, m.ca_public_keys, VerifierProfile.PQC_AWARE, at=clock)


def test_chameleon_inner_serial_default(materials):
    outer, inner = issue_scheme("chameleon", materials, serial=5)
    assert inner.tbs.serial == 1006


def test_registry_table():
    header, rows = registry_table()
    assert header[0] == "name" and len(rows) == 20
    ecdsa = next(r for r in rows if r[0] == "ECDSA-P256")
    assert ecdsa[5] == "variable 70-72"
