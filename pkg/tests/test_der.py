import datetime

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqhybrid import der
from pqhybrid.der import CONTEXT, UNIVERSAL, DerDecodeError, DerEncodeError, DerValue, Oid

UTC = datetime.timezone.utc


# -- independent oracles ---------------------------------------------------------


def oracle_length(n):
    if n < 0x80:
        return bytes([n])
    body = []
    while n:
        body.insert(0, n % 256)
        n //= 256
    return bytes([0x80 | len(body)] + body)


def oracle_oid(arcs):
    def b128(n):
        out = [n & 0x7F]
        n >>= 7
        while n:
            out.insert(0, 0x80 | (n & 0x7F))
            n >>= 7
        return out

    body = b128(40 * arcs[0] + arcs[1])
    for a in arcs[2:]:
        body += b128(a)
    return bytes(body)


def oracle_int(n):
    # smallest two's-complement width that round-trips
    width = 1
    while True:
        try:
            return n.to_bytes(width, "big", signed=True)
        except OverflowError:
            width += 1


# -- reference encodings -------------------------------------------------------


def test_integer_examples():
    assert der.encode_value(DerValue.integer(5)) == bytes.fromhex("020105")
    assert der.encode_value(DerValue.integer(0)) == bytes.fromhex("020100")
    assert der.decode(bytes.fromhex("02020080")).as_int() == 128
    assert der.encode_value(DerValue.integer(128)) == bytes.fromhex("02020080")
    assert der.encode_value(DerValue.integer(-129)) == bytes.fromhex("0202ff7f")


def test_long_form_sequence_header():
    seq = DerValue.sequence(DerValue.octet_string(bytes(296)))
    enc = der.encode_value(seq)
    assert enc[:4] == bytes.fromhex("3082012c")
    assert len(enc) == 4 + 300


def test_null():
    assert der.decode(b"\x05\x00") == DerValue.null()


def test_truncated_long_length():
    with pytest.raises(DerDecodeError):
        der.decode(bytes.fromhex("028201") + b"\x01")
    with pytest.raises(DerDecodeError):
        der.decode(bytes.fromhex("02820100") + b"\x01" * 10)


@pytest.mark.parametrize("oid,hexbytes", [
    ("2.5.29.15", "551d0f"),
    ("1.2.840.10045.4.3.2", "2a8648ce3d040302"),
    ("0.0", "00"),
])
def test_oid_examples(oid, hexbytes):
    assert der.encode_oid(oid) == bytes.fromhex(hexbytes)
    assert der.decode_oid(bytes.fromhex(hexbytes)) == Oid(oid)


@pytest.mark.parametrize("bad", ["81", "8001", "", "2a86"])
def test_malformed_oid(bad):
    with pytest.raises(der.DerError):
        der.decode_oid(bytes.fromhex(bad))


@pytest.mark.parametrize("text", ["1", "3.1", "1.40", "a.b", "1..2"])
def test_invalid_oid_text(text):
    with pytest.raises(ValueError):
        Oid(text)


def test_oid_str_round_trip():
    assert str(Oid("1.3.9999.1.1")) == "1.3.9999.1.1"
    assert Oid([2, 999, 3]) == Oid("2.999.3")


# -- rejection of non-canonical input ---------------------------------------------


@pytest.mark.parametrize("hexbytes,why", [
    ("3080020100 0000", "indefinite length"),
    ("02810105", "long form for short length"),
    ("0282000105", "leading zero length octet"),
    ("0201", "truncated"),
    ("020100ff", "trailing bytes"),
    ("02020005", "non-minimal integer"),
    ("0202ff80", "non-minimal negative integer"),
    ("010101", "boolean not 00/ff"),
    ("030107", "unused bits with no data"),
    ("03020101", "nonzero padding"),
    ("0501 00", "non-empty null"),
    ("1f2200", "unsupported high tag"),
    ("0e00", "unsupported universal tag"),
    ("2201 00", "constructed integer"),
])
def test_rejects(hexbytes, why):
    data = bytes.fromhex(hexbytes.replace(" ", ""))
    with pytest.raises(DerDecodeError):
        der.decode(data)


def test_depth_limit():
    v = DerValue.null()
    for _ in range(der.MAX_DEPTH):
        v = DerValue.sequence(v)
    with pytest.raises(DerEncodeError):
        der.encode_value(v)
    data = b"\x05\x00"
    for _ in range(der.MAX_DEPTH):
        data = b"\x30" + oracle_length(len(data)) + data
    with pytest.raises(DerDecodeError):
        der.decode(data)


def test_decode_value_prefix():
    v, used = der.decode_value(bytes.fromhex("020105ffff"))
    assert v.as_int() == 5 and used == 3


def test_encode_rejects_bad_primitive():
    with pytest.raises(DerEncodeError):
        der.encode_value(DerValue(UNIVERSAL, der.INTEGER, False, b"\x00\x01"))
    with pytest.raises(DerEncodeError):
        der.encode_value(DerValue(UNIVERSAL, der.SEQUENCE, False, b""))


def test_set_is_sorted():
    s = DerValue.set(DerValue.integer(300), DerValue.integer(1))
    assert [c.as_int() for c in s.children] == [1, 300]


# -- time selection ----------------------------------------------------------------


@pytest.mark.parametrize("year,tag", [(1950, der.UTC_TIME), (2049, der.UTC_TIME),
                                      (1949, der.GENERALIZED_TIME), (2050, der.GENERALIZED_TIME)])
def test_time_encoding_switch(year, tag):
    dt = datetime.datetime(year, 6, 1, 12, 0, 0, tzinfo=UTC)
    v = DerValue.time(dt)
    assert v.tag_number == tag
    assert der.decode(der.encode_value(v)).as_time() == dt


def test_time_requires_utc_seconds():
    with pytest.raises(DerEncodeError):
        DerValue.time(datetime.datetime(2025, 1, 1))
    with pytest.raises(DerEncodeError):
        DerValue.time(datetime.datetime(2025, 1, 1, microsecond=5, tzinfo=UTC))


# -- properties ---------------------------------------------------------------------


@given(st.integers(min_value=0, max_value=2**40))
def test_length_matches_oracle(n):
    assert der.encode_length(n) == oracle_length(n)


@given(st.integers(min_value=-(2**200), max_value=2**200))
def test_integer_matches_oracle(n):
    enc = der.encode_value(DerValue.integer(n))
    body = oracle_int(n)
    assert enc == b"\x02" + oracle_length(len(body)) + body
    assert der.decode(enc).as_int() == n


oids = st.builds(
    lambda first, second, rest: Oid([first, second] + rest),
    st.integers(0, 2),
    st.integers(0, 39),
    st.lists(st.integers(0, 2**64), max_size=8),
)


@given(oids)
def test_oid_matches_oracle(oid):
    assert der.encode_oid(oid) == oracle_oid(list(oid))
    assert der.decode_oid(der.encode_oid(oid)) == oid


_times = st.datetimes(min_value=datetime.datetime(1, 1, 1), max_value=datetime.datetime(9999, 12, 31),
                      timezones=st.just(UTC)).map(lambda d: d.replace(microsecond=0))
_printable = st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789 '()+,-./:=?",
                     max_size=20)

leaves = st.one_of(
    st.booleans().map(DerValue.boolean),
    st.integers(min_value=-(2**70), max_value=2**70).map(DerValue.integer),
    st.binary(max_size=40).map(DerValue.bit_string),
    st.binary(max_size=300).map(DerValue.octet_string),
    st.just(DerValue.null()),
    oids.map(DerValue.oid),
    st.text(max_size=20).map(DerValue.utf8),
    _printable.map(DerValue.printable),
    _times.map(DerValue.time),
    st.tuples(st.integers(0, 30), st.binary(max_size=20)).map(lambda t: DerValue(CONTEXT, t[0], False, t[1])),
)

trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.lists(kids, max_size=5).map(lambda xs: DerValue.sequence(*xs)),
        st.lists(kids, max_size=5).map(lambda xs: DerValue.set(*xs)),
        st.tuples(st.integers(0, 40), kids).map(lambda t: DerValue.explicit(*t)),
    ),
    max_leaves=20,
)


@settings(max_examples=300)
@given(trees)
def test_round_trip(tree):
    enc = der.encode_value(tree)
    assert der.decode(enc) == tree
    assert der.encode_value(der.decode(enc)) == enc


@given(trees, st.binary(min_size=1, max_size=4))
def test_trailing_bytes_rejected(tree, junk):
    with pytest.raises(DerDecodeError):
        der.decode(der.encode_value(tree) + junk)


@given(trees)
def test_truncation_rejected(tree):
    enc = der.encode_value(tree)
    for cut in {1, len(enc) // 2, len(enc) - 1} - {0, len(enc)}:
        with pytest.raises(DerDecodeError):
            der.decode(enc[:cut])
