"""Minimal deterministic DER encoder/decoder.

Only the ASN.1 subset needed by the certificate model is supported. Every
value is validated against the DER canonical rules on both encode and decode,
so ``encode(decode(b)) == b`` holds for any accepted input.
"""

from __future__ import annotations

import datetime
import re
from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "BOOLEAN", "INTEGER", "BIT_STRING", "OCTET_STRING", "NULL", "OBJECT_IDENTIFIER",
    "UTF8_STRING", "SEQUENCE", "SET", "PRINTABLE_STRING", "UTC_TIME", "GENERALIZED_TIME",
    "UNIVERSAL", "CONTEXT", "MAX_DEPTH",
    "DerError", "DerEncodeError", "DerDecodeError",
    "Oid", "DerValue",
    "encode_value", "decode_value", "decode", "encode_oid", "decode_oid",
    "encode_length",
]

BOOLEAN = 1
INTEGER = 2
BIT_STRING = 3
OCTET_STRING = 4
NULL = 5
OBJECT_IDENTIFIER = 6
UTF8_STRING = 12
SEQUENCE = 16
SET = 17
PRINTABLE_STRING = 19
UTC_TIME = 23
GENERALIZED_TIME = 24

UNIVERSAL = "universal"
CONTEXT = "context"

MAX_DEPTH = 32

_SUPPORTED_UNIVERSAL = frozenset({
    BOOLEAN, INTEGER, BIT_STRING, OCTET_STRING, NULL, OBJECT_IDENTIFIER,
    UTF8_STRING, SEQUENCE, SET, PRINTABLE_STRING, UTC_TIME, GENERALIZED_TIME,
})
_CONSTRUCTED_UNIVERSAL = frozenset({SEQUENCE, SET})
_CLASS_BITS = {UNIVERSAL: 0x00, CONTEXT: 0x80}

_PRINTABLE_RE = re.compile(r"[A-Za-z0-9 '()+,\-./:=?]*\Z")
_UTC_RE = re.compile(rb"\d{12}Z\Z")
_GENERALIZED_RE = re.compile(rb"\d{14}Z\Z")


class DerError(ValueError):
    """Base class for DER encoding and decoding failures."""


class DerEncodeError(DerError):
    pass


class DerDecodeError(DerError):
    pass


class Oid(tuple):
    """Object identifier as a tuple of integer arcs.

    >>> Oid("2.5.29.15")
    Oid('2.5.29.15')
    >>> Oid((1, 2, 840)) == Oid("1.2.840")
    True
    """

    __slots__ = ()

    def __new__(cls, arcs: Union[str, Iterable[int]]) -> "Oid":
        if isinstance(arcs, str):
            try:
                parts = tuple(int(p) for p in arcs.split("."))
            except ValueError:
                raise DerError(f"malformed OID string {arcs!r}") from None
        else:
            parts = tuple(int(a) for a in arcs)
        if len(parts) < 2:
            raise DerError("an OID needs at least two arcs")
        if any(a < 0 for a in parts):
            raise DerError("OID arcs must be non-negative")
        if parts[0] not in (0, 1, 2):
            raise DerError("first OID arc must be 0, 1 or 2")
        if parts[0] < 2 and parts[1] >= 40:
            raise DerError("second OID arc must be < 40 under arcs 0 and 1")
        return tuple.__new__(cls, parts)

    def __str__(self) -> str:
        return ".".join(str(a) for a in self)

    def __repr__(self) -> str:
        return f"Oid({str(self)!r})"


def _base128(n: int) -> bytes:
    out = [n & 0x7F]
    n >>= 7
    while n:
        out.append(0x80 | (n & 0x7F))
        n >>= 7
    return bytes(reversed(out))


def encode_oid(oid: Oid | str | Iterable[int]) -> bytes:
    """Content octets of an OBJECT IDENTIFIER (no tag or length)."""
    if not isinstance(oid, Oid):
        oid = Oid(oid)
    out = bytearray(_base128(40 * oid[0] + oid[1]))
    for arc in oid[2:]:
        out += _base128(arc)
    return bytes(out)


def decode_oid(data: bytes) -> Oid:
    if not data:
        raise DerDecodeError("empty OID")
    subids = []
    value = 0
    start = True
    for b in data:
        if start and b == 0x80:
            raise DerDecodeError("non-minimal OID subidentifier")
        value = (value << 7) | (b & 0x7F)
        if b & 0x80:
            start = False
        else:
            subids.append(value)
            value = 0
            start = True
    if not start:
        raise DerDecodeError("OID ends inside a subidentifier")
    first = subids[0]
    if first < 40:
        arcs = [0, first]
    elif first < 80:
        arcs = [1, first - 40]
    else:
        arcs = [2, first - 80]
    return Oid(arcs + subids[1:])


def encode_length(n: int) -> bytes:
    if n < 0:
        raise DerEncodeError("negative length")
    if n < 0x80:
        return bytes([n])
    body = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if len(body) > 126:
        raise DerEncodeError("length too large")
    return bytes([0x80 | len(body)]) + body


def _encode_integer(n: int) -> bytes:
    return n.to_bytes(n.bit_length() // 8 + 1, "big", signed=True)


def _encode_time(dt: datetime.datetime) -> "DerValue":
    if dt.tzinfo is None:
        raise DerEncodeError("naive datetime; times must be UTC")
    dt = dt.astimezone(datetime.timezone.utc)
    if dt.microsecond:
        raise DerEncodeError("sub-second precision is not representable")
    if 1950 <= dt.year <= 2049:
        return DerValue(UNIVERSAL, UTC_TIME, False, dt.strftime("%y%m%d%H%M%SZ").encode())
    return DerValue(UNIVERSAL, GENERALIZED_TIME, False, f"{dt.year:04d}".encode()
                    + dt.strftime("%m%d%H%M%SZ").encode())


@dataclass(frozen=True)
class DerValue:
    """One node of a DER tree.

    ``content`` is ``bytes`` for primitive values and a tuple of child
    ``DerValue`` for constructed ones.
    """

    tag_class: str
    tag_number: int
    constructed: bool
    content: Union[bytes, tuple]

    def __post_init__(self) -> None:
        if not self.constructed and isinstance(self.content, (bytearray, memoryview)):
            object.__setattr__(self, "content", bytes(self.content))
        elif self.constructed and isinstance(self.content, list):
            object.__setattr__(self, "content", tuple(self.content))

    # constructors

    @classmethod
    def boolean(cls, value: bool) -> "DerValue":
        return cls(UNIVERSAL, BOOLEAN, False, b"\xff" if value else b"\x00")

    @classmethod
    def integer(cls, value: int) -> "DerValue":
        return cls(UNIVERSAL, INTEGER, False, _encode_integer(value))

    @classmethod
    def bit_string(cls, data: bytes, unused_bits: int = 0) -> "DerValue":
        return cls(UNIVERSAL, BIT_STRING, False, bytes([unused_bits]) + bytes(data))

    @classmethod
    def octet_string(cls, data: bytes) -> "DerValue":
        return cls(UNIVERSAL, OCTET_STRING, False, bytes(data))

    @classmethod
    def null(cls) -> "DerValue":
        return cls(UNIVERSAL, NULL, False, b"")

    @classmethod
    def oid(cls, oid: Oid | str) -> "DerValue":
        return cls(UNIVERSAL, OBJECT_IDENTIFIER, False, encode_oid(oid))

    @classmethod
    def utf8(cls, text: str) -> "DerValue":
        return cls(UNIVERSAL, UTF8_STRING, False, text.encode("utf-8"))

    @classmethod
    def printable(cls, text: str) -> "DerValue":
        return cls(UNIVERSAL, PRINTABLE_STRING, False, text.encode("ascii"))

    @classmethod
    def sequence(cls, *items: "DerValue") -> "DerValue":
        return cls(UNIVERSAL, SEQUENCE, True, tuple(items))

    @classmethod
    def set(cls, *items: "DerValue") -> "DerValue":
        # DER sorts SET OF by encoding
        return cls(UNIVERSAL, SET, True, tuple(sorted(items, key=encode_value)))

    @classmethod
    def time(cls, dt: datetime.datetime) -> "DerValue":
        """UTCTime for 1950-2049, GeneralizedTime otherwise."""
        return _encode_time(dt)

    @classmethod
    def explicit(cls, number: int, inner: "DerValue") -> "DerValue":
        return cls(CONTEXT, number, True, (inner,))

    # accessors

    def expect(self, tag_number: int, tag_class: str = UNIVERSAL) -> "DerValue":
        if self.tag_class != tag_class or self.tag_number != tag_number:
            raise DerDecodeError(
                f"expected {tag_class} tag {tag_number}, got {self.tag_class} tag {self.tag_number}")
        return self

    @property
    def children(self) -> tuple:
        if not self.constructed:
            raise DerDecodeError("primitive value has no children")
        return self.content

    def as_int(self) -> int:
        return int.from_bytes(self.expect(INTEGER).content, "big", signed=True)

    def as_bool(self) -> bool:
        return self.expect(BOOLEAN).content == b"\xff"

    def as_oid(self) -> Oid:
        return decode_oid(self.expect(OBJECT_IDENTIFIER).content)

    def as_bytes(self) -> bytes:
        """Payload of an OCTET STRING, or of a BIT STRING with no unused bits."""
        if self.tag_class == UNIVERSAL and self.tag_number == BIT_STRING:
            if self.content[0] != 0:
                raise DerDecodeError("BIT STRING has unused bits")
            return self.content[1:]
        return self.expect(OCTET_STRING).content

    def as_str(self) -> str:
        if self.tag_class == UNIVERSAL and self.tag_number in (UTF8_STRING, PRINTABLE_STRING):
            return self.content.decode("utf-8")
        raise DerDecodeError(f"not a string type: tag {self.tag_number}")

    def as_time(self) -> datetime.datetime:
        if self.tag_class != UNIVERSAL:
            raise DerDecodeError("not a time value")
        text = self.content.decode("ascii")
        if self.tag_number == UTC_TIME:
            yy = int(text[:2])
            year = 1900 + yy if yy >= 50 else 2000 + yy
            rest = text[2:]
        elif self.tag_number == GENERALIZED_TIME:
            year = int(text[:4])
            rest = text[4:]
        else:
            raise DerDecodeError("not a time value")
        try:
            return datetime.datetime(year, int(rest[0:2]), int(rest[2:4]), int(rest[4:6]),
                                     int(rest[6:8]), int(rest[8:10]), tzinfo=datetime.timezone.utc)
        except ValueError as exc:
            raise DerDecodeError(f"invalid time: {exc}") from None


def _check_primitive(tag: int, content: bytes, error: type) -> None:
    if tag == BOOLEAN:
        if content not in (b"\x00", b"\xff"):
            raise error("BOOLEAN must be a single 0x00 or 0xFF octet")
    elif tag == INTEGER:
        if not content:
            raise error("empty INTEGER")
        if len(content) > 1 and (
                (content[0] == 0x00 and content[1] < 0x80) or (content[0] == 0xFF and content[1] >= 0x80)):
            raise error("non-minimal INTEGER encoding")
    elif tag == BIT_STRING:
        if not content:
            raise error("BIT STRING content missing unused-bits prefix octet")
        unused = content[0]
        if unused > 7 or (unused and len(content) == 1):
            raise error("invalid BIT STRING unused-bits count")
        if unused and content[-1] & ((1 << unused) - 1):
            raise error("BIT STRING padding bits must be zero")
    elif tag == NULL:
        if content:
            raise error("NULL must be empty")
    elif tag == OBJECT_IDENTIFIER:
        try:
            decode_oid(content)
        except DerError as exc:
            raise error(str(exc)) from None
    elif tag == UTF8_STRING:
        try:
            content.decode("utf-8")
        except UnicodeDecodeError:
            raise error("invalid UTF-8 in UTF8String") from None
    elif tag == PRINTABLE_STRING:
        if not _PRINTABLE_RE.match(content.decode("latin-1")):
            raise error("invalid character in PrintableString")
    elif tag == UTC_TIME:
        if not _UTC_RE.match(content):
            raise error("UTCTime must be YYMMDDHHMMSSZ")
    elif tag == GENERALIZED_TIME:
        if not _GENERALIZED_RE.match(content):
            raise error("GeneralizedTime must be YYYYMMDDHHMMSSZ")


def _check_tag(tag_class: str, tag_number: int, constructed: bool, error: type) -> None:
    if tag_class not in _CLASS_BITS:
        raise error(f"unsupported tag class {tag_class!r}")
    if tag_number < 0:
        raise error("negative tag number")
    if tag_class == UNIVERSAL:
        if tag_number not in _SUPPORTED_UNIVERSAL:
            raise error(f"unsupported universal tag {tag_number}")
        if constructed != (tag_number in _CONSTRUCTED_UNIVERSAL):
            raise error(f"wrong constructed bit for universal tag {tag_number}")


def _encode_tag(tag_class: str, tag_number: int, constructed: bool) -> bytes:
    first = _CLASS_BITS[tag_class] | (0x20 if constructed else 0)
    if tag_number < 31:
        return bytes([first | tag_number])
    return bytes([first | 0x1F]) + _base128(tag_number)


def _encode(v: DerValue, out: bytearray, depth: int) -> None:
    if depth > MAX_DEPTH:
        raise DerEncodeError("nesting too deep")
    _check_tag(v.tag_class, v.tag_number, v.constructed, DerEncodeError)
    if v.constructed:
        if not isinstance(v.content, tuple):
            raise DerEncodeError("constructed value needs a tuple of children")
        body = bytearray()
        for child in v.content:
            _encode(child, body, depth + 1)
    else:
        if not isinstance(v.content, bytes):
            raise DerEncodeError("primitive value needs bytes content")
        if v.tag_class == UNIVERSAL:
            _check_primitive(v.tag_number, v.content, DerEncodeError)
        body = v.content
    out += _encode_tag(v.tag_class, v.tag_number, v.constructed)
    out += encode_length(len(body))
    out += body


def encode_value(v: DerValue) -> bytes:
    """Canonical DER bytes for ``v``."""
    out = bytearray()
    _encode(v, out, 1)
    return bytes(out)


def _decode(data: bytes, pos: int, end: int, depth: int) -> tuple[DerValue, int]:
    if depth > MAX_DEPTH:
        raise DerDecodeError(f"nesting deeper than {MAX_DEPTH}")
    if pos >= end:
        raise DerDecodeError("truncated input: missing tag")
    first = data[pos]
    pos += 1
    cls_bits = first & 0xC0
    if cls_bits == 0x00:
        tag_class = UNIVERSAL
    elif cls_bits == 0x80:
        tag_class = CONTEXT
    else:
        raise DerDecodeError("only universal and context-specific tags are supported")
    constructed = bool(first & 0x20)
    tag_number = first & 0x1F
    if tag_number == 0x1F:
        tag_number = 0
        if pos >= end:
            raise DerDecodeError("truncated input: tag number")
        if data[pos] == 0x80:
            raise DerDecodeError("non-minimal tag number")
        while True:
            if pos >= end:
                raise DerDecodeError("truncated input: tag number")
            b = data[pos]
            pos += 1
            tag_number = (tag_number << 7) | (b & 0x7F)
            if not b & 0x80:
                break
        if tag_number < 31:
            raise DerDecodeError("non-minimal tag number")
    _check_tag(tag_class, tag_number, constructed, DerDecodeError)

    if pos >= end:
        raise DerDecodeError("truncated input: missing length")
    lb = data[pos]
    pos += 1
    if lb == 0x80:
        raise DerDecodeError("indefinite length is not DER")
    if lb & 0x80:
        n = lb & 0x7F
        if n == 0x7F:
            raise DerDecodeError("reserved length octet")
        if pos + n > end:
            raise DerDecodeError("truncated input: length octets")
        length = int.from_bytes(data[pos:pos + n], "big")
        if data[pos] == 0 or length < 0x80:
            raise DerDecodeError("non-minimal length encoding")
        pos += n
    else:
        length = lb
    if pos + length > end:
        raise DerDecodeError(f"truncated input: need {length} content bytes, have {end - pos}")
    stop = pos + length

    if constructed:
        children = []
        while pos < stop:
            child, pos = _decode(data, pos, stop, depth + 1)
            children.append(child)
        return DerValue(tag_class, tag_number, True, tuple(children)), stop

    content = bytes(data[pos:stop])
    if tag_class == UNIVERSAL:
        _check_primitive(tag_number, content, DerDecodeError)
    return DerValue(tag_class, tag_number, False, content), stop


def decode_value(data: bytes, exact: bool = False) -> tuple[DerValue, int]:
    """Decode one value from the start of ``data``.

    Returns the value and the number of bytes consumed. With ``exact=True``
    any bytes after the value are an error.
    """
    data = bytes(data)
    if not data:
        raise DerDecodeError("empty input")
    value, consumed = _decode(data, 0, len(data), 1)
    if exact and consumed != len(data):
        raise DerDecodeError(f"{len(data) - consumed} trailing bytes after DER value")
    return value, consumed


def decode(data: bytes) -> DerValue:
    return decode_value(data, exact=True)[0]
