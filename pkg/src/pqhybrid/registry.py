"""Known algorithms: names, object identifiers, roles, security levels, sizes.

The post-quantum and composite identifiers live under the private arc
``1.3.9999``; they are placeholders, not IETF-assigned values.
ECDSA-P256 uses the real ``ecdsa-with-SHA256`` identifier.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Union

from .der import Oid

VARIABLE = "variable"

Size = Union[int, str]


class Role(str, enum.Enum):
    SIGNATURE = "signature"
    KEM = "kem"
    COMPOSITE = "composite-signature"


@dataclass(frozen=True)
class AlgorithmId:
    name: str
    oid: Oid
    role: Role
    security_level: Optional[int]
    public_key_len: Size
    signature_len: Optional[Size] = None
    component_names: tuple = ()
    # inclusive (min, max) for VARIABLE signature lengths
    signature_range: Optional[tuple] = None
    has_provider: bool = True

    @property
    def is_classical(self) -> bool:
        return self.security_level is None

    @property
    def family(self) -> str:
        return self.name.rsplit("-", 1)[0]


class RegistryError(KeyError):
    pass


class Registry:
    """Bidirectional name/OID index over :class:`AlgorithmId` entries."""

    def __init__(self, entries=()):
        self._by_name: dict[str, AlgorithmId] = {}
        self._by_oid: dict[Oid, AlgorithmId] = {}
        for entry in entries:
            self.register(entry)

    def register(self, entry: AlgorithmId) -> None:
        if entry.name in self._by_name:
            raise RegistryError(f"duplicate algorithm name {entry.name}")
        if entry.oid in self._by_oid:
            raise RegistryError(f"duplicate OID {entry.oid} ({entry.name})")
        if entry.security_level is not None and not 1 <= entry.security_level <= 5:
            raise RegistryError(f"{entry.name}: security level must be 1-5")
        if entry.role is Role.COMPOSITE:
            if len(entry.component_names) != 2:
                raise RegistryError(f"{entry.name}: composite needs exactly two components")
            for comp in entry.component_names:
                target = self._by_name.get(comp)
                if target is None or target.role is not Role.SIGNATURE:
                    raise RegistryError(f"{entry.name}: component {comp} is not a registered signature algorithm")
        elif entry.component_names:
            raise RegistryError(f"{entry.name}: only composites have components")
        if entry.role is Role.KEM and entry.signature_len is not None:
            raise RegistryError(f"{entry.name}: KEM entries have no signature length")
        self._by_name[entry.name] = entry
        self._by_oid[entry.oid] = entry

    def get(self, name: str) -> AlgorithmId:
        try:
            return self._by_name[name]
        except KeyError:
            raise RegistryError(f"unknown algorithm {name!r}") from None

    __getitem__ = get

    def lookup(self, name: str) -> Optional[AlgorithmId]:
        return self._by_name.get(name)

    def lookup_by_oid(self, oid) -> Optional[AlgorithmId]:
        if not isinstance(oid, Oid):
            oid = Oid(oid)
        return self._by_oid.get(oid)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def __iter__(self) -> Iterator[AlgorithmId]:
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def components(self, entry: AlgorithmId) -> tuple:
        return tuple(self.get(n) for n in entry.component_names)


# FIPS 205 Table 2: (n-level, variant) -> (public key, signature) bytes
_SLH_DSA_SIZES = {
    ("128", "s"): (32, 7856), ("128", "f"): (32, 17088),
    ("192", "s"): (48, 16224), ("192", "f"): (48, 35664),
    ("256", "s"): (64, 29792), ("256", "f"): (64, 49856),
}
_SLH_DSA_LEVEL = {"128": 1, "192": 3, "256": 5}

MOCK_ARC = "1.3.9999.1"
COMPOSITE_ARC = "1.3.9999.2"
EXTENSION_ARC = "1.3.9999.3"

ECDSA_WITH_SHA256 = Oid("1.2.840.10045.4.3.2")
COMPOSITE_MLDSA44_P256 = "id-MLDSA44-ECDSA-P256-SHA256"


def _builtin_entries() -> list:
    entries = [
        AlgorithmId("ML-DSA-44", Oid(f"{MOCK_ARC}.1"), Role.SIGNATURE, 2, 1312, 2420),
        AlgorithmId("ML-DSA-65", Oid(f"{MOCK_ARC}.2"), Role.SIGNATURE, 3, 1952, 3309),
        AlgorithmId("ML-DSA-87", Oid(f"{MOCK_ARC}.3"), Role.SIGNATURE, 5, 2592, 4627),
    ]
    arc = 4
    # Table ordering: grouped by level, SHA2 before SHAKE, s before f
    for n in ("128", "192", "256"):
        for variant in ("s", "f"):
            for hash_name in ("SHA2", "SHAKE"):
                pk, sig = _SLH_DSA_SIZES[(n, variant)]
                entries.append(AlgorithmId(
                    f"SLH-DSA-{hash_name}-{n}{variant}", Oid(f"{MOCK_ARC}.{arc}"), Role.SIGNATURE,
                    _SLH_DSA_LEVEL[n], pk, sig, has_provider=False))
                arc += 1
    entries += [
        AlgorithmId("ML-KEM-512", Oid(f"{MOCK_ARC}.16"), Role.KEM, 1, 800),
        AlgorithmId("ML-KEM-768", Oid(f"{MOCK_ARC}.17"), Role.KEM, 3, 1184),
        AlgorithmId("ML-KEM-1024", Oid(f"{MOCK_ARC}.18"), Role.KEM, 5, 1568),
        AlgorithmId("ECDSA-P256", ECDSA_WITH_SHA256, Role.SIGNATURE, None, 65, VARIABLE,
                    signature_range=(70, 72)),
        AlgorithmId(COMPOSITE_MLDSA44_P256, Oid(f"{COMPOSITE_ARC}.1"), Role.COMPOSITE, 2,
                    VARIABLE, VARIABLE, component_names=("ML-DSA-44", "ECDSA-P256")),
    ]
    return entries


@functools.lru_cache(maxsize=None)
def builtin_registry() -> Registry:
    """The shared, read-only registry of built-in algorithms."""
    return Registry(_builtin_entries())


def with_sizes(registry: Registry, overrides: dict) -> Registry:
    """Copy of ``registry`` with size profiles replaced.

    ``overrides`` maps algorithm name to ``(public_key_len, signature_len)``.
    """
    wanted = dict(overrides)
    out = Registry()
    for entry in registry:
        if entry.name in wanted:
            pk, sig = wanted.pop(entry.name)
            entry = replace(entry, public_key_len=pk, signature_len=sig)
        out.register(entry)
    if wanted:
        raise RegistryError(f"unknown algorithms in overrides: {sorted(wanted)}")
    return out
