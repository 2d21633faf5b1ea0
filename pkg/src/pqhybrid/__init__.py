"""Hybrid post-quantum X.509 toolkit: pure, composite, catalyst and chameleon certificates."""

from .catalyst import catalyst_issue, catalyst_verify
from .chameleon import chameleon_issue, chameleon_verify, reconstruct_delta
from .composite import CompositeProvider, composite_issue, composite_verify
from .der import DerValue, Oid, decode, encode_value
from .providers import KeyPair, MockProvider, get_provider, with_latency
from .registry import AlgorithmId, Registry, builtin_registry
from .x509 import Certificate, TbsCertificate, Verdict, VerifierProfile, issue, verify

__version__ = "0.1.0"

__all__ = [
    "AlgorithmId", "Certificate", "CompositeProvider", "DerValue", "KeyPair", "MockProvider", "Oid",
    "Registry", "TbsCertificate", "Verdict", "VerifierProfile", "builtin_registry", "catalyst_issue",
    "catalyst_verify", "chameleon_issue", "chameleon_verify", "composite_issue", "composite_verify",
    "decode", "encode_value", "get_provider", "issue", "reconstruct_delta", "verify", "with_latency",
]
