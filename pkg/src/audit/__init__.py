"""Audit layer - doublet certificates, the full audit, families and verification."""

from .doublets import (
    BoundCheck,
    DoubletCertificate,
    ZeroPolePair,
    certificates,
    detect,
    robust_certificates,
    zero_pole_pairs,
)
from .families import ExampleFamily, example_family, growth_study
from .pipeline import AuditReport, audit, audit_function
from .verification import verify

__all__ = [
    "AuditReport",
    "BoundCheck",
    "DoubletCertificate",
    "ExampleFamily",
    "ZeroPolePair",
    "audit",
    "audit_function",
    "certificates",
    "detect",
    "example_family",
    "growth_study",
    "robust_certificates",
    "verify",
    "zero_pole_pairs",
]
