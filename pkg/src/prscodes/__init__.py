"""Projective Reed-Solomon codes over finite fields and quantum codes derived from them."""

from .galois import FieldElement, FieldSpec, ExtensionPair, extension, field_create, pick_xi, rel_trace

__version__ = "0.1.0"

__all__ = [
    "ExtensionPair",
    "FieldElement",
    "FieldSpec",
    "extension",
    "field_create",
    "pick_xi",
    "rel_trace",
]
