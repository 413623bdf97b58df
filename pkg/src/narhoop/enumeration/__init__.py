"""Isomorphism-free enumeration of finite models by class and size."""

from .canonical import CanonicalForm, canonical_keys, canonicalize
from .oracle import generate_and_filter, scan_classes
from .tasks import (
    MODES,
    SEARCH_AXIOMS,
    EnumerationTask,
    clear_cache,
    count,
    count_table,
    default_width,
    enumerate_keys,
    enumerate_models,
    read_corpus,
    write_corpus,
)

__all__ = [
    "CanonicalForm", "EnumerationTask", "MODES", "SEARCH_AXIOMS", "canonical_keys",
    "canonicalize", "clear_cache", "count", "count_table", "default_width",
    "enumerate_keys", "enumerate_models", "generate_and_filter", "read_corpus",
    "scan_classes", "write_corpus",
]
