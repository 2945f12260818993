"""Exact spectra of normal Cayley graphs on the symmetric group."""
from .characters import (
    BACKEND,
    character,
    character_table,
    dimension,
    normalized_character,
)
from .connection_sets import ConnectionSetSpec, build_set, parse_selector
from .partitions import Partition, enumerate_partitions
from .spectra import Spectrum, aldous_check, spectrum, strictly_second_largest

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConnectionSetSpec",
    "Partition",
    "Spectrum",
    "aldous_check",
    "build_set",
    "character",
    "character_table",
    "dimension",
    "enumerate_partitions",
    "normalized_character",
    "parse_selector",
    "spectrum",
    "strictly_second_largest",
]
