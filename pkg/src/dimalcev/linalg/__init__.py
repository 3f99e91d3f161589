"""Exact linear algebra over the rationals and prime fields."""

from .echelon import ModularEchelon, RationalEchelon
from .field import DEFAULT_PRIME, RATIONAL, Field, is_prime
from .matrix import (
    ExactMatrix,
    GeneratorReport,
    NewIdentityReport,
    RowCanonicalForm,
    build_block_matrix,
    dump_json,
    export_csv,
    export_matrix,
    export_triples,
    extract_new_identities,
    minimal_generators,
    orbit_span_rank,
    orbit_table,
    rank,
    rcf,
    read_triples,
    span_rank_under_permutations,
)

__all__ = [
    "DEFAULT_PRIME",
    "ExactMatrix",
    "Field",
    "GeneratorReport",
    "ModularEchelon",
    "NewIdentityReport",
    "RATIONAL",
    "RationalEchelon",
    "RowCanonicalForm",
    "build_block_matrix",
    "dump_json",
    "export_csv",
    "export_matrix",
    "export_triples",
    "extract_new_identities",
    "is_prime",
    "minimal_generators",
    "orbit_span_rank",
    "orbit_table",
    "rank",
    "rcf",
    "read_triples",
    "span_rank_under_permutations",
]
