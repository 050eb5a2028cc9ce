"""Signature ranks of circular units in real cyclotomic fields."""

__version__ = "0.1.0"

from .composite import (
    composite_prime_powers,
    composite_rank,
    corollary_check,
    embed_left,
    embed_right,
    theorem_bound,
    two_adic_bound,
)
from .errors import ClaimViolation
from .estimator import CircularSignatureRank
from .gf2 import SignMatrix, SignVector, SpanBasis, contains, rank, span_insert
from .residues import (
    Conductor,
    ResidueIndexMap,
    half_interval_sign,
    least_positive_residue,
    make_conductor,
)
from .signature import (
    build_matrix,
    build_matrix_odd_prime_power,
    build_matrix_two_power,
    build_modified_matrix,
    lemma_witness,
    sine_oracle_entry,
    verify_lower_bound,
)

__all__ = [
    "CircularSignatureRank",
    "ClaimViolation",
    "Conductor",
    "ResidueIndexMap",
    "SignMatrix",
    "SignVector",
    "SpanBasis",
    "build_matrix",
    "build_matrix_odd_prime_power",
    "build_matrix_two_power",
    "build_modified_matrix",
    "composite_prime_powers",
    "composite_rank",
    "contains",
    "corollary_check",
    "embed_left",
    "embed_right",
    "half_interval_sign",
    "least_positive_residue",
    "lemma_witness",
    "make_conductor",
    "rank",
    "sine_oracle_entry",
    "span_insert",
    "theorem_bound",
    "two_adic_bound",
    "verify_lower_bound",
]
