"""Signature ranks in composites of linearly disjoint real abelian fields.

Real places of a composite ``F F'`` are indexed by pairs ``(sigma, tau)``
laid out row-major, so coordinate ``sigma * right_dims + tau``. A signature
from ``F`` is constant along ``tau`` and one from ``F'`` along ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, log2
from typing import Sequence

from .errors import ClaimViolation
from .gf2 import SignVector, SpanBasis, independent_subset, rank, span_of
from .residues import Conductor, make_conductor
from .signature import build_matrix, build_modified_matrix, log2_floor


def _repunit(block: int, count: int) -> int:
    # bits at 0, block, 2*block, ...
    return ((1 << (block * count)) - 1) // ((1 << block) - 1)


def embed_left(v: SignVector, right_dims: int) -> SignVector:
    """Coordinate ``(sigma, tau)`` of the result is ``v[sigma]``."""
    if right_dims < 1:
        raise ValueError("right_dims must be positive")
    block = (1 << right_dims) - 1
    bits = 0
    x = v.bits
    while x:
        low = x & -x
        sigma = low.bit_length() - 1
        bits |= block << (sigma * right_dims)
        x ^= low
    return SignVector(v.dim * right_dims, bits)


def embed_right(w: SignVector, left_dims: int) -> SignVector:
    """Coordinate ``(sigma, tau)`` of the result is ``w[tau]``."""
    if left_dims < 1:
        raise ValueError("left_dims must be positive")
    return SignVector(w.dim * left_dims, w.bits * _repunit(w.dim, left_dims))


@dataclass(frozen=True)
class EmbeddedSpan:
    left_dims: int
    right_dims: int
    basis: SpanBasis
    left_has_all_ones: bool
    right_has_all_ones: bool
    left_count: int
    right_count: int

    @property
    def rank(self) -> int:
        return self.basis.rank

    @property
    def predicted_rank(self) -> int:
        collision = self.left_has_all_ones and self.right_has_all_ones
        return self.left_count + self.right_count - int(collision)


def _require_independent(vectors: Sequence[SignVector], side: str) -> SpanBasis:
    if not vectors:
        raise ValueError(f"{side} list is empty")
    dim = vectors[0].dim
    basis = SpanBasis(dim)
    for v in vectors:
        basis, added = basis.insert(v)
        if not added:
            raise ValueError(f"{side} signatures are linearly dependent")
    return basis


def embed_spans(left: Sequence[SignVector], right: Sequence[SignVector]) -> EmbeddedSpan:
    """Embed both lists in the product space and take the span of everything."""
    left_basis = _require_independent(left, "left")
    right_basis = _require_independent(right, "right")
    r_dims, s_dims = left[0].dim, right[0].dim
    product = span_of(
        [embed_left(v, s_dims) for v in left] + [embed_right(w, r_dims) for w in right],
        r_dims * s_dims,
    )
    return EmbeddedSpan(
        left_dims=r_dims,
        right_dims=s_dims,
        basis=product,
        left_has_all_ones=left_basis.contains(SignVector.ones(r_dims)),
        right_has_all_ones=right_basis.contains(SignVector.ones(s_dims)),
        left_count=len(left),
        right_count=len(right),
    )


def composite_rank(left: Sequence[SignVector], right: Sequence[SignVector]) -> tuple[int, int]:
    """Computed and predicted rank of the combined signatures in the product space.

    The prediction is ``r + s``, less one when the all-ones vector lies in
    both input spans. Raises ``ClaimViolation`` if they differ.
    """
    span = embed_spans(left, right)
    computed, predicted = span.rank, span.predicted_rank
    if computed != predicted:
        raise ClaimViolation(
            f"product-space rank {computed} differs from predicted {predicted}"
        )
    return computed, predicted


def circular_signature_basis(c: Conductor) -> list[SignVector]:
    """A maximal independent set among the rows of ``M`` for a prime power."""
    M = build_modified_matrix(build_matrix(c))
    rows = M.rows
    return [rows[i] for i in independent_subset(rows, M.dim)]


def composite_prime_powers(q1: int, q2: int) -> tuple[int, int]:
    """Run :func:`composite_rank` on the circular signatures of two coprime prime powers."""
    c1, c2 = make_conductor(q1), make_conductor(q2)
    if not (c1.is_prime_power and c2.is_prime_power):
        raise ValueError("both conductors must be prime powers")
    if gcd(q1, q2) != 1:
        raise ValueError(f"{q1} and {q2} are not coprime")
    return composite_rank(circular_signature_basis(c1), circular_signature_basis(c2))


def log2_ceil(m: int) -> int:
    return (m - 1).bit_length()


@dataclass(frozen=True)
class CompositeBoundReport:
    m: int
    omega: int
    theorem_value: float
    theorem_bound: int
    per_factor_bounds: tuple[tuple[int, int], ...]
    combined_bound: int


def theorem_bound(c: Conductor) -> CompositeBoundReport:
    """Lower bounds on the circular signature rank from the factorization of ``m``.

    ``theorem_bound`` is the least integer at or above ``log2(m) - 4*omega + 1``;
    ``combined_bound`` sums ``floor(log2 q) - 2`` over the prime-power
    factors ``q`` and subtracts ``omega - 1``. Both are clamped at zero,
    the per-factor terms are not.
    """
    w = c.omega
    per_factor = tuple((p**e, log2_floor(p**e) - 2) for p, e in c.factorization)
    combined = sum(b for _, b in per_factor) - (w - 1)
    return CompositeBoundReport(
        m=c.m,
        omega=w,
        theorem_value=log2(c.m) - 4 * w + 1,
        theorem_bound=max(0, log2_ceil(c.m) - 4 * w + 1),
        per_factor_bounds=per_factor,
        combined_bound=max(0, combined),
    )


COROLLARY_CONDUCTORS = (8, 9, 5, 7, 11, 13)
COROLLARY_EXCEPTION = {
    "m": 12,
    "field": "Q(sqrt(3))",
    "fundamental_unit": "2 + sqrt(3)",
    "note": "totally positive fundamental unit; not computed",
}


def corollary_check() -> list[tuple[int, int]]:
    """Circular signature ranks for the conductors where the rank must reach 2."""
    out = []
    for m in COROLLARY_CONDUCTORS:
        r = rank(build_matrix(make_conductor(m)))
        if r < 2:
            raise ClaimViolation(f"circular signature rank {r} < 2 at m={m}")
        out.append((m, r))
    return out


def two_adic_bound(archimedean_deficiency: int) -> int:
    """Upper bound on the 2-adic signature deficiency: three times the archimedean one."""
    if archimedean_deficiency < 0:
        raise ValueError("deficiency must be non-negative")
    return 3 * archimedean_deficiency


__all__ = [
    "COROLLARY_CONDUCTORS",
    "COROLLARY_EXCEPTION",
    "CompositeBoundReport",
    "EmbeddedSpan",
    "circular_signature_basis",
    "composite_prime_powers",
    "composite_rank",
    "corollary_check",
    "embed_left",
    "embed_right",
    "embed_spans",
    "theorem_bound",
    "two_adic_bound",
]
