"""Verification suites over ranges of conductors.

Each suite returns a list of :class:`Check` lines. A failed line means
exact computation contradicts a proven statement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Callable

import numpy as np

from .composite import (
    COROLLARY_CONDUCTORS,
    COROLLARY_EXCEPTION,
    circular_signature_basis,
    embed_spans,
    theorem_bound,
)
from .errors import ClaimViolation
from .gf2 import SignMatrix, SignVector, SpanBasis, rank
from .residues import ResidueIndexMap, factorize, make_conductor
from .signature import (
    build_matrix,
    build_modified_matrix,
    column_witness,
    lemma_range,
    lemma_witness,
    log2_floor,
    modified_rows,
    sine_oracle_signs,
)


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "OK" if self.passed else "FAIL"
        return f"{self.label} {self.detail} {status}".replace("  ", " ")


def prime_powers(lo: int, hi: int, odd_only: bool = False) -> list[int]:
    out = []
    for m in range(max(lo, 3), hi + 1):
        if m % 4 == 2:
            continue
        f = factorize(m)
        if len(f) == 1 and not (odd_only and f[0][0] == 2):
            out.append(m)
    return out


def lemma_suite(max_m: int = 10_000) -> list[Check]:
    """Parity pattern and column witness for every odd prime power and every ``k``."""
    checks = []
    for m in prime_powers(3, max_m, odd_only=True):
        c = make_conductor(m)
        ks = lemma_range(m)
        if not ks:
            continue
        rows = modified_rows(c, [2**d for d in range(1, ks[-1] + 1)])
        bad = []
        for k in ks:
            try:
                w = lemma_witness(c, k)
            except ClaimViolation as exc:
                bad.append(f"k={k}: {exc}")
                continue
            reading = column_witness(rows, w)
            if reading != (0,) * (k - 1) + (1,):
                bad.append(f"k={k}: column {w.chosen_B} reads {reading}")
        detail = f"k=1..{ks[-1]}" + (f" [{'; '.join(bad)}]" if bad else "")
        checks.append(Check(f"m={m}", not bad, detail))
    return checks


def bound_suite(max_m: int = 10_000) -> list[Check]:
    """``rank(M) >= floor(log2 m) - 2`` and ``>= theorem_bound`` for prime powers."""
    checks = []
    for m in prime_powers(3, max_m):
        c = make_conductor(m)
        r = rank(build_modified_matrix(build_matrix(c)))
        log_bound = log2_floor(m) - 2
        tb = theorem_bound(c).theorem_bound
        ok = r >= log_bound and r >= tb
        checks.append(Check(f"m={m}", ok, f"rank={r} log_bound={log_bound} theorem_bound={tb}"))
    return checks


def weber_suite(max_m: int = 8192) -> list[Check]:
    checks = []
    n = 2
    while 2**n <= max_m:
        r = rank(build_matrix(make_conductor(2**n)))
        checks.append(Check(f"m=2^{n}", r == 2 ** (n - 2), f"rank={r} expected=2^({n}-2)={2 ** (n - 2)}"))
        n += 1
    return checks


def oracle_disagreements(m: int) -> tuple[int, int]:
    """Entries compared and disagreements between ``C`` and the sine oracle (rows ``a >= 2``)."""
    c = make_conductor(m)
    C = build_matrix(c)
    exact = C.to_bool()[1:]
    labels = ResidueIndexMap(c).residues
    floats = sine_oracle_signs(c, rows=labels[1:], cols=labels)
    return exact.size, int(np.count_nonzero(exact != floats))


def oracle_suite(max_m: int = 2000) -> list[Check]:
    checks = []
    for m in prime_powers(3, max_m):
        total, bad = oracle_disagreements(m)
        checks.append(Check(f"m={m}", bad == 0, f"entries={total} disagreements={bad}"))
    return checks


def random_independent(rng: random.Random, dim: int, count: int,
                       with_all_ones: bool = False) -> list[SignVector]:
    """``count`` random independent vectors; optionally put all-ones in their span."""
    basis = SpanBasis(dim)
    out = []
    if with_all_ones and count:
        v = SignVector.ones(dim)
        basis, _ = basis.insert(v)
        out.append(v)
    while len(out) < count:
        v = SignVector(dim, rng.getrandbits(dim))
        basis, added = basis.insert(v)
        if added:
            out.append(v)
    if with_all_ones and len(out) > 1:
        # hide the all-ones vector inside a combination
        out[0] = out[0] ^ out[-1]
    rng.shuffle(out)
    return out


def random_composite_instance(rng: random.Random, max_dims: int = 12, max_rank: int = 6):
    r_dims = rng.randint(1, max_dims)
    s_dims = rng.randint(1, max_dims)
    r = rng.randint(1, min(max_rank, r_dims))
    s = rng.randint(1, min(max_rank, s_dims))
    left = random_independent(rng, r_dims, r, rng.random() < 0.5)
    right = random_independent(rng, s_dims, s, rng.random() < 0.5)
    return left, right


def brute_force_product_rank(left: list[SignVector], right: list[SignVector]) -> int:
    """Rank of the embedded vectors, built coordinate-wise with numpy instead of bit tricks."""
    r_dims, s_dims = left[0].dim, right[0].dim
    rows = [np.repeat(np.array(v.to_list(), dtype=bool), s_dims) for v in left]
    rows += [np.tile(np.array(w.to_list(), dtype=bool), r_dims) for w in right]
    return rank(SignMatrix.from_bool(np.stack(rows)))


def _product_check(label: str, left, right) -> Check:
    span = embed_spans(left, right)
    brute = brute_force_product_rank(left, right)
    ok = span.rank == span.predicted_rank == brute
    return Check(label, ok, f"rank={span.rank} predicted={span.predicted_rank} brute={brute}")


def composite_suite(max_m: int = 200, trials: int = 1000, seed: int = 0) -> list[Check]:
    """Random synthetic spans, then circular signatures of coprime prime-power pairs."""
    rng = random.Random(seed)
    synthetic = [_product_check("", *random_composite_instance(rng)) for _ in range(trials)]
    bad = sum(not c.passed for c in synthetic)
    checks = [Check(f"synthetic trials={trials}", bad == 0, f"mismatches={bad}")]
    qs = prime_powers(3, max_m)
    bases = {q: circular_signature_basis(make_conductor(q)) for q in qs}
    for i, q1 in enumerate(qs):
        for q2 in qs[i + 1:]:
            if gcd(q1, q2) == 1:
                checks.append(_product_check(f"pair={q1}x{q2}", bases[q1], bases[q2]))
    return checks


def corollary_suite() -> list[Check]:
    checks = []
    for m in COROLLARY_CONDUCTORS:
        r = rank(build_matrix(make_conductor(m)))
        checks.append(Check(f"m={m}", r >= 2, f"rank={r} >= 2"))
    ex = COROLLARY_EXCEPTION
    checks.append(Check(f"m={ex['m']}", True,
                        f"documented exception: {ex['field']} has totally positive "
                        f"fundamental unit {ex['fundamental_unit']} (not computed)"))
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "lemma": lemma_suite,
    "bound": bound_suite,
    "weber": weber_suite,
    "oracle": oracle_suite,
    "composite": composite_suite,
    "corollary": corollary_suite,
}


def run_suite(name: str, max_m: int | None = None) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in run_suite(key, max_m)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    if name == "corollary":
        return corollary_suite()
    return SUITES[name]() if max_m is None else SUITES[name](max_m)
