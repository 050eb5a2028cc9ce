"""Signature matrices of circular units for prime-power conductors.

Row ``a`` of the circular unit signature matrix ``C`` holds the signs of the
conjugates of the circular unit indexed by ``a``; row ``a = 1`` is the
signature of -1 (all ones). ``M`` is ``C`` with row 1 added to every other
row. Entries are computed with integer residues only; the sine-ratio oracle
is kept separate for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numba
import numpy as np

from .errors import ClaimViolation
from .gf2 import SignMatrix, n_words, pack_bool_rows, rank
from .residues import Conductor, ResidueIndexMap, half_interval_sign, least_positive_residue

ODD_PRIME_POWER = "odd-prime-power"
TWO_POWER = "two-power"

_SINE_FLOOR = 1e-9


def log2_floor(m: int) -> int:
    return m.bit_length() - 1


def entry_modulus(c: Conductor) -> int:
    """Modulus for the interval rule: ``m`` for odd prime powers, ``2m`` for 2-powers."""
    return 2 * c.m if c.is_two_power else c.m


def exact_entry(a: int, b: int, c: Conductor) -> int:
    """Entry of ``C`` at row ``a``, column ``b`` (``a >= 2``), by the interval rule."""
    modulus = entry_modulus(c)
    return half_interval_sign(least_positive_residue(a * b, modulus), modulus)


@numba.njit(cache=True)
def _pack_signs(rows, cols, modulus, width, above):
    # bit j of row i is set iff the residue of rows[i]*cols[j] is above
    # modulus/2 (``above``) or below it (not ``above``)
    words = np.zeros((rows.shape[0], width), dtype=np.uint64)
    for i in range(rows.shape[0]):
        a = rows[i]
        for j in range(cols.shape[0]):
            r = (a * cols[j]) % modulus
            if (2 * r > modulus) == above:
                words[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    return words


def _build(labels: np.ndarray, modulus: int) -> SignMatrix:
    a = np.asarray(labels, dtype=np.int64)
    words = _pack_signs(a, a, modulus, n_words(len(labels)), True)
    words[0, :] = pack_bool_rows(np.ones((1, len(labels)), dtype=bool))[0]
    return SignMatrix(words, labels, labels)


def build_matrix_odd_prime_power(c: Conductor) -> SignMatrix:
    """Circular unit signature matrix ``C`` for ``m = p^n`` with ``p`` odd."""
    if not c.is_odd_prime_power:
        raise ValueError(f"m={c.m} is not an odd prime power")
    return _build(ResidueIndexMap(c).residues, c.m)


def build_matrix_two_power(c: Conductor) -> SignMatrix:
    """Circular unit signature matrix ``C`` for ``m = 2^n``, ``n >= 2``.

    Labels are odd residues below ``2^(n-1)``; entries use residues of
    ``a*b`` modulo ``2^(n+1)``. For ``m = 4`` this is the 1x1 matrix ``[[1]]``.
    """
    if not c.is_two_power:
        raise ValueError(f"m={c.m} is not a power of 2")
    return _build(ResidueIndexMap(c).residues, 2 * c.m)


def build_matrix(c: Conductor) -> SignMatrix:
    if c.is_two_power:
        return build_matrix_two_power(c)
    if c.is_odd_prime_power:
        return build_matrix_odd_prime_power(c)
    raise ValueError(
        f"composite m={c.m}: matrix construction out of scope; use `bound`"
    )


def build_modified_matrix(C: SignMatrix) -> SignMatrix:
    """``M``: row 1 of ``C`` XORed into every other row."""
    words = C.words.copy()
    words[1:] ^= words[0]
    return SignMatrix(words, C.row_labels, C.col_labels)


def modified_rows(c: Conductor, row_labels) -> SignMatrix:
    """The rows of ``M`` with the given labels, without building the rest."""
    if not c.is_prime_power:
        raise ValueError(f"m={c.m} is not a prime power")
    index_map = ResidueIndexMap(c)
    row_labels = tuple(row_labels)
    for a in row_labels:
        index_map.index_of(a)  # validates the label
    cols = np.asarray(index_map.residues, dtype=np.int64)
    words = _pack_signs(np.asarray(row_labels, dtype=np.int64), cols,
                        entry_modulus(c), n_words(len(cols)), False)
    for i, a in enumerate(row_labels):
        if a == 1:
            words[i, :] = pack_bool_rows(np.ones((1, len(cols)), dtype=bool))[0]
    return SignMatrix(words, row_labels, index_map.residues)


def sine_oracle_entry(a: int, b: int, c: Conductor) -> int:
    """Sign of the conjugate of circular unit ``a`` under ``sigma_b``, in floating point.

    Returns 1 when the sine ratio is negative. Raises ``ValueError`` when a
    sine is too close to zero for double precision to be trusted.
    """
    if c.is_two_power:
        num = math.sin(math.pi * a * b / c.m)
        den = math.sin(math.pi * b / c.m)
    elif c.is_odd_prime_power:
        num = math.sin(2 * math.pi * a * b / c.m)
        den = math.sin(2 * math.pi * b / c.m)
    else:
        raise ValueError(f"m={c.m} is not a prime power")
    if abs(num) < _SINE_FLOOR or abs(den) < _SINE_FLOOR:
        raise ValueError(f"sine too small at a={a}, b={b}, m={c.m}")
    return 1 if num / den < 0 else 0


def sine_oracle_signs(c: Conductor, rows=None, cols=None) -> np.ndarray:
    """Vectorized :func:`sine_oracle_entry` over row and column labels."""
    labels = np.asarray(ResidueIndexMap(c).residues, dtype=np.float64)
    a = labels if rows is None else np.asarray(rows, dtype=np.float64)
    b = labels if cols is None else np.asarray(cols, dtype=np.float64)
    scale = np.pi / c.m if c.is_two_power else 2 * np.pi / c.m
    num = np.sin(scale * np.outer(a, b))
    den = np.sin(scale * b)
    if num.size and (np.abs(num).min() < _SINE_FLOOR or np.abs(den).min() < _SINE_FLOOR):
        raise ValueError(f"sine too small for the float oracle at m={c.m}")
    return (num / den) < 0


@dataclass(frozen=True)
class LemmaWitness:
    m: int
    k: int
    b0: int
    b1: int
    chosen_B: int
    parities: tuple[tuple[int, int], ...]


def _floor_parities(b: int, m: int, k: int) -> list[tuple[int, int]]:
    return [(d, ((2 ** (d + 1) * b) // m) % 2) for d in range(1, k + 1)]


def _pattern_holds(parities: list[tuple[int, int]]) -> bool:
    *head, (_, last) = parities
    return all(par == 1 for _, par in head) and last == 0


def lemma_witness(c: Conductor, k: int) -> LemmaWitness:
    """Check the floor-parity pattern at ``b0(k)`` and ``b1(k)`` and pick ``B(k)``.

    ``floor(2^(d+1) b / m)`` must be odd for ``d < k`` and even for ``d = k``
    at both candidates. ``B(k)`` is ``b0`` when coprime to ``m``, else ``b1``.
    """
    if not c.is_odd_prime_power:
        raise ValueError(f"m={c.m} is not an odd prime power")
    m = c.m
    if k < 1:
        raise ValueError("k must be at least 1")
    if m <= 2 ** (k + 2):
        raise ValueError(f"need m > 2^(k+2); got m={m}, k={k}")
    b0 = ((2**k - 2) * m) // 2 ** (k + 1) + 1
    b1 = b0 + 1
    for b in (b0, b1):
        if not _pattern_holds(_floor_parities(b, m, k)):
            raise ClaimViolation(f"parity pattern fails at m={m}, k={k}, b={b}")
    chosen = b0 if gcd(b0, m) == 1 else b1
    if gcd(chosen, m) != 1:
        raise ClaimViolation(f"neither b0={b0} nor b1={b1} is coprime to m={m}")
    if not (1 <= chosen and 2 * chosen < m):
        raise ClaimViolation(f"B(k)={chosen} outside [1, m/2) for m={m}, k={k}")
    return LemmaWitness(m, k, b0, b1, chosen, tuple(_floor_parities(chosen, m, k)))


def lemma_range(m: int) -> range:
    """All ``k >= 1`` with ``2^(k+2) < m``."""
    kmax = 0
    while 2 ** (kmax + 3) < m:
        kmax += 1
    return range(1, kmax + 1)


def column_witness(M: SignMatrix, witness: LemmaWitness) -> tuple[int, ...]:
    """Entries of ``M`` in column ``B(k)`` on rows ``2, 4, ..., 2^k``."""
    return tuple(M.entry(2**d, witness.chosen_B) for d in range(1, witness.k + 1))


@dataclass(frozen=True)
class TwoPowerColumnReport:
    m: int
    columns: dict[int, tuple[int, ...]]
    row_rank: int
    claimed_rank: int

    @property
    def supports_claim(self) -> bool:
        return self.row_rank >= self.claimed_rank


def two_power_column_check(c: Conductor, M: SignMatrix | None = None) -> TwoPowerColumnReport:
    """Inspect ``M`` on the rows ``2^d - 1`` for ``m = 2^n``.

    For each ``k`` in ``1..n-2`` records the entries of column
    ``2^n - 2^(n-k+1) + 1`` on rows ``2^d - 1``, ``d = 1..k+1``. The column
    label is folded into ``[1, 2^(n-1))`` since the sine ratio is unchanged
    under ``b -> -b`` and ``b -> 2^n - b``. ``row_rank`` is the rank of all
    rows ``2^d - 1 < 2^(n-1)``, to compare with ``n - 2``. Nothing is asserted.
    """
    if not c.is_two_power:
        raise ValueError(f"m={c.m} is not a power of 2")
    n = c.exponent
    if M is None:
        M = build_modified_matrix(build_matrix_two_power(c))
    labels = [2**d - 1 for d in range(1, n) if 2**d - 1 < 2 ** (n - 1)]
    columns = {}
    for k in range(1, n - 1):
        col = (2**n - 2 ** (n - k + 1) + 1) % 2**n
        if 2 * col > 2**n:
            col = 2**n - col
        columns[k] = tuple(M.entry(a, col) for a in labels[: k + 1])
    sub = SignMatrix.from_vectors([M.row_for(a) for a in labels])
    return TwoPowerColumnReport(c.m, columns, rank(sub), max(n - 2, 0))


@dataclass(frozen=True)
class RankReport:
    m: int
    matrix_kind: str
    rank: int
    phi_half: int
    circular_deficiency: int
    log_bound: int
    bound_satisfied: bool
    weber_full_rank: bool | None = None


def verify_lower_bound(c: Conductor) -> RankReport:
    """Rank the circular unit signature matrix of a prime power and compare with ``floor(log2 m) - 2``."""
    C = build_matrix(c)
    r = rank(build_modified_matrix(C))
    log_bound = log2_floor(c.m) - 2
    weber = None
    if c.is_two_power:
        weber = r == 2 ** (c.exponent - 2)
    return RankReport(
        m=c.m,
        matrix_kind=c.kind,
        rank=r,
        phi_half=c.phi_half,
        circular_deficiency=c.phi_half - r,
        log_bound=log_bound,
        bound_satisfied=r >= log_bound,
        weber_full_rank=weber,
    )


__all__ = [
    "LemmaWitness",
    "RankReport",
    "build_matrix",
    "build_matrix_odd_prime_power",
    "build_matrix_two_power",
    "build_modified_matrix",
    "column_witness",
    "exact_entry",
    "lemma_range",
    "lemma_witness",
    "modified_rows",
    "sine_oracle_entry",
    "sine_oracle_signs",
    "TwoPowerColumnReport",
    "two_power_column_check",
    "verify_lower_bound",
]
