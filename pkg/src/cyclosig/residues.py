"""Exact residue arithmetic for cyclotomic conductors.

Everything here is integer-only: interval tests compare ``2 * r`` with the
modulus instead of dividing, so results do not depend on float precision.
Row and column indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

MAX_CONDUCTOR = 2**64 - 1


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization as ascending ``(prime, exponent)`` pairs."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


@dataclass(frozen=True)
class Conductor:
    """A validated cyclotomic conductor ``m`` (odd, or divisible by 4)."""

    m: int
    factorization: tuple[tuple[int, int], ...]
    phi_half: int

    @property
    def omega(self) -> int:
        return len(self.factorization)

    @property
    def is_prime_power(self) -> bool:
        return self.omega == 1

    @property
    def is_two_power(self) -> bool:
        return self.is_prime_power and self.factorization[0][0] == 2

    @property
    def is_odd_prime_power(self) -> bool:
        return self.is_prime_power and self.factorization[0][0] != 2

    @property
    def prime(self) -> int:
        if not self.is_prime_power:
            raise ValueError(f"m={self.m} is not a prime power")
        return self.factorization[0][0]

    @property
    def exponent(self) -> int:
        if not self.is_prime_power:
            raise ValueError(f"m={self.m} is not a prime power")
        return self.factorization[0][1]

    @property
    def kind(self) -> str:
        if self.is_two_power:
            return "two-power"
        if self.is_odd_prime_power:
            return "odd-prime-power"
        return "composite"


def make_conductor(m: int) -> Conductor:
    """Validate ``m`` and return its :class:`Conductor`.

    Raises ``ValueError`` for ``m < 3``, ``m = 2 (mod 4)`` or ``m`` wider
    than 64 bits.
    """
    if isinstance(m, bool) or int(m) != m:
        raise ValueError(f"conductor must be an integer, got {m!r}")
    m = int(m)
    if m < 3:
        raise ValueError(f"m={m}: conductor must be at least 3")
    if m % 4 == 2:
        raise ValueError(f"m={m}: m ≡ 2 (mod 4) excluded")
    if m > MAX_CONDUCTOR:
        raise ValueError(f"m={m}: conductor exceeds 64 bits")
    factors = tuple(factorize(m))
    phi = m
    for p, _ in factors:
        phi = phi // p * (p - 1)
    return Conductor(m=m, factorization=factors, phi_half=phi // 2)


def least_positive_residue(x: int, modulus: int) -> int:
    """Representative of ``x`` mod ``modulus`` in ``[1, modulus]``."""
    r = x % modulus
    return modulus if r == 0 else r


def half_interval_sign(r: int, modulus: int) -> int:
    """0 if ``r`` lies in ``(0, modulus/2)``, 1 if in ``(modulus/2, modulus)``."""
    if 2 * r == modulus:
        raise ValueError(f"residue {r} is exactly half of {modulus}")
    return 0 if 2 * r < modulus else 1


@dataclass(frozen=True)
class ResidueIndexMap:
    """Coprime residues ``1 <= a < m/2`` in ascending order, with 1-based positions.

    ``residues`` is a read-only ``int64`` array.
    """

    conductor: Conductor
    residues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m = self.conductor.m
        a = np.arange(1, (m + 1) // 2, dtype=np.int64)
        keep = np.ones(a.shape, dtype=bool)
        for p, _ in self.conductor.factorization:
            keep &= a % p != 0
        residues = a[keep]
        residues.flags.writeable = False
        object.__setattr__(self, "residues", residues)

    def __len__(self) -> int:
        return len(self.residues)

    def index_of(self, a: int) -> int:
        m = self.conductor.m
        if not 1 <= a or 2 * a >= m or gcd(a, m) != 1:
            raise ValueError(f"{a} is not a coprime residue in [1, {m}/2)")
        if self.conductor.is_odd_prime_power:
            p = self.conductor.prime
            return a - (a - 1) // p
        return int(np.searchsorted(self.residues, a)) + 1

    def residue_at(self, i: int) -> int:
        if not 1 <= i <= len(self.residues):
            raise IndexError(f"index {i} outside 1..{len(self.residues)}")
        if self.conductor.is_odd_prime_power:
            p = self.conductor.prime
            return i + (i - 1) // (p - 1)
        return int(self.residues[i - 1])


def index_of(a: int, index_map: ResidueIndexMap) -> int:
    return index_map.index_of(a)


def residue_at(i: int, index_map: ResidueIndexMap) -> int:
    return index_map.residue_at(i)


def coprime_half_residues(m: int) -> list[int]:
    """Ascending ``a`` with ``1 <= a < m/2`` and ``gcd(a, m) = 1``."""
    return ResidueIndexMap(make_conductor(m)).residues.tolist()


__all__ = [
    "Conductor",
    "ResidueIndexMap",
    "make_conductor",
    "factorize",
    "least_positive_residue",
    "half_interval_sign",
    "index_of",
    "residue_at",
    "coprime_half_residues",
]
