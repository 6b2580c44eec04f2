"""Sector bookkeeping for n qubits identically coupled to one oscillator.

Under the collective coupling J+a + J-a† and a uniform z field, the joint
Hilbert space splits into finite blocks H_{q,j} labelled by the conserved
charge q (eigenvalue of Q = a†a + J_z + n/2) and the total spin j.  This
module enumerates those blocks, their dimensions and basis labels, and the
pairing between blocks that share identical coupling matrices.

Half-integers are stored doubled (``jj = 2j``, ``mm = 2m``) so that all
index arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional


def j_min2(n: int) -> int:
    """Doubled minimal total spin: 0 for even n, 1 (= 2*1/2) for odd n."""
    return n & 1


@dataclass(frozen=True)
class SectorIndex:
    """One invariant block H_{q,j}; ``jj`` is the doubled spin 2j."""

    n: int
    q: int
    jj: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        if self.q < 0:
            raise ValueError(f"charge must be non-negative, got q={self.q}")
        if (self.jj ^ self.n) & 1:
            raise ValueError(f"2j={self.jj} and n={self.n} must have equal parity")
        if not j_min2(self.n) <= self.jj <= self.n:
            raise ValueError(f"2j={self.jj} outside [{j_min2(self.n)}, {self.n}]")
        if 2 * self.q < self.n - self.jj:
            raise ValueError(f"empty sector: q={self.q} < n/2 - j for 2j={self.jj}")

    @property
    def j(self) -> float:
        return self.jj / 2

    @property
    def dim(self) -> int:
        return sector_dim(self)

    def __repr__(self):
        jtxt = str(self.jj // 2) if self.jj % 2 == 0 else f"{self.jj}/2"
        return f"SectorIndex(n={self.n}, q={self.q}, j={jtxt})"


@dataclass(frozen=True)
class BasisLabel:
    """Basis vector |j,m⟩⊗|k⟩ inside a sector; ``mm`` is the doubled 2m."""

    mm: int
    k: int

    @property
    def m(self) -> float:
        return self.mm / 2


def sector_dim(idx: SectorIndex) -> int:
    """dim H_{q,j} = min{2j+1, q+1+j-n/2}."""
    return min(idx.jj + 1, idx.q + 1 + (idx.jj - idx.n) // 2)


def is_filled(idx: SectorIndex) -> bool:
    """A sector is filled once it reaches its maximal dimension 2j+1."""
    return 2 * idx.q >= idx.n + idx.jj


def multiplicity(n: int, jj: int) -> int:
    """Number of spin-j copies in (C^2)^⊗n: C(n, n/2-j)·(2j+1)/(n/2+j+1)."""
    if (jj ^ n) & 1:
        raise ValueError(f"2j={jj} and n={n} must have equal parity")
    if not 0 <= jj <= n:
        raise ValueError(f"2j={jj} outside [0, {n}]")
    num = comb(n, (n - jj) // 2) * (jj + 1)
    den = (n + jj) // 2 + 1
    assert num % den == 0
    return num // den


def enumerate_sectors(n: int, q_max: int) -> Iterator[SectorIndex]:
    """All nonempty sectors with q ≤ q_max, ordered by (q, descending j)."""
    if q_max < 0:
        raise ValueError(f"q_max must be non-negative, got {q_max}")
    for q in range(q_max + 1):
        jj_lo = max(j_min2(n), n - 2 * q)
        for jj in range(n, jj_lo - 1, -2):
            yield SectorIndex(n, q, jj)


def basis_labels(idx: SectorIndex) -> list[BasisLabel]:
    """Sector basis ordered by increasing oscillator level k (decreasing m).

    Labels satisfy m + k + n/2 = q; k runs from max(0, q-j-n/2) up to
    q+j-n/2, giving sector_dim(idx) entries.
    """
    k_lo = max(0, idx.q - (idx.jj + idx.n) // 2)
    k_hi = idx.q + (idx.jj - idx.n) // 2
    out = [BasisLabel(mm=2 * idx.q - 2 * k - idx.n, k=k) for k in range(k_lo, k_hi + 1)]
    assert len(out) == sector_dim(idx)
    return out


def accidental_partner(idx: SectorIndex) -> Optional[SectorIndex]:
    """The unique sector carrying an identical coupling matrix, if any.

    An unfilled sector (q, j) with q = n/2 + 2j' - j for a valid spin
    0 < j' < j pairs with the filled sector (q' = n/2 - j' + 2j, j');
    the charges differ by q' - q = 3(j - j').  The map is an involution.
    """
    n, q, jj = idx.n, idx.q, idx.jj
    # In both directions the partner spin candidate is 2j'' = q + j - n/2
    # (doubled); unfilled sectors pair downward, filled ones pair upward.
    t = q + (jj - n) // 2
    if (t ^ n) & 1 or t <= 0 or t > n or t == jj:
        return None
    if t < jj:  # idx is unfilled; partner is the filled spin-t sector
        return SectorIndex(n, q + 3 * (jj - t) // 2, t)
    if jj == 0:  # pairing requires the smaller spin to be strictly positive
        return None
    return SectorIndex(n, q - 3 * (t - jj) // 2, t)


def accidental_pairs(n: int, q_max: int) -> list[tuple[SectorIndex, SectorIndex]]:
    """All (unfilled, filled) partner pairs with both charges ≤ q_max."""
    pairs = []
    for idx in enumerate_sectors(n, q_max):
        if is_filled(idx):
            continue
        p = accidental_partner(idx)
        if p is not None and p.q <= q_max:
            pairs.append((idx, p))
    return pairs
