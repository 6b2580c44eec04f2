"""Sector-projected operator matrices and their closed-form diagnostics.

The coupling g is set to 1 throughout; every circuit parameter downstream
is the dimensionless product g·t.  Within one sector the coupling
Hamiltonian J+a + J-a† is real, symmetric and tridiagonal in the basis
ordered by increasing oscillator level, with matrix elements

    ⟨j,m,k| H |j,m-1,k+1⟩ = sqrt((j+m)(j-m+1)(k+1)).

Closed forms for Tr(H² τ_{q,j}) and the sector traces of J_z and a†a are
kept in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .sectors import BasisLabel, SectorIndex, basis_labels

DEFAULT_ATOL = 1e-10


@dataclass(frozen=True)
class SectorMatrix:
    """Dense operator block on one sector, basis ordered by increasing k."""

    idx: SectorIndex
    labels: tuple[BasisLabel, ...]
    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class JSectorOperator:
    """Operator on the fixed-j tower span{|j,m⟩⊗|k⟩ : k ≤ k_max}.

    Basis ordered by (k ascending, m descending): index = k(2j+1) + (j-m).
    """

    n: int
    jj: int
    k_max: int
    mat: np.ndarray

    @property
    def dim(self) -> int:
        return (self.jj + 1) * (self.k_max + 1)


def tower_index(jj: int, mm: int, k: int) -> int:
    return k * (jj + 1) + (jj - mm) // 2


def _ladder(jj: int, mm: int) -> float:
    """(j+m)(j-m+1) for the J- matrix element out of |j,m⟩, in doubled units."""
    return (jj + mm) * (jj - mm + 2) / 4.0


def htc_block(idx: SectorIndex) -> SectorMatrix:
    """Coupling Hamiltonian on one sector: tridiagonal, zero diagonal."""
    labels = basis_labels(idx)
    d = len(labels)
    mat = np.zeros((d, d), dtype=complex)
    for i in range(d - 1):
        mm, k = labels[i].mm, labels[i].k
        # couples (m, k) to (m-1, k+1), the next label in k order
        v = np.sqrt(_ladder(idx.jj, mm) * (k + 1))
        mat[i, i + 1] = v
        mat[i + 1, i] = v
    return SectorMatrix(idx, tuple(labels), mat)


def jz_block(idx: SectorIndex) -> SectorMatrix:
    labels = basis_labels(idx)
    mat = np.diag([lab.mm / 2 for lab in labels]).astype(complex)
    return SectorMatrix(idx, tuple(labels), mat)


def number_block(idx: SectorIndex) -> SectorMatrix:
    labels = basis_labels(idx)
    mat = np.diag([float(lab.k) for lab in labels]).astype(complex)
    return SectorMatrix(idx, tuple(labels), mat)


def jx_operator(n: int, jj: int, k_max: int) -> JSectorOperator:
    """J_x on the fixed-j tower: couples m ↔ m±1 at fixed k."""
    if k_max < 0:
        raise ValueError(f"k_max must be non-negative, got {k_max}")
    d = (jj + 1) * (k_max + 1)
    mat = np.zeros((d, d), dtype=complex)
    for k in range(k_max + 1):
        for mm in range(-jj + 2, jj + 1, 2):  # element ⟨j,m|J_x|j,m-1⟩
            v = 0.5 * np.sqrt(_ladder(jj, mm))
            a = tower_index(jj, mm, k)
            b = tower_index(jj, mm - 2, k)
            mat[a, b] = v
            mat[b, a] = v
    return JSectorOperator(n, jj, k_max, mat)


def htc_tower(n: int, jj: int, k_max: int) -> JSectorOperator:
    """Coupling Hamiltonian on the fixed-j tower (couples (m,k) ↔ (m-1,k+1))."""
    d = (jj + 1) * (k_max + 1)
    mat = np.zeros((d, d), dtype=complex)
    for k in range(k_max):
        for mm in range(-jj + 2, jj + 1, 2):
            v = np.sqrt(_ladder(jj, mm) * (k + 1))
            a = tower_index(jj, mm, k)
            b = tower_index(jj, mm - 2, k + 1)
            mat[a, b] = v
            mat[b, a] = v
    return JSectorOperator(n, jj, k_max, mat)


def jz_tower(n: int, jj: int, k_max: int) -> JSectorOperator:
    d = (jj + 1) * (k_max + 1)
    diag = np.empty(d)
    for k in range(k_max + 1):
        for mm in range(jj, -jj - 2, -2):
            diag[tower_index(jj, mm, k)] = mm / 2
    return JSectorOperator(n, jj, k_max, np.diag(diag).astype(complex))


def number_tower(n: int, jj: int, k_max: int) -> JSectorOperator:
    d = (jj + 1) * (k_max + 1)
    diag = np.empty(d)
    for k in range(k_max + 1):
        diag[k * (jj + 1):(k + 1) * (jj + 1)] = k
    return JSectorOperator(n, jj, k_max, np.diag(diag).astype(complex))


def energy_variance_exact(idx: SectorIndex) -> Fraction:
    """Tr(H² τ_{q,j}) in closed form, exact."""
    n, q, jj = idx.n, idx.q, idx.jj
    j = Fraction(jj, 2)
    if 2 * q >= n + jj:
        return 2 * j * (j + 1) * (2 * q - n + 1) / 3
    s = q - Fraction(n, 2) + j
    return s * (s + 2) * (3 * j - q + Fraction(n, 2) + 1) / 6


def energy_variance(idx: SectorIndex) -> float:
    return float(energy_variance_exact(idx))


def charge_vector(idx: SectorIndex, which: str) -> Fraction:
    """Per-copy sector trace Tr(π_{q,j}(J_z)) or Tr(π_{q,j}(a†a)), exact."""
    n, q, jj = idx.n, idx.q, idx.jj
    j = Fraction(jj, 2)
    half_n = Fraction(n, 2)
    if which == "jz":
        if 2 * q > n + jj:
            return Fraction(0)
        return Fraction(1, 2) * (q + j - half_n + 1) * (q - j - half_n)
    if which == "n":
        if 2 * q > n + jj:
            return (jj + 1) * (q - half_n)
        return (q + j - half_n + 1) * (q + j - half_n) / 2
    raise ValueError(f"unknown charge vector {which!r}; use 'jz' or 'n'")


def sector_equivalence_check(idx_a: SectorIndex, idx_b: SectorIndex,
                             atol: float = DEFAULT_ATOL) -> bool:
    """Entrywise equality of the (q,j) block of n qubits with the matching
    block of n' = 2j qubits (q_b = q_a - n/2 + j)."""
    if idx_a.jj != idx_b.jj:
        raise ValueError(f"spin mismatch: 2j={idx_a.jj} vs {idx_b.jj}")
    if idx_b.q != idx_a.q - (idx_a.n - idx_a.jj) // 2 + (idx_b.n - idx_b.jj) // 2:
        raise ValueError("charges not related by q_b = q_a - (n_a - n_b)/2")
    ha, hb = htc_block(idx_a).mat, htc_block(idx_b).mat
    if ha.shape != hb.shape:
        return False
    if not np.allclose(ha, hb, atol=atol, rtol=0):
        return False
    za, zb = jz_block(idx_a).mat, jz_block(idx_b).mat
    return np.allclose(za, zb, atol=atol, rtol=0)
