"""Numerical checks of the algebraic structure behind the gate set.

Covers commutator closures and their ranks per sector, the ladder
anharmonicity condition guaranteeing per-sector universality, separation of
coupling-energy variances between same-dimension sectors, the conserved
exchange operator S pairing those sectors, and the two-oscillator
relabeling W that explains the pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .operators import htc_block, energy_variance_exact
from .sectors import (SectorIndex, accidental_partner, basis_labels,
                      enumerate_sectors, j_min2, sector_dim)


@dataclass
class OperatorBasis:
    """Hilbert-Schmidt-orthonormal basis of a real Lie algebra of
    skew-Hermitian matrices."""

    elements: tuple
    rank: int


def lie_closure(generators, tol: float = 1e-8,
                max_commutators: int = 5000) -> OperatorBasis:
    """Breadth-first commutator closure with Gram-Schmidt rank tracking.

    Deterministic: new elements pair with all earlier ones in order, and
    candidates below the relative cutoff are discarded.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        return OperatorBasis((), 0)
    d = gens[0].shape[0]
    for g in gens:
        if g.shape != (d, d):
            raise ValueError("generators must share one square shape")
        if np.abs(g + g.conj().T).max() > 1e-9 * max(1.0, np.abs(g).max()):
            raise ValueError("generators must be skew-Hermitian")

    basis: list[np.ndarray] = []
    flat = np.zeros((0, d * d), dtype=complex)

    def try_add(cand: np.ndarray) -> bool:
        nonlocal flat
        nrm = np.linalg.norm(cand)
        if nrm < 1e-14:
            return False
        coeffs = (flat.conj() @ cand.ravel()).real
        resid = cand - (coeffs @ flat).reshape(d, d)
        rn = np.linalg.norm(resid)
        if rn <= tol * nrm:
            return False
        resid /= rn
        basis.append(resid)
        flat = np.vstack([flat, resid.ravel()])
        return True

    for g in gens:
        try_add(g)
    frontier = 0
    used = 0
    while frontier < len(basis) and used < max_commutators:
        k = frontier
        frontier += 1
        for i in range(k):
            if used >= max_commutators:
                break
            used += 1
            comm = basis[k] @ basis[i] - basis[i] @ basis[k]
            try_add(comm)
    return OperatorBasis(tuple(basis), len(basis))


def sector_rank_check(idx: SectorIndex, tol: float = 1e-8) -> bool:
    """True iff the coupling pulse and its z-conjugate generate the full
    special unitary algebra on the sector (rank d²-1); vacuous for d = 1."""
    d = sector_dim(idx)
    if d < 2:
        return True
    h = htc_block(idx).mat
    jz = np.diag([lab.mm / 2 for lab in basis_labels(idx)]).astype(complex)
    hbar = 1j * (jz @ h - h @ jz)
    basis = lie_closure([1j * h, 1j * hbar], tol=tol)
    return basis.rank == d * d - 1


@dataclass
class AnharmonicityReport:
    idx: SectorIndex
    ys: list[int]
    ladder_sq: list[Fraction]
    second_diffs: list[Fraction]
    expected: list[Fraction]
    matches_closed_form: bool
    condition_holds: bool


def _ladder_sq(idx: SectorIndex, y: int) -> Fraction:
    """⟨y|A+A-|y⟩ for the sector ladder, exact."""
    n, q, jj = idx.n, idx.q, idx.jj
    spin = Fraction(jj * (jj + 2), 4)
    step = Fraction((2 * y - n) * (2 * y - n + 2), 4)
    return (spin - step) * (q - y)


def anharmonicity_check(idx: SectorIndex) -> AnharmonicityReport:
    """Second differences of the sector ladder (concave sign convention,
    2a²_y - a²_{y+1} - a²_{y-1}), with the closed form 2(n+q-1) - 6y.
    A non-constant profile separates the effective level gaps, which is
    exactly what the per-sector universality argument needs."""
    d = sector_dim(idx)
    y_min = (idx.n - idx.jj) // 2
    ys = list(range(y_min, y_min + d - 1))  # couplings a_y, y_min..y_min+d-2

    def a2(y: int) -> Fraction:
        if y < y_min or y > y_min + d - 2:
            return Fraction(0)  # boundary convention
        return _ladder_sq(idx, y)

    ladder = [a2(y) for y in ys]
    diffs = [2 * a2(y) - a2(y + 1) - a2(y - 1) for y in ys]
    expected = [Fraction(2 * (idx.n + idx.q - 1) - 6 * y) for y in ys]
    matches = diffs == expected
    condition = all(diffs[i] != diffs[0] for i in range(1, len(diffs)))
    return AnharmonicityReport(idx, ys, ladder, diffs, expected, matches,
                               condition)


def spin_ladder_anharmonicity(jj: int) -> bool:
    """Same condition for the bare spin ladder (no oscillator): the second
    differences are constant, so the condition fails whenever there is more
    than one coupling."""
    a2 = [Fraction((jj - mm) * (jj + mm + 2), 8) for mm in range(-jj, jj, 2)]

    def at(i: int) -> Fraction:
        return a2[i] if 0 <= i < len(a2) else Fraction(0)

    diffs = [2 * at(i) - at(i + 1) - at(i - 1) for i in range(len(a2))]
    return all(diffs[i] != diffs[0] for i in range(1, len(diffs)))


@dataclass
class VarianceSeparationReport:
    n: int
    q_max: int
    pairs_checked: int
    partner_pairs: list
    equal_nonpartner: list
    ok: bool


def variance_separation_check(n: int, q_max: int) -> VarianceSeparationReport:
    """Among sectors of equal dimension ≥ 2, the coupling-energy variance
    must coincide exactly on partnered pairs and nowhere else."""
    sectors = [s for s in enumerate_sectors(n, q_max) if sector_dim(s) >= 2]
    partner_pairs = []
    equal_nonpartner = []
    checked = 0
    for i, a in enumerate(sectors):
        for b in sectors[i + 1:]:
            if sector_dim(a) != sector_dim(b):
                continue
            checked += 1
            equal = energy_variance_exact(a) == energy_variance_exact(b)
            partnered = accidental_partner(a) == b
            if partnered:
                partner_pairs.append((a, b, equal))
            elif equal:
                equal_nonpartner.append((a, b))
    ok = not equal_nonpartner and all(eq for _, _, eq in partner_pairs)
    return VarianceSeparationReport(n, q_max, checked, partner_pairs,
                                    equal_nonpartner, ok)


def _truncated_basis(n: int, q_max: int) -> list[tuple[int, int, int]]:
    """(jj, mm, k) labels with charge ≤ q_max, ordered by (q, j desc, k)."""
    out = []
    for idx in enumerate_sectors(n, q_max):
        for lab in basis_labels(idx):
            out.append((idx.jj, lab.mm, lab.k))
    return out


def _htc_on_basis(basis: list, index: dict) -> np.ndarray:
    dim = len(basis)
    h = np.zeros((dim, dim))
    for a, (jj, mm, k) in enumerate(basis):
        b = index.get((jj, mm - 2, k + 1))
        if b is not None:
            v = np.sqrt((jj + mm) * (jj - mm + 2) * (k + 1)) / 2
            h[b, a] = v
            h[a, b] = v
    return h


def _exchange_pair_terms(jj: int, jj_p: int):
    """Raising-half matrix elements of the (j, j') exchange block, as
    (row_label, col_label) in (jj, mm, k) coordinates: the row lives in the
    filled spin-j' sector, the column in the unfilled spin-j sector."""
    terms = []
    for mm_p in range(-jj_p, jj_p + 1, 2):
        row = (jj_p, mm_p, jj - (jj_p + mm_p) // 2)  # k' = 2j - j' - m'
        col = (jj, mm_p - (jj - jj_p), (jj_p - mm_p) // 2)  # k = j' - m'
        terms.append((row, col))
    return terms


def build_exchange_operator(n: int, q_max: int):
    """The conserved exchange operator S on the charge-truncated basis.

    Pair blocks whose filled-side charge n/2 - j' + 2j exceeds q_max cannot
    be represented and are skipped (returned for reporting); the kept
    blocks commute with the coupling Hamiltonian on the whole truncation.
    """
    basis = _truncated_basis(n, q_max)
    index = {lab: i for i, lab in enumerate(basis)}
    s = np.zeros((len(basis), len(basis)))
    skipped = []
    for jj in range(j_min2(n) + 2, n + 1, 2):
        # the smaller spin must be positive: spin-0 sectors carry no
        # coupling matrix to exchange
        for jj_p in range(2 - (n & 1), jj, 2):
            if (n - jj_p) // 2 + jj > q_max:
                skipped.append((jj, jj_p))
                continue
            for row, col in _exchange_pair_terms(jj, jj_p):
                s[index[row], index[col]] = 1.0
                s[index[col], index[row]] = 1.0
    return s, basis, skipped


@dataclass
class ExchangeCommutationReport:
    n: int
    q_max: int
    dim: int
    comm_norm: float
    jz_commutation_exact: bool
    pair_blocks: list
    skipped: list
    ok: bool


def check_exchange_commutation(n: int, q_max: int) -> ExchangeCommutationReport:
    """[H, S] vanishes on the truncation, and on its raising half every pair
    block satisfies [J_z, S(j,j')] = (j-j')·S(j,j') entrywise exactly (the
    lowering half carries the conjugate shift)."""
    basis = _truncated_basis(n, q_max)
    index = {lab: i for i, lab in enumerate(basis)}
    h = _htc_on_basis(basis, index)
    s, _, skipped = build_exchange_operator(n, q_max)
    comm_norm = float(np.linalg.norm(h @ s - s @ h))
    mjz = np.array([mm / 2 for (_, mm, _) in basis])
    jz_ok = True
    pair_blocks = []
    for jj in range(j_min2(n) + 2, n + 1, 2):
        for jj_p in range(2 - (n & 1), jj, 2):
            if (n - jj_p) // 2 + jj > q_max:
                continue
            shift = (jj - jj_p) / 2
            good = True
            for row, col in _exchange_pair_terms(jj, jj_p):
                r, c = index[row], index[col]
                # entry of [J_z, S] at (r, c) is (m_r - m_c)·S_rc
                if mjz[r] - mjz[c] != shift:
                    good = False
            pair_blocks.append((jj, jj_p, good))
            jz_ok = jz_ok and good
    ok = comm_norm < 1e-9 and jz_ok
    return ExchangeCommutationReport(n, q_max, len(basis), comm_norm, jz_ok,
                                     pair_blocks, skipped, ok)


def exchange_pair_matrix(n: int, q_max: int, jj: int, jj_p: int) -> np.ndarray:
    """One S(j,j') block on the truncated basis (both halves)."""
    basis = _truncated_basis(n, q_max)
    index = {lab: i for i, lab in enumerate(basis)}
    sp = np.zeros((len(basis), len(basis)))
    for row, col in _exchange_pair_terms(jj, jj_p):
        sp[index[row], index[col]] = 1.0
        sp[index[col], index[row]] = 1.0
    return sp


def _schwinger_image(jj: int, mm: int, k: int) -> tuple[int, int, int]:
    """Relabeling that swaps the physical oscillator with the second
    virtual oscillator of the two-oscillator spin construction."""
    return ((jj + mm) // 2 + k, (jj + mm) // 2 - k, (jj - mm) // 2)


@dataclass
class SchwingerReport:
    jj_max: int
    k_max: int
    dim: int
    involution_ok: bool
    conjugation_dev: float
    tested: int
    skipped: int
    ok: bool


def schwinger_check(jj_max: int, k_max: int) -> SchwingerReport:
    """On the truncated direct sum ⊕_j C^{2j+1} ⊗ Fock(k ≤ k_max):
    W² = 1 and W(J+ ⊗ a)W = J+ ⊗ a on all vectors that stay in bounds."""
    labels = [(jj, mm, k) for jj in range(jj_max + 1)
              for mm in range(-jj, jj + 1, 2) for k in range(k_max + 1)]
    index = {lab: i for i, lab in enumerate(labels)}

    def w_image(lab):
        out = _schwinger_image(*lab)
        return out if out in index else None

    involution_ok = all(
        w_image(w_image(lab)) == lab
        for lab in labels if w_image(lab) is not None)

    def raise_op(lab):
        jj, mm, k = lab
        if k == 0 or mm == jj:
            return None, 0.0
        amp = np.sqrt((jj - mm) * (jj + mm + 2) * k) / 2
        return (jj, mm + 2, k - 1), amp

    worst = 0.0
    tested = skipped = 0
    for lab in labels:
        w1 = w_image(lab)
        if w1 is None:
            skipped += 1
            continue
        mid, amp1 = raise_op(w1)
        if mid is not None:
            w2 = w_image(mid)
            if w2 is None:
                skipped += 1
                continue
        direct, amp0 = raise_op(lab)
        tested += 1
        # compare W (J+ a) W |lab⟩ with (J+ a)|lab⟩ componentwise
        got = {} if mid is None else {w2: amp1}
        want = {} if direct is None else {direct: amp0}
        keys = set(got) | set(want)
        dev = max((abs(got.get(kk, 0.0) - want.get(kk, 0.0)) for kk in keys),
                  default=0.0)
        worst = max(worst, dev)
    ok = involution_ok and worst < 1e-10
    return SchwingerReport(jj_max, k_max, len(labels), involution_ok, worst,
                           tested, skipped, ok)


def verify_pi_universality(n: int, jj: int, tol: float = 1e-8) -> bool:
    """Level projectors plus the collective x generator close onto the full
    unitary algebra of the spin-j block: rank (2j+1)²."""
    d = jj + 1
    gens = []
    for r in range(d):
        p = np.zeros((d, d), dtype=complex)
        p[r, r] = 1.0
        gens.append(1j * p)
    jx = np.zeros((d, d), dtype=complex)
    for r in range(d - 1):  # row r holds m = j - r; x couples m ↔ m-1
        mm = jj - 2 * r
        jx[r, r + 1] = np.sqrt((jj + mm) * (jj - mm + 2)) / 4
        jx[r + 1, r] = jx[r, r + 1]
    gens.append(1j * jx)
    return lie_closure(gens, tol=tol).rank == d * d
