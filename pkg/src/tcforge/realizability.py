"""Decision procedures for realizability under the coupling + z-field gate set.

Three constraint families decide whether a target is reachable:

* qubit-level PI U(1)-invariant unitaries: the phase of each lowest-weight
  level must be affine in the spin, φ_{j,-j} ≡ α + jβ (mod 2π);
* diagonal unitaries: the same affine condition on the m ≤ 0 phases;
* joint qubit-oscillator block targets: partnered sectors must carry the
  same unitary up to the phase e^{i(j'-j)θ_z}, and each block determinant
  must equal the trace of J_z in that sector times θ_z plus dim·α (mod 2π).

All congruences are solved exactly by enumerating the finitely many integer
winding numbers compatible with the parameter windows θ_z ∈ [-2π, 2π),
α ∈ [-π, π), β ∈ [-2π, 2π).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .operators import charge_vector
from .sectors import (SectorIndex, accidental_partner, enumerate_sectors,
                      is_filled, j_min2, sector_dim)

# identifiers used in violation reports
AFFINE_LOWEST_WEIGHT = "lowest-weight-phase-affine"
PARTNER_EQUALITY = "partner-block-equality"
DETERMINANT_PHASE = "determinant-phase"


def wrap(x):
    return (np.asarray(x) + np.pi) % (2 * np.pi) - np.pi


@dataclass(frozen=True)
class PiU1Target:
    """Qubit-level target: one phase per (2j, 2m) level."""

    n: int
    phases: dict[tuple[int, int], float]

    def __post_init__(self):
        want = {(jj, mm) for jj in range(j_min2(self.n), self.n + 1, 2)
                for mm in range(-jj, jj + 1, 2)}
        if set(self.phases) != want:
            raise ValueError("phase map must cover every (2j, 2m) level")


@dataclass(frozen=True)
class BlockTarget:
    """Joint-space target: one unitary per sector with q ≤ q_max."""

    n: int
    q_max: int
    blocks: dict[SectorIndex, np.ndarray]

    def __post_init__(self):
        for idx in enumerate_sectors(self.n, self.q_max):
            if idx not in self.blocks:
                raise ValueError(f"missing block for {idx}")
            b = self.blocks[idx]
            if b.shape != (idx.dim, idx.dim):
                raise ValueError(f"block for {idx} has shape {b.shape}")
            if np.abs(b.conj().T @ b - np.eye(idx.dim)).max() > 1e-10:
                raise ValueError(f"block for {idx} is not unitary")


@dataclass
class RealizabilityVerdict:
    realizable: bool
    alpha: Optional[float] = None
    beta: Optional[float] = None          # β or θ_z, depending on the check
    violation: Optional[dict] = None
    max_residual: float = 0.0

    def to_json_dict(self) -> dict:
        return {"realizable": self.realizable, "alpha": self.alpha,
                "beta_or_theta_z": self.beta, "violation": self.violation,
                "max_residual": self.max_residual}


def constraint_gap(n: int) -> int:
    """Dimension gap between all PI U(1)-invariant unitaries and the
    realizable subgroup: the number of affine-constrained lowest-weight
    phases minus the two fit parameters."""
    n_spins = (n - j_min2(n)) // 2 + 1
    return max(0, n_spins - 2)


def _fit_affine(coeffs: list[float], values: list[float], tol: float):
    """Solve values_i ≡ alpha + coeffs_i * beta (mod 2π) with
    β ∈ [-2π, 2π).  Returns (alpha, beta, residual) or (None, None, worst)."""
    order = np.argsort(coeffs)
    c = np.asarray(coeffs, dtype=float)[order]
    v = wrap(np.asarray(values, dtype=float)[order])
    if len(c) == 1:
        return float(wrap(v[0])), 0.0, 0.0
    dc = c[1] - c[0]
    base = (v[1] - v[0]) / dc
    betas = [base + 2 * np.pi * w / dc for w in range(-2, 3)]
    betas = sorted((b for b in betas if -2 * np.pi <= b < 2 * np.pi), key=abs)
    worst = np.inf
    for beta in betas:
        alpha = float(wrap(v[0] - c[0] * beta))
        resid = float(np.abs(wrap(v - alpha - c * beta)).max())
        worst = min(worst, resid)
        if resid <= tol:
            return alpha, float(beta), resid
    return None, None, worst


def check_pi_u1(target: PiU1Target, tol: float = 1e-8) -> RealizabilityVerdict:
    """Realizable iff the lowest-weight phases fit φ_{j,-j} ≡ α + jβ."""
    jjs = list(range(j_min2(target.n), target.n + 1, 2))
    coeffs = [jj / 2 for jj in jjs]
    values = [target.phases[(jj, -jj)] for jj in jjs]
    alpha, beta, resid = _fit_affine(coeffs, values, tol)
    if alpha is not None:
        return RealizabilityVerdict(True, alpha, beta, max_residual=resid)
    return RealizabilityVerdict(
        False, violation={"constraint": AFFINE_LOWEST_WEIGHT,
                          "levels": [[jj, -jj] for jj in jjs],
                          "residual": resid},
        max_residual=resid)


def check_diagonal(n: int, phases: dict[int, float],
                   tol: float = 1e-8) -> RealizabilityVerdict:
    """Diagonal targets keyed by 2m: φ_m ≡ α + mβ required for m ≤ 0 only."""
    mms = list(range(-n, n + 1, 2))
    if set(phases) != set(mms):
        raise ValueError("need one phase per 2m in {-n..n}")
    neg = [mm for mm in mms if mm <= 0]
    alpha, beta, resid = _fit_affine([mm / 2 for mm in neg],
                                     [phases[mm] for mm in neg], tol)
    if alpha is not None:
        return RealizabilityVerdict(True, alpha, beta, max_residual=resid)
    return RealizabilityVerdict(
        False, violation={"constraint": AFFINE_LOWEST_WEIGHT,
                          "levels": [[mm] for mm in neg], "residual": resid},
        max_residual=resid)


def _det_equations(target: BlockTarget):
    """(c, d, θ) per sector for θ_det ≡ c·θ_z + d·α (mod 2π)."""
    eqs = []
    for idx in enumerate_sectors(target.n, target.q_max):
        c = float(charge_vector(idx, "jz"))
        d = sector_dim(idx)
        theta = float(np.angle(np.linalg.det(target.blocks[idx])))
        eqs.append((c, d, theta, idx))
    return eqs


def _verify_phase_system(eqs, theta_z: float, alpha: float):
    worst, worst_idx = 0.0, None
    for c, d, theta, idx in eqs:
        r = abs(float(wrap(c * theta_z + d * alpha - theta)))
        if r > worst:
            worst, worst_idx = r, idx
    return worst, worst_idx


def _solve_phase_system(eqs, tol: float, theta_z_candidates=None):
    """Find θ_z ∈ [-2π, 2π), α ∈ [-π, π) satisfying all equations.

    Candidates come either from a supplied θ_z list (partner constraints)
    or from exhaustive winding enumeration on two low sectors.
    """
    if theta_z_candidates is not None:
        c0, d0, th0, _ = min(eqs, key=lambda e: e[1])
        w_max = int(np.ceil(abs(c0) + d0 / 2)) + 2
        for tz in theta_z_candidates:
            for w in range(-w_max, w_max + 1):
                alpha = (th0 - c0 * tz + 2 * np.pi * w) / d0
                if not -np.pi <= alpha < np.pi:
                    continue
                worst, _ = _verify_phase_system(eqs, tz, alpha)
                if worst <= tol:
                    return float(tz), float(alpha)
        return None

    ranked = sorted(eqs, key=lambda e: abs(e[0]) + e[1])
    pair = None
    for i in range(len(ranked)):
        for k in range(i + 1, len(ranked)):
            det = ranked[i][0] * ranked[k][1] - ranked[k][0] * ranked[i][1]
            if abs(det) > 1e-9:
                pair = (ranked[i], ranked[k], det)
                break
        if pair:
            break
    if pair is None:
        # all rows parallel; pin θ_z = 0 and fit α from the smallest block
        c0, d0, th0, _ = ranked[0]
        for w in range(-(d0 + 2), d0 + 3):
            alpha = (th0 + 2 * np.pi * w) / d0
            if not -np.pi <= alpha < np.pi:
                continue
            worst, _ = _verify_phase_system(eqs, 0.0, alpha)
            if worst <= tol:
                return 0.0, float(alpha)
        return None
    (ci, di, ti, _), (ck, dk, tk, _), det = pair
    wi_max = int(np.ceil(abs(ci) + di / 2)) + 1
    wk_max = int(np.ceil(abs(ck) + dk / 2)) + 1
    for wi in range(-wi_max, wi_max + 1):
        for wk in range(-wk_max, wk_max + 1):
            ri = ti + 2 * np.pi * wi
            rk = tk + 2 * np.pi * wk
            tz = (dk * ri - di * rk) / det
            al = (-ck * ri + ci * rk) / det
            if not (-2 * np.pi <= tz < 2 * np.pi and -np.pi <= al < np.pi):
                continue
            worst, _ = _verify_phase_system(eqs, tz, al)
            if worst <= tol:
                return float(tz), float(al)
    return None


def _pair_phase_candidates(v_unfilled, v_filled, jgap: int):
    """θ_z candidates from v_{q,j} = e^{-i·jgap·θ_z} v_{q',j'}."""
    tr = np.trace(v_filled.conj().T @ v_unfilled)
    if abs(tr) < 1e-6:
        flat = np.argmax(np.abs(v_filled))
        ratio = v_unfilled.flat[flat] / v_filled.flat[flat]
    else:
        ratio = tr
    phase = float(np.angle(ratio))  # = -jgap·θ_z mod 2π
    out = []
    for w in range(-2 * jgap - 1, 2 * jgap + 2):
        tz = -(phase + 2 * np.pi * w) / jgap
        if -2 * np.pi <= tz < 2 * np.pi:
            out.append(tz)
    return out


def check_block_target(target: BlockTarget,
                       tol: float = 1e-8) -> RealizabilityVerdict:
    """Full joint-space decision: partner equality plus determinant phases."""
    pairs = []
    for idx in enumerate_sectors(target.n, target.q_max):
        if is_filled(idx):
            continue
        p = accidental_partner(idx)
        if p is not None and p.q <= target.q_max:
            pairs.append((idx, p))
    eqs = _det_equations(target)

    tz_candidates = None
    if pairs:
        idx, p = pairs[0]
        jgap = (idx.jj - p.jj) // 2
        tz_candidates = _pair_phase_candidates(target.blocks[idx],
                                               target.blocks[p], jgap)
        # every candidate must satisfy every pair entrywise
        surviving = []
        best_fail = (np.inf, pairs[0])
        for tz in tz_candidates:
            worst, worst_at = 0.0, pairs[0]
            for a, b in pairs:
                jgap = (a.jj - b.jj) // 2
                dev = float(np.abs(target.blocks[a]
                                   - np.exp(-1j * jgap * tz)
                                   * target.blocks[b]).max())
                if dev > worst:
                    worst, worst_at = dev, (a, b)
            if worst <= tol:
                surviving.append(tz)
            elif worst < best_fail[0]:
                best_fail = (worst, worst_at)
        if not surviving:
            a, b = best_fail[1]
            return RealizabilityVerdict(
                False, violation={"constraint": PARTNER_EQUALITY,
                                  "sectors": [a.q, a.jj, b.q, b.jj],
                                  "residual": best_fail[0]},
                max_residual=best_fail[0])
        tz_candidates = surviving

    sol = _solve_phase_system(eqs, tol, tz_candidates)
    if sol is None:
        ref = _verify_phase_system(eqs, 0.0, 0.0)
        return RealizabilityVerdict(
            False, violation={"constraint": DETERMINANT_PHASE,
                              "sectors": None if ref[1] is None
                              else [ref[1].q, ref[1].jj],
                              "residual": ref[0]},
            max_residual=ref[0])
    tz, al = sol
    worst, _ = _verify_phase_system(eqs, tz, al)
    return RealizabilityVerdict(True, al, tz, max_residual=worst)


def check_symmetric_phase_constraint(n: int, q_max: int, theta_q: list[float],
                                     tol: float = 1e-8) -> RealizabilityVerdict:
    """Determinant phases restricted to the symmetric subspace:
    θ_q ≡ (q+1)[(q-n)θ_z/2 + α] for q ≤ n and θ_q ≡ (n+1)α for q > n."""
    if len(theta_q) != q_max + 1:
        raise ValueError(f"need θ_q for q = 0..{q_max}")
    eqs = []
    for q, th in enumerate(theta_q):
        qq = min(q, n)
        c = (qq + 1) * (q - n) / 2 if q <= n else 0.0
        d = qq + 1
        eqs.append((c, d, float(th), SectorIndex(n, q, n)))
    sol = _solve_phase_system(eqs, tol)
    if sol is None:
        ref = _verify_phase_system(eqs, 0.0, 0.0)
        return RealizabilityVerdict(
            False, violation={"constraint": DETERMINANT_PHASE,
                              "sectors": None if ref[1] is None
                              else [ref[1].q, ref[1].jj],
                              "residual": ref[0]},
            max_residual=ref[0])
    tz, al = sol
    worst, _ = _verify_phase_system(eqs, tz, al)
    return RealizabilityVerdict(True, al, tz, max_residual=worst)


def state_convertible(n: int, psi: dict[tuple[int, int], complex],
                      phi: dict[tuple[int, int], complex],
                      tol: float = 1e-8) -> bool:
    """Symmetric-subspace states are interconvertible iff their per-charge
    weights agree.  States map (2m, k) -> amplitude."""
    def weights(state):
        total = 0.0
        per_q: dict[int, float] = {}
        for (mm, k), amp in state.items():
            if not -n <= mm <= n or (mm ^ n) & 1 or k < 0:
                raise ValueError(f"bad symmetric-state label (2m={mm}, k={k})")
            w = abs(amp) ** 2
            q = k + (mm + n) // 2
            per_q[q] = per_q.get(q, 0.0) + w
            total += w
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"state not normalized (norm² = {total:.6f})")
        return per_q

    wa, wb = weights(psi), weights(phi)
    for q in set(wa) | set(wb):
        if abs(wa.get(q, 0.0) - wb.get(q, 0.0)) > tol:
            return False
    return True


def cz_controlled_target(n: int) -> PiU1Target:
    """CZ on n qubits controlled by n-1 of them: a π phase on |1...1⟩."""
    phases = {(jj, mm): 0.0 for jj in range(j_min2(n), n + 1, 2)
              for mm in range(-jj, jj + 1, 2)}
    phases[(n, -n)] = np.pi
    return PiU1Target(n, phases)


def anti_cz_target(n: int) -> PiU1Target:
    """The conjugated variant: a π phase on |0...0⟩ instead."""
    phases = {(jj, mm): 0.0 for jj in range(j_min2(n), n + 1, 2)
              for mm in range(-jj, jj + 1, 2)}
    phases[(n, n)] = np.pi
    return PiU1Target(n, phases)


def block_target_from_unitary(bu) -> BlockTarget:
    """Adapt a charge-backend BlockUnitary into a decision-ready target."""
    if bu.backend != "charge":
        raise ValueError("need a charge-backend block unitary")
    return BlockTarget(bu.n, bu.q_max, dict(bu.blocks))
