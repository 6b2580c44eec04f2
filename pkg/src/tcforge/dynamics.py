"""Exact circuit simulation in the conserved-charge block picture.

Gates are e^{-iHt}: a coupling pulse tc(r) is exp(-i r (J+a + J-a†)) with
dimensionless r = g·t, and rz/rx(θ) are exp(-iθ J_z) / exp(-iθ J_x).
Circuits without rx conserve the charge and evolve sector by sector
("charge" backend).  Circuits containing rx break charge conservation but
conserve j and the oscillator level under rx, so they evolve exactly on a
per-j tower truncated at a computed k_max ("jtower" backend).

All interaction times are reported in units of 2π/g.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import operators as ops
from .qubits import assemble_pi, jm_basis
from .sectors import SectorIndex, basis_labels, enumerate_sectors, j_min2

GATE_KINDS = ("tc", "rz", "rx")


@dataclass(frozen=True)
class Gate:
    """One native gate; param is r for tc, the angle θ for rz/rx.

    Angles are physically 4π-periodic (half-integer m), so [-2π, 2π) is a
    fundamental domain; params are stored exactly as given.
    """

    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def has_rx(self) -> bool:
        return any(g.kind == "rx" for g in self.gates)

    def total_tc_time(self) -> float:
        """Raw Σ|r| over coupling pulses (units of 1/g)."""
        return sum(abs(g.param) for g in self.gates if g.kind == "tc")

    def to_json(self) -> str:
        payload = {"n": self.n,
                   "gates": [{"kind": g.kind, "param": g.param} for g in self.gates]}
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "Circuit":
        payload = json.loads(text)
        gates = tuple(Gate(g["kind"], float(g["param"])) for g in payload["gates"])
        return Circuit(int(payload["n"]), gates)


def simplify(circ: Circuit) -> Circuit:
    """Merge adjacent same-kind gates and drop zero-parameter gates."""
    out: list[Gate] = []
    for g in circ.gates:
        if out and out[-1].kind == g.kind:
            merged = out[-1].param + g.param
            out.pop()
            if merged != 0.0:
                out.append(Gate(g.kind, merged))
        elif g.param != 0.0:
            out.append(Gate(g.kind, g.param))
    return Circuit(circ.n, tuple(out))


def interaction_time(circ: Circuit) -> float:
    """Total coupling-on time Σ|r|, in units of 2π/g."""
    return float(circ.total_tc_time() / (2 * np.pi))


@lru_cache(maxsize=None)
def _htc_eig(idx: SectorIndex):
    w, v = np.linalg.eigh(ops.htc_block(idx).mat)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


@lru_cache(maxsize=None)
def _tower_eig(n: int, jj: int, k_max: int, kind: str):
    build = {"tc": ops.htc_tower, "rx": ops.jx_operator}[kind]
    w, v = np.linalg.eigh(build(n, jj, k_max).mat)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def gate_block(gate: Gate, idx: SectorIndex) -> np.ndarray:
    """Unitary of one gate on one charge sector."""
    if gate.kind == "tc":
        w, v = _htc_eig(idx)
        return (v * np.exp(-1j * gate.param * w)) @ v.conj().T
    if gate.kind == "rz":
        mvals = np.array([lab.mm / 2 for lab in basis_labels(idx)])
        return np.diag(np.exp(-1j * gate.param * mvals))
    raise ValueError("rx gates break charge conservation; use the jtower backend")


@dataclass
class BlockUnitary:
    """Product unitary of a circuit, stored block by block.

    ``blocks`` maps SectorIndex -> matrix on the charge backend, and the
    doubled spin jj -> tower matrix on the jtower backend.
    """

    backend: str
    n: int
    q_max: int
    blocks: dict
    k_max: dict = field(default_factory=dict)
    tc_time: float = 0.0

    def unitarity_defect(self) -> float:
        worst = 0.0
        for b in self.blocks.values():
            d = b.shape[0]
            worst = max(worst, np.linalg.norm(b.conj().T @ b - np.eye(d)))
        return worst


def tower_k_max(circ: Circuit, q_max: int, jj: int) -> int:
    """Truncation making the jj tower exact for initial support q ≤ q_max.

    Coupling pulses conserve q and rx conserves k, so support with q ≤ q_max
    stays below k = q_max + j - n/2.  Each rx can raise the charge support by
    up to 2j, which the next coupling pulse converts into oscillator support,
    so every tc run that follows an rx widens the required window by 2j.
    """
    grown = 0
    seen_rx = False
    in_run = False
    for g in circ.gates:
        if g.kind == "rx":
            seen_rx = True
            in_run = False
        elif g.kind == "tc":
            if seen_rx and not in_run:
                grown += jj
                in_run = True
        else:
            continue
    return max(0, q_max + grown + (jj - circ.n) // 2)


def apply_circuit(circ: Circuit, q_max: int, backend: str = "auto") -> BlockUnitary:
    """Evolve the whole circuit; every sector block is unitary to ~1e-14."""
    if q_max < 0:
        raise ValueError(f"q_max must be non-negative, got {q_max}")
    if backend == "auto":
        backend = "jtower" if circ.has_rx() else "charge"
    if backend == "charge":
        if circ.has_rx():
            raise ValueError("rx gates break charge conservation; use the jtower backend")
        blocks = {}
        for idx in enumerate_sectors(circ.n, q_max):
            u = np.eye(idx.dim, dtype=complex)
            for g in circ.gates:
                u = gate_block(g, idx) @ u
            blocks[idx] = u
        return BlockUnitary("charge", circ.n, q_max, blocks,
                            tc_time=circ.total_tc_time())
    if backend != "jtower":
        raise ValueError(f"unknown backend {backend!r}")
    blocks, kmaxes = {}, {}
    for jj in range(circ.n, j_min2(circ.n) - 1, -2):
        k_max = tower_k_max(circ, q_max, jj)
        kmaxes[jj] = k_max
        d = (jj + 1) * (k_max + 1)
        jz_diag = np.diag(ops.jz_tower(circ.n, jj, k_max).mat).real
        u = np.eye(d, dtype=complex)
        for g in circ.gates:
            if g.kind == "rz":
                u = np.exp(-1j * g.param * jz_diag)[:, None] * u
            else:
                w, v = _tower_eig(circ.n, jj, k_max, g.kind)
                u = (v * np.exp(-1j * g.param * w)) @ (v.conj().T @ u)
        blocks[jj] = u
    return BlockUnitary("jtower", circ.n, q_max, blocks, kmaxes,
                        tc_time=circ.total_tc_time())


@dataclass
class VacuumSandwich:
    """⟨0|V|0⟩ on the qubits, as PI blocks and as a 2^n x 2^n matrix."""

    n: int
    u_by_j: dict[int, np.ndarray]
    matrix: np.ndarray
    residual: float


def vacuum_sandwich(bu: BlockUnitary) -> VacuumSandwich:
    """Extract the qubit operator with the oscillator in and out of vacuum.

    The result need not be unitary; the deviation ‖U†U - I‖_F measures how
    much the circuit entangles the qubits with the oscillator.
    """
    n = bu.n
    u_by_j: dict[int, np.ndarray] = {}
    if bu.backend == "charge":
        if bu.q_max < n:
            raise ValueError(f"vacuum sandwich needs q_max ≥ n = {n}")
        for jj in range(n, j_min2(n) - 1, -2):
            u = np.zeros((jj + 1, jj + 1), dtype=complex)
            for r in range(jj + 1):
                mm = jj - 2 * r
                q = (mm + n) // 2
                idx = SectorIndex(n, q, jj)
                # k = 0 is the first basis label for q ≤ n/2 + j
                u[r, r] = bu.blocks[idx][0, 0]
            u_by_j[jj] = u
    else:
        for jj, tower in bu.blocks.items():
            u = np.zeros((jj + 1, jj + 1), dtype=complex)
            for r in range(jj + 1):
                for c in range(jj + 1):
                    u[r, c] = tower[ops.tower_index(jj, jj - 2 * r, 0),
                                    ops.tower_index(jj, jj - 2 * c, 0)]
            u_by_j[jj] = u
    mat = assemble_pi(n, u_by_j)
    residual = float(np.linalg.norm(mat.conj().T @ mat - np.eye(2 ** n)))
    return VacuumSandwich(n, u_by_j, mat, residual)


def distance_up_to_phase(u: np.ndarray, v: np.ndarray) -> float:
    """min over α of ‖u - e^{iα} v‖_F; zero iff equal up to a global phase."""
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch {u.shape} vs {v.shape}")
    tr = np.trace(v.conj().T @ u)
    phase = tr / abs(tr) if abs(tr) > 0 else 1.0
    return float(np.linalg.norm(u - phase * v))


def evolve_vacuum_state(circ: Circuit, psi_qubits: np.ndarray,
                        q_max: int) -> np.ndarray:
    """Evolve |ψ⟩⊗|0⟩; returns joint amplitudes of shape (2^n, K+1).

    Row index is the computational basis state, column the oscillator level.
    q_max must cover the initial charge support (q_max ≥ n suffices for any
    qubit state on vacuum).
    """
    n = circ.n
    psi_qubits = np.asarray(psi_qubits, dtype=complex)
    if psi_qubits.shape != (2 ** n,):
        raise ValueError(f"state must have length {2 ** n}")
    bu = apply_circuit(circ, q_max, backend="jtower")
    basis = jm_basis(n)
    k_big = max(bu.k_max.values())
    joint = np.zeros((2 ** n, k_big + 1), dtype=complex)
    for jj, tower in bu.blocks.items():
        k_max = bu.k_max[jj]
        frames = {mm: basis[(jj, mm)] for mm in range(-jj, jj + 1, 2)}
        n_alpha = frames[jj].shape[1]
        for alpha in range(n_alpha):
            init = np.zeros((jj + 1) * (k_max + 1), dtype=complex)
            for r in range(jj + 1):
                mm = jj - 2 * r
                c = np.vdot(frames[mm][:, alpha], psi_qubits)
                init[ops.tower_index(jj, mm, 0)] = c
            if not np.any(init):
                continue
            fin = tower @ init
            for r in range(jj + 1):
                mm = jj - 2 * r
                col = frames[mm][:, alpha]
                for k in range(k_max + 1):
                    amp = fin[ops.tower_index(jj, mm, k)]
                    if amp != 0:
                        joint[:, k] += amp * col
    return joint
