import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tcforge import dynamics as dyn
from tcforge.dynamics import Circuit, Gate
from tcforge.operators import tower_index
from tcforge.qubits import CZ
from tcforge.sectors import SectorIndex, basis_labels
from tcforge.synthesis import f_gate, named_gate


def su2_block(t):
    c, s = np.cos(np.sqrt(2) * t), np.sin(np.sqrt(2) * t)
    return np.array([[c, -1j * s], [-1j * s, c]])


def test_gate_block_tc_charge1():
    for t in (0.3, -1.2, np.pi):
        b = dyn.gate_block(Gate("tc", t), SectorIndex(2, 1, 2))
        assert np.allclose(b, su2_block(t), atol=1e-12)


def test_gate_block_tc_half_period():
    b = dyn.gate_block(Gate("tc", np.pi / np.sqrt(6)), SectorIndex(2, 2, 2))
    want = np.array([[1 / 3, 0, -np.sqrt(8 / 9)],
                     [0, -1, 0],
                     [-np.sqrt(8 / 9), 0, -1 / 3]])
    assert np.allclose(b, want, atol=1e-12)


def test_gate_block_rz_and_rx_rejection():
    b = dyn.gate_block(Gate("rz", 0.7), SectorIndex(2, 2, 2))
    assert np.allclose(b, np.diag(np.exp(-1j * 0.7 * np.array([1, 0, -1]))))
    with pytest.raises(ValueError):
        dyn.gate_block(Gate("rx", 0.1), SectorIndex(2, 2, 2))
    with pytest.raises(ValueError):
        Gate("ry", 0.1)


def test_empty_circuit_identity():
    bu = dyn.apply_circuit(Circuit(3), 4)
    for idx, b in bu.blocks.items():
        assert np.allclose(b, np.eye(idx.dim))


def test_f_gate_block_and_vacuum_phase():
    bu = dyn.apply_circuit(f_gate(), 3)
    want = np.array([[0, 0, 1], [0, -1, 0], [1, 0, 0]])
    assert np.abs(bu.blocks[SectorIndex(2, 2, 2)] - want).max() < 1e-9
    assert abs(bu.blocks[SectorIndex(2, 0, 2)][0, 0] - 1) < 1e-12
    # F Rz(θ) F puts the same phase on |00⟩⊗|0⟩ and |11⟩⊗|0⟩
    theta = 0.83
    circ = Circuit(2, f_gate().gates + (Gate("rz", theta),) + f_gate().gates)
    bu = dyn.apply_circuit(circ, 3)
    assert abs(bu.blocks[SectorIndex(2, 0, 2)][0, 0]
               - np.exp(1j * theta)) < 1e-9
    assert abs(bu.blocks[SectorIndex(2, 2, 2)][0, 0]
               - np.exp(1j * theta)) < 1e-9


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3),
       st.lists(st.tuples(st.sampled_from(["tc", "rz"]),
                          st.floats(-3, 3, allow_nan=False)), max_size=12))
def test_unitarity(n, gate_spec):
    circ = Circuit(n, [Gate(k, p) for k, p in gate_spec])
    bu = dyn.apply_circuit(circ, 6)
    assert bu.unitarity_defect() < 1e-9


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["tc", "rz", "rx"]),
                          st.floats(-2, 2, allow_nan=False)),
                min_size=1, max_size=8))
def test_reversed_circuit_inverts(gate_spec):
    circ = Circuit(2, [Gate(k, p) for k, p in gate_spec]
                   + [Gate(k, -p) for k, p in reversed(gate_spec)])
    bu = dyn.apply_circuit(circ, 3)
    for key, b in bu.blocks.items():
        d = b.shape[0]
        assert np.abs(b - np.eye(d)).max() < 1e-9


def test_unitarity_long_circuit():
    rng = np.random.default_rng(12)
    gates = [Gate(str(rng.choice(["tc", "rz"])), float(rng.uniform(-3, 3)))
             for _ in range(100)]
    bu = dyn.apply_circuit(Circuit(3, gates), 8)
    assert bu.unitarity_defect() < 1e-9


def test_charge_vs_tower_backends():
    rng = np.random.default_rng(3)
    for n in (2, 3):
        gates = [Gate(str(rng.choice(["tc", "rz"])),
                      float(rng.uniform(-2, 2))) for _ in range(15)]
        circ = Circuit(n, gates)
        ch = dyn.apply_circuit(circ, 6, backend="charge")
        tw = dyn.apply_circuit(circ, 6, backend="jtower")
        for idx, blk in ch.blocks.items():
            rows = [tower_index(idx.jj, lab.mm, lab.k)
                    for lab in basis_labels(idx)]
            sub = tw.blocks[idx.jj][np.ix_(rows, rows)]
            assert np.abs(sub - blk).max() < 1e-9


def test_eigenstate_pinning():
    # |j, m=-j⟩⊗|0⟩ picks up exactly the rotation phase e^{i j Σθ}
    for n in (2, 3, 4):
        thetas = [0.9, -0.4, 1.7]
        gates = [Gate("tc", 0.6), Gate("rz", thetas[0]), Gate("tc", -1.1),
                 Gate("rz", thetas[1]), Gate("rz", thetas[2])]
        bu = dyn.apply_circuit(Circuit(n, gates), n)
        for jj in range(n % 2, n + 1, 2):
            idx = SectorIndex(n, (n - jj) // 2, jj)
            assert idx.dim == 1
            want = np.exp(1j * (jj / 2) * sum(thetas))
            assert abs(bu.blocks[idx][0, 0] - want) < 1e-12


def test_vacuum_sandwich_examples():
    vs = dyn.vacuum_sandwich(dyn.apply_circuit(Circuit(2), 2))
    assert vs.residual < 1e-12
    assert np.allclose(vs.matrix, np.eye(4))
    # a single coupling pulse leaks into the oscillator
    vs = dyn.vacuum_sandwich(dyn.apply_circuit(Circuit(2, [Gate("tc", 0.5)]), 2))
    assert vs.residual > 0.1
    # compiled CZ disentangles: sandwich equals CZ up to a global phase
    res = named_gate("cz")
    vs = dyn.vacuum_sandwich(dyn.apply_circuit(res.circuit, 2))
    assert vs.residual < 1e-8
    assert dyn.distance_up_to_phase(vs.matrix, CZ) < 1e-8


def test_distance_up_to_phase():
    rng = np.random.default_rng(5)
    u = np.linalg.qr(rng.normal(size=(4, 4))
                     + 1j * rng.normal(size=(4, 4)))[0]
    assert dyn.distance_up_to_phase(u, u) < 1e-12
    assert dyn.distance_up_to_phase(u, np.exp(1j * 0.7) * u) < 1e-12
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert abs(dyn.distance_up_to_phase(np.eye(2, dtype=complex), sx) - 2) < 1e-12
    with pytest.raises(ValueError):
        dyn.distance_up_to_phase(np.eye(2), np.eye(3))


def test_interaction_time():
    assert dyn.interaction_time(Circuit(2, [Gate("rz", 1.0)])) == 0
    f = f_gate()
    assert f.total_tc_time() == 3 * (np.pi / np.sqrt(6))
    assert abs(dyn.interaction_time(f) - 0.6124) < 1e-3
    swap = named_gate("swap")
    assert abs(swap.tau - 1.273) < 0.01


def test_circuit_json_round_trip_exact():
    circ = Circuit(2, [Gate("tc", np.pi / np.sqrt(6)), Gate("rz", -0.1),
                       Gate("rx", 1e-17)])
    again = Circuit.from_json(circ.to_json())
    assert again.n == circ.n
    for a, b in zip(again.gates, circ.gates):
        assert a.kind == b.kind and a.param == b.param


@settings(max_examples=50)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False,
                          width=64), max_size=8))
def test_json_params_bit_exact(params):
    circ = Circuit(2, [Gate("tc", p) for p in params])
    again = Circuit.from_json(circ.to_json())
    assert [g.param for g in again.gates] == [g.param for g in circ.gates]


def test_simplify_merges():
    circ = Circuit(2, [Gate("tc", 0.5), Gate("tc", -0.5), Gate("rz", 0.1),
                       Gate("rz", 0.2), Gate("tc", 1.0)])
    out = dyn.simplify(circ)
    assert [(g.kind, g.param) for g in out.gates] == [
        ("rz", 0.30000000000000004), ("tc", 1.0)]


def test_tower_k_max_growth():
    # rx after a coupling pulse widens the required window by 2j per run
    base = Circuit(2, [Gate("tc", 1.0)])
    assert dyn.tower_k_max(base, 2, 2) == 2
    grown = Circuit(2, [Gate("rx", 1.0), Gate("tc", 1.0)])
    assert dyn.tower_k_max(grown, 2, 2) == 4
    two_runs = Circuit(2, [Gate("rx", 1.0), Gate("tc", 1.0), Gate("rx", 0.5),
                           Gate("tc", 0.2), Gate("tc", 0.1)])
    assert dyn.tower_k_max(two_runs, 2, 2) == 6


@pytest.mark.parametrize("n,start", [(2, 0), (3, 5)])
def test_rx_circuit_exact_on_tower(n, start):
    # the widened truncation reproduces a brute-force dense simulation
    from tcforge.qubits import spin_ops, htc_full
    k_cut = 14
    circ = Circuit(n, [Gate("rx", 0.8), Gate("tc", 0.9), Gate("rz", 0.3),
                       Gate("rx", -0.5), Gate("tc", 0.4)])
    psi0 = np.zeros(2 ** n, dtype=complex)
    psi0[start] = 1.0
    joint = dyn.evolve_vacuum_state(circ, psi0, q_max=n)
    # dense reference
    jx, _, jz = spin_ops(n)
    h_full = htc_full(n, k_cut)
    state = np.zeros(2 ** n * (k_cut + 1), dtype=complex)
    state[start * (k_cut + 1)] = 1.0
    for g in circ.gates:
        if g.kind == "tc":
            hop = h_full
        elif g.kind == "rz":
            hop = np.kron(jz, np.eye(k_cut + 1))
        else:
            hop = np.kron(jx, np.eye(k_cut + 1))
        w, v = np.linalg.eigh(hop)
        state = (v * np.exp(-1j * g.param * w)) @ (v.conj().T @ state)
    ref = state.reshape(2 ** n, k_cut + 1)
    kk = joint.shape[1]
    assert np.abs(joint - ref[:, :kk]).max() < 1e-9
    assert np.abs(ref[:, kk:]).max() < 1e-9
