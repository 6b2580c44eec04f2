"""Batch front end: synthesize gates, simulate circuits, run verification
suites, and emit machine-readable reports.

Exit codes: 0 on success, 1 on usage or input errors, 2 when a verification
or synthesis tolerance fails.  Output JSON is deterministic (sorted keys,
shortest round-trip floats).  TCFORGE_THREADS caps worker parallelism in
the verification suites.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import liealg, realizability as rz, synthesis
from .dynamics import (Circuit, apply_circuit, evolve_vacuum_state,
                       interaction_time, vacuum_sandwich)
from .operators import htc_block, jz_block
from .sectors import (accidental_pairs, accidental_partner,
                      enumerate_sectors, is_filled, multiplicity, sector_dim)

DESK_N = 6
DESK_QMAX = 12


def _dump(obj, path: Path | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if path is None:
        print(text)
    else:
        path.write_text(text + "\n")


def _matrix_json(m: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _workers() -> int:
    env = os.environ.get("TCFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def cmd_synthesize(args) -> int:
    tol = args.tol
    try:
        if args.gate:
            res = synthesis.named_gate(args.gate, phi=args.phi)
            target_name = args.gate
        elif args.phases:
            parts = [float(x) for x in args.phases.split(",")]
            if len(parts) != 3:
                raise ValueError("--phases wants three comma-separated values")
            res = synthesis.compile_two_qubit(*parts)
            target_name = f"phases({parts[0]},{parts[1]},{parts[2]})"
        else:
            print("synthesize needs --gate or --phases", file=sys.stderr)
            return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out) if args.out else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    stem = target_name.replace("(", "_").replace(")", "").replace(",", "_")
    (out / f"{stem}.circuit.json").write_text(res.circuit.to_json() + "\n")
    report = {
        "target": target_name,
        "tau": res.tau,
        "kind": res.kind,
        "parameters": res.params,
        "residual": res.residual,
        "global_phase": res.global_phase,
    }
    _dump(report, out / f"{stem}.report.json")
    print(f"{target_name}: tau = {res.tau:.6f} x 2pi/g, residual = "
          f"{res.residual:.2e}")
    return 0 if res.residual < tol else 2


_NAMED_STATES = {"psi+": [0, 1, 1, 0], "psi-": [0, 1, -1, 0]}


def _parse_state(spec: str, n: int) -> np.ndarray:
    if spec in _NAMED_STATES:
        if n != 2:
            raise ValueError(f"state {spec!r} is defined for n = 2 only")
        v = np.array(_NAMED_STATES[spec], dtype=complex)
        return v / np.linalg.norm(v)
    if len(spec) == n and set(spec) <= {"0", "1"}:
        v = np.zeros(2 ** n, dtype=complex)
        v[int(spec, 2)] = 1.0
        return v
    raise ValueError(f"cannot parse state {spec!r} for n = {n}")


def cmd_simulate(args) -> int:
    try:
        circ = Circuit.from_json(Path(args.circuit).read_text())
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error reading circuit: {exc}", file=sys.stderr)
        return 1
    q_max = args.qmax if args.qmax is not None else max(circ.n, 2)
    result = {"n": circ.n, "q_max": q_max,
              "interaction_time": interaction_time(circ)}
    if args.state:
        try:
            psi = _parse_state(args.state, circ.n)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        joint = evolve_vacuum_state(circ, psi, q_max)
        amps = []
        for i in range(joint.shape[0]):
            for k in range(joint.shape[1]):
                z = joint[i, k]
                if abs(z) > 1e-12:
                    amps.append({"bits": format(i, f"0{circ.n}b"), "k": k,
                                 "re": float(z.real), "im": float(z.imag)})
        vac = float(np.sum(np.abs(joint[:, 1:]) ** 2))
        result["amplitudes"] = amps
        result["oscillator_excited_weight"] = vac
    else:
        bu = apply_circuit(circ, q_max)
        if bu.backend == "charge":
            blocks = [{"q": idx.q, "jj": idx.jj,
                       "matrix": _matrix_json(bu.blocks[idx])}
                      for idx in enumerate_sectors(circ.n, q_max)]
            result["blocks"] = blocks
        else:
            result["towers"] = [{"jj": jj, "k_max": bu.k_max[jj],
                                 "matrix": _matrix_json(m)}
                                for jj, m in sorted(bu.blocks.items())]
        if not circ.has_rx() and q_max >= circ.n:
            vs = vacuum_sandwich(bu)
            result["vacuum_residual"] = vs.residual
    _dump(result, Path(args.out) if args.out else None)
    return 0


def _scale_guard(args) -> str | None:
    if args.override_scale:
        return None
    if args.n > DESK_N or args.qmax > DESK_QMAX:
        return (f"n = {args.n}, q_max = {args.qmax} exceeds desk scale "
                f"(n ≤ {DESK_N}, q_max ≤ {DESK_QMAX}); pass --override-scale")
    return None


def _suite_accidental(n: int, q_max: int, tol: float):
    checks = []
    for idx, partner in accidental_pairs(n, q_max):
        dev_h = float(np.abs(htc_block(idx).mat - htc_block(partner).mat).max())
        shift = (partner.jj - idx.jj) / 2
        dev_z = float(np.abs(jz_block(idx).mat - jz_block(partner).mat
                             - shift * np.eye(idx.dim)).max())
        checks.append({"scope": f"pair q={idx.q} 2j={idx.jj} <-> "
                                f"q={partner.q} 2j={partner.jj}",
                       "residuals": [dev_h, dev_z],
                       "pass": dev_h <= tol and dev_z <= tol})
    rep = liealg.variance_separation_check(n, q_max)
    checks.append({"scope": "variance-separation",
                   "rank": rep.pairs_checked,
                   "pass": rep.ok})
    return checks


def _suite_lie(n: int, q_max: int, tol: float):
    sectors = [s for s in enumerate_sectors(n, q_max)
               if 2 <= sector_dim(s) <= 7]
    checks = []
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        ranks = list(pool.map(lambda s: liealg.sector_rank_check(s, tol),
                              sectors))
    for s, ok in zip(sectors, ranks):
        checks.append({"scope": f"rank q={s.q} 2j={s.jj}",
                       "rank": s.dim ** 2 - 1, "expected": s.dim ** 2 - 1,
                       "pass": bool(ok)})
    for s in enumerate_sectors(n, q_max):
        rep = liealg.anharmonicity_check(s)
        if not rep.matches_closed_form or (sector_dim(s) >= 2
                                           and not rep.condition_holds):
            checks.append({"scope": f"anharmonicity q={s.q} 2j={s.jj}",
                           "pass": False})
    checks.append({"scope": "anharmonicity-closed-form", "pass": True})
    return checks


def _suite_phases(n: int, q_max: int, tol: float):
    v_cz = rz.check_pi_u1(rz.cz_controlled_target(n), tol)
    v_anti = rz.check_pi_u1(rz.anti_cz_target(n), tol)
    want_cz = n < 4
    return [
        {"scope": "cz-controlled", "pass": v_cz.realizable == want_cz,
         "verdict": v_cz.to_json_dict()},
        {"scope": "anti-cz", "pass": v_anti.realizable,
         "verdict": v_anti.to_json_dict()},
        {"scope": "constraint-gap", "rank": rz.constraint_gap(n),
         "expected": max(0, n // 2 - 1),
         "pass": rz.constraint_gap(n) == max(0, n // 2 - 1)},
    ]


def _suite_realizability(n: int, q_max: int, tol: float):
    rng = np.random.default_rng(20240901)
    checks = []
    from .dynamics import Gate
    for trial in range(10):
        gates = [Gate(str(rng.choice(["tc", "rz"])), float(rng.uniform(-2, 2)))
                 for _ in range(int(rng.integers(5, 25)))]
        bu = apply_circuit(Circuit(n, gates), q_max, backend="charge")
        verdict = rz.check_block_target(rz.block_target_from_unitary(bu), tol)
        checks.append({"scope": f"round-trip-{trial}",
                       "residuals": [verdict.max_residual],
                       "pass": verdict.realizable})
    return checks


def _suite_schwinger(n: int, q_max: int, tol: float):
    rep = liealg.schwinger_check(jj_max=8, k_max=10)
    return [{"scope": "schwinger", "residuals": [rep.conjugation_dev],
             "pass": rep.ok}]


_SUITES = {"accidental": _suite_accidental, "lie": _suite_lie,
           "phases": _suite_phases, "realizability": _suite_realizability,
           "schwinger": _suite_schwinger}


def cmd_verify(args) -> int:
    guard = _scale_guard(args)
    if guard:
        print(f"error: {guard}", file=sys.stderr)
        return 1
    checks = _SUITES[args.suite](args.n, args.qmax, args.tol)
    ok = all(c["pass"] for c in checks)
    _dump({"suite": args.suite, "n": args.n, "q_max": args.qmax,
           "checks": checks, "pass": ok},
          Path(args.out) if args.out else None)
    return 0 if ok else 2


def cmd_sectors(args) -> int:
    rows = []
    for idx in enumerate_sectors(args.n, args.qmax):
        partner = accidental_partner(idx)
        rows.append({"q": idx.q, "jj": idx.jj, "dim": sector_dim(idx),
                     "multiplicity": multiplicity(args.n, idx.jj),
                     "filled": is_filled(idx),
                     "partner": None if partner is None
                     else [partner.q, partner.jj]})
    if args.format == "csv":
        lines = ["q,jj,dim,multiplicity,filled,partner_q,partner_jj"]
        for r in rows:
            pq, pj = (r["partner"] or ["", ""])
            lines.append(f"{r['q']},{r['jj']},{r['dim']},"
                         f"{r['multiplicity']},{int(r['filled'])},{pq},{pj}")
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            print(text, end="")
    else:
        _dump({"n": args.n, "sectors": rows},
              Path(args.out) if args.out else None)
    return 0


REPORT_GATES = ("cz", "swap", "iswap", "sqrt_iswap", "upsiplus")


def cmd_report(args) -> int:
    rows = []
    worst = 0.0
    for name in REPORT_GATES:
        res = synthesis.named_gate(name)
        rows.append((name, res.tau))
        worst = max(worst, res.residual)
    if args.format == "csv":
        text = "gate,tau_x_g_over_2pi\n" + "".join(
            f"{name},{tau!r}\n" for name, tau in rows)
        if args.out:
            Path(args.out).write_text(text)
        else:
            print(text, end="")
    else:
        _dump({"gates": [{"gate": g, "tau": t} for g, t in rows],
               "worst_residual": worst}, Path(args.out) if args.out else None)
    return 0 if worst < args.tol else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcforge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("synthesize", help="compile a two-qubit gate")
    ps.add_argument("--gate", help="cz|swap|iswap|sqrt_iswap|uzz|upsiplus")
    ps.add_argument("--phi", type=float, help="angle for uzz/upsiplus")
    ps.add_argument("--phases", help="phi00,phiPsiPlus,phi11")
    ps.add_argument("--tol", type=float, default=1e-8)
    ps.add_argument("--out")
    ps.set_defaults(fn=cmd_synthesize)

    pm = sub.add_parser("simulate", help="evolve a circuit file")
    pm.add_argument("circuit")
    pm.add_argument("--state", help='initial qubit state: bits or psi+/psi-')
    pm.add_argument("--unitary", action="store_true",
                    help="emit per-sector blocks (default)")
    pm.add_argument("--qmax", type=int)
    pm.add_argument("--out")
    pm.set_defaults(fn=cmd_simulate)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=sorted(_SUITES))
    pv.add_argument("--n", type=int, default=3)
    pv.add_argument("--qmax", type=int, default=8)
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.add_argument("--override-scale", action="store_true")
    pv.add_argument("--out")
    pv.set_defaults(fn=cmd_verify)

    pc = sub.add_parser("sectors", help="tabulate sectors and partners")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--qmax", type=int, default=DESK_QMAX)
    pc.add_argument("--format", choices=("json", "csv"), default="json")
    pc.add_argument("--out")
    pc.set_defaults(fn=cmd_sectors)

    pr = sub.add_parser("report", help="gate-time table for the named gates")
    pr.add_argument("--format", choices=("json", "csv"), default="json")
    pr.add_argument("--tol", type=float, default=1e-8)
    pr.add_argument("--out")
    pr.set_defaults(fn=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
