#!/usr/bin/env python3
"""Compile the named two-qubit gates and print the interaction-time table.

Usage: python scripts/gate_times.py [--csv out.csv]
"""

import argparse

from tcforge import synthesis as syn
from tcforge.dynamics import apply_circuit, distance_up_to_phase, \
    vacuum_sandwich

GATES = ["cz", "swap", "iswap", "sqrt_iswap", "upsiplus"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--csv")
    ap.add_argument("--phi", type=float, default=0.7,
                    help="angle for the zz-evolution row")
    args = ap.parse_args()

    rows = []
    print(f"{'gate':<12} {'tau x g/2pi':>12} {'pulses':>7} {'residual':>10} "
          f"{'dist to target':>15}")
    for name in GATES + ["uzz"]:
        res = syn.named_gate(name, phi=args.phi if name == "uzz" else None)
        vs = vacuum_sandwich(apply_circuit(res.circuit, 2))
        dist = distance_up_to_phase(vs.matrix, res.target)
        pulses = sum(1 for g in res.circuit.gates if g.kind == "tc")
        label = f"uzz({args.phi})" if name == "uzz" else name
        print(f"{label:<12} {res.tau:>12.4f} {pulses:>7d} "
              f"{res.residual:>10.2e} {dist:>15.2e}")
        rows.append((label, res.tau))

    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("gate,tau_x_g_over_2pi\n")
            for label, tau in rows:
                fh.write(f"{label},{tau!r}\n")
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
