#!/usr/bin/env python3
"""Compile the catalytic QFT, verify its defining laws exactly, and report.

Usage: python scripts/qft_demo.py [n] [--expand]
"""

import argparse

from catembed.circuits import gate_leaves
from catembed.compilers import compile_inverse_QFT, compile_QFT, dft_matrix
from catembed.matrix import ExactMatrix
from catembed.simulate import basis_state, check_catalytic_action, check_galois_action, state_make


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("n", type=int, nargs="?", default=3)
    parser.add_argument("--expand", action="store_true")
    args = parser.parse_args()
    n = args.n

    program = compile_QFT(n, expand_decrementers=args.expand)
    leaves = gate_leaves(program.circuit)
    print(f"compiled QFT on {n} qubits ({'expanded' if args.expand else 'decrementer blocks'})")
    print(f"  wires: {n} data + {len(program.catalysts)} catalyst"
          + (f" + {program.extra_wires} workspace" if program.extra_wires else ""))
    print(f"  gate leaves: {len(leaves)}  ({', '.join(sorted(set(leaves)))})")
    for c in program.catalysts:
        print(f"  catalyst {c.label}: {[str(e) for e in c.vector.entries]}  norm^2 = {c.norm_sq}")

    if n > 4:
        print("  (n > 4: construction only, simulation skipped)")
        return

    probes = [basis_state(2**n, j) for j in range(2**n)]
    forward = check_catalytic_action(program, program.source_matrix, probes)
    print(f"  catalytic law on all {2**n} basis probes: {'PASS' if forward.ok else 'FAIL'}")

    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    conj = [state_make(list((x @ c.vector).entries)) for c in program.catalysts]
    twisted = check_galois_action(program, conj, dft_matrix(n).dagger(), probes)
    print(f"  inverse transform on X-conjugated catalysts: {'PASS' if twisted.ok else 'FAIL'}")

    inverse = compile_inverse_QFT(n, expand_decrementers=args.expand)
    back = check_catalytic_action(inverse, inverse.source_matrix, probes)
    print(f"  compile_inverse_QFT law: {'PASS' if back.ok else 'FAIL'}")

    if not (forward.ok and twisted.ok and back.ok):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
