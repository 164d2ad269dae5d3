#!/usr/bin/env python3
"""Regenerate the frozen snapshot files under tests/snapshots/.

Enumeration counts come from the brute-force walk (pruning disabled) so the
pruned enumerator is held to an independently produced reference.  Re-run
only when a change to the expected output is intended, then review the diff.
"""

import io
import json
import sys
from pathlib import Path

from stiefelsw import cli
from stiefelsw.cohomology import make_ring
from stiefelsw.wu import enumerate_systems, system_record

SNAP = Path(__file__).resolve().parent.parent / "tests" / "snapshots"

JSONL_RINGS = [(4, 2), (5, 2), (6, 3)]

CLI_COMMANDS = {
    "basis_n4_k2_d5": ["basis", "--n", "4", "--k", "2", "--degree", "5", "--json"],
    "basis_n5_k3": ["basis", "--n", "5", "--k", "3", "--json"],
    "phi_0": ["phi", "0", "--json"],
    "binom_7_2": ["binom", "7", "2", "--json"],
    "mul_n5_k3": ["mul", "--n", "5", "--k", "3", "a2", "a2*a3", "--json"],
    "sq_n7_k3": ["sq", "--n", "7", "--k", "3", "--i", "1", "a4*a5", "--json"],
    "tbands_n7_k3": ["tbands", "--n", "7", "--k", "3", "--json"],
    "wu_check_n5_k2": ["wu-check", "--n", "5", "--k", "2", "--w", "3=a3", "--json"],
    "enumerate_n5_k4": ["enumerate", "--n", "5", "--k", "4", "--json"],
    "derive_n7_k3_q2": ["derive", "--n", "7", "--k", "3", "--q", "2", "--json"],
    "verify_thm1_n7_k3": ["verify-thm1", "--n", "7", "--k", "3", "--json"],
    "verify_thm2_n7_k3": ["verify-thm2", "--n", "7", "--k", "3", "--json"],
    "axioms_n6_k3": ["axioms", "--n", "6", "--k", "3", "--json"],
    "derive_n7_k4_unmet": ["derive", "--n", "7", "--k", "4", "--q", "2", "--json"],
}


def counts():
    out = {}
    for k in range(1, 5):
        for n in range(k + 1, 11):
            ring = make_ring(n, k)
            row = {"wu": sum(1 for _ in enumerate_systems(ring, prune=False))}
            if n >= 2 * k:
                row["wu_cor22"] = sum(
                    1 for _ in enumerate_systems(ring, require_cor22=True, prune=False)
                )
            out[f"{n},{k}"] = row
            print(f"V_{k}(R^{n}): {row}", file=sys.stderr)
    return out


def main():
    SNAP.mkdir(parents=True, exist_ok=True)
    data = {"source": "brute force, pruning disabled", "counts": counts()}
    (SNAP / "enumeration_counts.json").write_text(json.dumps(data, indent=1) + "\n")

    for n, k in JSONL_RINGS:
        ring = make_ring(n, k)
        lines = [
            json.dumps(system_record(s, True)) for s in enumerate_systems(ring, prune=False)
        ]
        (SNAP / f"enumerate_n{n}_k{k}.jsonl").write_text("\n".join(lines) + "\n")

    for name, argv in CLI_COMMANDS.items():
        buf = io.StringIO()
        code = cli.main(argv, out=buf)
        payload = {"argv": argv, "exit_code": code, "stdout": json.loads(buf.getvalue())}
        (SNAP / f"cli_{name}.json").write_text(json.dumps(payload, indent=1) + "\n")


if __name__ == "__main__":
    main()
