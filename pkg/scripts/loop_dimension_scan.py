#!/usr/bin/env python3
"""Measure dimensions of loop network varieties against the closed form.

Critical loops (every vertex dimension equal to the product of its two
edge dimensions) should land exactly on the count from expected_dim;
the script prints the sampled Jacobian rank next to it so drift is
visible immediately.  Pass --supercritical to pad the first vertex and
watch the offset term kick in.
"""
from __future__ import annotations

import argparse

from tngeom import expected_dim, loop_graph, tns_dim


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--edge-dim", type=int, default=2)
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--supercritical", type=int, default=0,
                    help="extra rows added to the first vertex dimension")
    args = ap.parse_args()

    e = args.edge_dim
    print(f"{'n':>3} {'vertex dims':>18} {'sampled':>8} {'formula':>8}")
    for n in range(args.min_n, args.max_n + 1):
        vdims = [e * e] * n
        vdims[0] += args.supercritical
        g = loop_graph((e,) * n, vertex_dims=tuple(vdims))
        sampled = tns_dim(g, seed=args.seed)
        formula = expected_dim(g)
        shown = "?" if formula is None else str(formula)
        flag = "" if formula in (None, sampled) else "  <-- MISMATCH"
        print(f"{n:>3} {str(tuple(vdims)):>18} {sampled:>8} {shown:>8}{flag}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
