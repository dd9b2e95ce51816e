#!/usr/bin/env python3
"""Demonstration run: closed-form golden values and the bounded/unbounded
variation contrast, with refinement traces written as CSV.

Usage:
    python scripts/golden_demo.py [--out-dir traces]
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

from bivar import (
    BVFunction,
    Interval,
    RefineConfig,
    TaggedAdversary,
    adversary_partition_sum,
    bv_two_norm_2G,
    estimate_variation,
    euclidean_modulus,
    parse_constant_vector,
    pairing_by_name,
    resolve_function,
    vec,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="traces", help="where to write trace CSVs")
    args = parser.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    euclid = euclidean_modulus()
    modprod = pairing_by_name("modulus-product")
    k2 = parse_constant_vector("sqrt(2)")
    k1 = vec(1)

    print("== linear catalog function, variation 2(b-a) on any interval ==")
    for lo, hi in ((0.0, 1.0), (1.0, 2.0), (-2.0, 3.5)):
        spec = resolve_function("linear_ii", domain=Interval(lo, hi))
        est = estimate_variation(spec, euclid, k2)
        print(f"  [{lo:5.1f}, {hi:4.1f}]  V = {est.value:.12f}   "
              f"expected {2 * (hi - lo):.12f}   ({est.status})")

    print("\n== symmetric two-norm of f with itself, f linear on [a, b] ==")
    for lo, hi in ((1.0, 2.0), (2.0, 5.0)):
        spec = resolve_function("linear_ii", domain=Interval(lo, hi))
        f = BVFunction.build(spec, euclid, k2)
        norm = bv_two_norm_2G(f, f)
        print(f"  [{lo:.0f}, {hi:.0f}]  ||f, f|| = {norm:.12f}   "
              f"expected 8|a|(b-a) = {8 * abs(lo) * (hi - lo):.12f}")

    print("\n== two-valued adversary: bounded image, unbounded sums ==")
    adv = TaggedAdversary(vec(2j, -1j), vec(0, 0), Interval(math.sqrt(3.0), 2.0))
    k_half = vec(-0.5j)
    sup = max(euclid.evaluate(v, k_half) for v in (adv.hi_value, adv.lo_value))
    print(f"  sup ||g(x), k|| = {sup:.12f}  (= sqrt(5)/2)")
    for n in (1, 10, 100, 1000):
        total = adversary_partition_sum(adv, euclid, k_half, n)
        print(f"  n = {n:5d}   alternating-partition sum = {total:16.10f}  (= n*sqrt(5)/2)")

    print("\n== refinement traces: bounded vs unbounded oscillation ==")
    for fn_id, cfg in (
        ("x2sin_inv_x", RefineConfig(max_points=2 ** 14)),
        ("xsin_inv_x", RefineConfig()),
    ):
        spec = resolve_function(fn_id)
        est = estimate_variation(spec, modprod, k1, cfg)
        path = out_dir / f"{fn_id}_trace.csv"
        path.write_text(
            "level,points,sum\n"
            + "\n".join(f"{t.level},{t.points},{t.sum!r}" for t in est.trace)
            + "\n"
        )
        print(f"  {fn_id:12s}  status = {est.status:16s}  value = {est.value:.6f}  "
              f"levels = {len(est.trace):2d}  trace -> {path}")


if __name__ == "__main__":
    main()
