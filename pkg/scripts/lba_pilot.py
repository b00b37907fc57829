#!/usr/bin/env python3
"""LBA success rate against Hirsch length on a fixed seed range.

This is the pilot behind the frozen trend threshold; rerun it to check the
published numbers.
"""

import argparse
import collections
import time

from pcw.attacks import LbaConfig, lba
from pcw.platform import by_name
from pcw.protocols import AagParams, aag_run
from pcw.rng import Rng

GROUPS = "heisenberg,ut:4,ut:6,zsqrt2,tri:4:2,tri:12:3"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", default=GROUPS)
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--first-seed", type=int, default=1)
    ap.add_argument("--memory", type=int, default=2)
    ap.add_argument("--max-iter", type=int, default=10_000)
    ap.add_argument("--params", default="5,5,2,4,4", help="N1,N2,L1,L2,L")
    args = ap.parse_args()

    params = AagParams(*map(int, args.params.split(",")))
    cfg = LbaConfig(memory=args.memory, max_iterations=args.max_iter)
    print(f"{'group':<12}{'H':>4}{'success':>10}{'rate':>7}  fail reasons   time")
    for name in args.groups.split(","):
        pg = by_name(name)
        t0 = time.perf_counter()
        wins, reasons = 0, collections.Counter()
        for seed in range(args.first_seed, args.first_seed + args.seeds):
            t = aag_run(pg, params, Rng(seed))
            res = lba(t, cfg)
            if res.success:
                assert res.key == t.key, f"unsound success on {name} seed {seed}"
                wins += 1
            else:
                reasons[res.reason] += 1
        print(f"{pg.name:<12}{pg.hirsch:>4}{wins:>7}/{args.seeds:<3}{wins / args.seeds:>6.2f}  "
              f"{dict(reasons)!s:<14}{time.perf_counter() - t0:5.1f}s")


if __name__ == "__main__":
    main()
