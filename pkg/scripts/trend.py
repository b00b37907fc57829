#!/usr/bin/env python3
"""Collection time versus conjugacy search, by Hirsch length.

Prints one line per group and optionally writes the full report.
"""

import argparse
import logging

from pcw.bench import ExperimentConfig, ExperimentReport, bench_collection, bench_csp, emit_report, environment

GROUPS = "heisenberg,zsqrt2,ut:4,tri:4:2,ut:6,tri:12:3"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", default=GROUPS)
    ap.add_argument("--collect-trials", type=int, default=100)
    ap.add_argument("--csp-trials", type=int, default=10)
    ap.add_argument("--max-nodes", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=4)
    ap.add_argument("--out", help="write the report here (csv or json by suffix)")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    groups = tuple(args.groups.split(","))
    report = ExperimentReport(seed=args.seed, environment=environment())
    report.extend(bench_collection(ExperimentConfig(groups=groups, trials=args.collect_trials, seed=args.seed)))
    report.extend(bench_csp(ExperimentConfig(groups=groups, trials=args.csp_trials, seed=args.seed,
                                             max_nodes=args.max_nodes)))

    names = list(dict.fromkeys(r.group for r in report.rows))
    print(f"{'group':<12}{'H':>4}{'collect ms':>12}{'csp solved':>12}{'csp s/inst':>12}")
    for g in names:
        h = next(r.hirsch for r in report.rows if r.group == g)
        n = args.csp_trials
        print(f"{g:<12}{h:>4}{report.get(g, 'collect_mean'):>12.3f}"
              f"{int(report.get(g, 'csp_solved')):>9}/{n:<2}{report.get(g, 'csp_time_mean'):>12.2f}")
    if args.out:
        emit_report(report, "json" if args.out.endswith(".json") else "csv", args.out)


if __name__ == "__main__":
    main()
