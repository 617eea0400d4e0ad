#!/usr/bin/env python3
"""Recompute simulation metrics from the CSV logs and compare with report.json.

Usage: check_logs.py OUTPUT_DIR

Only the trip log, the rider ledger and the config echo are used; nothing is
shared with the simulator. Exits nonzero on the first mismatch class found.
"""
import csv
import json
import math
import sys
from pathlib import Path


def clipped(lo, hi, horizon):
    return max(0, min(hi, horizon) - max(lo, 0))


def opt_int(text):
    return int(text) if text != "" else None


def main(out_dir):
    out = Path(out_dir)
    report = json.loads((out / "report.json").read_text())
    sim = report["config"]["simulation"]
    veh = report["config"]["vehicle"]
    horizon, fleet = sim["minutes"], sim["fleet"]
    buffer, turnaround, capacity = veh["buffer_min"], veh["turnaround_min"], veh["capacity"]
    charge_after_repo = sim["charge_after_reposition"]
    codes = report["network"]["nodes"]
    index = {c: k for k, c in enumerate(codes)}

    with open(out / "trips.csv", newline="") as f:
        trips = list(csv.DictReader(f))
    with open(out / "riders.csv", newline="") as f:
        riders = list(csv.DictReader(f))

    rev_air = repo_air = buf = charge = 0
    seats = revenue_trips = reposition_trips = 0
    for t in trips:
        dep, arr = int(t["depart_min"]), int(t["arrive_min"])
        buf += clipped(dep, dep + buffer, horizon)
        air = clipped(dep + buffer, arr, horizon)
        if t["kind"] == "Revenue":
            revenue_trips += 1
            seats += len(t["riders"].split(";")) if t["riders"] else 0
            rev_air += air
        else:
            reposition_trips += 1
            repo_air += air
        if t["kind"] == "Revenue" or charge_after_repo:
            charge += clipped(arr, arr + turnaround, horizon)

    fleet_min = fleet * horizon
    n = len(codes)
    served_matrix = [[0] * n for _ in range(n)]
    waits = []
    served = onboard = unserved = 0
    for r in riders:
        board, drop = opt_int(r["board_min"]), opt_int(r["dropoff_min"])
        if drop is not None:
            served += 1
            served_matrix[index[r["origin"]]][index[r["dest"]]] += 1
            waits.append(board - int(r["arrival_min"]))
        elif board is not None:
            onboard += 1
        else:
            unserved += 1

    expected = {
        "u_air": rev_air / fleet_min,
        "u_air_incl_reposition": (rev_air + repo_air) / fleet_min,
        "u_cycle": (rev_air + repo_air + buf + charge) / fleet_min,
        "load_factor": seats / (revenue_trips * capacity) if revenue_trips else None,
        "generated": len(riders),
        "served": served,
        "onboard_at_end": onboard,
        "unserved": unserved,
        "revenue_trips": revenue_trips,
        "reposition_trips": reposition_trips,
        "mean_wait": sum(waits) / len(waits) if waits else None,
        "p95_wait": sorted(waits)[(95 * len(waits) + 99) // 100 - 1] if waits else None,
    }
    metrics = report["metrics"]
    failures = []
    for key, want in expected.items():
        got = metrics[key]
        same = (got is None and want is None) or (
            got is not None and want is not None and math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12))
        print(f"{key:24s} log={want!r:24s} report={got!r}")
        if not same:
            failures.append(key)
    if metrics["throughput"]["matrix"] != served_matrix:
        failures.append("throughput")
    print(f"{'throughput':24s} {'match' if 'throughput' not in failures else 'MISMATCH'}")
    if served + onboard + unserved != len(riders):
        failures.append("conservation")

    if failures:
        print("FAIL: " + ", ".join(failures))
        return 1
    print("OK")
    return 0


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    sys.exit(main(sys.argv[1]))
