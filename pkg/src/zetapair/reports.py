"""Deterministic report writing: JSON per check, CSV summary, sidecar.

The scientific payload (JSON reports and summary.csv) is byte-identical
across runs and worker counts; wall-clock timings go to timings.csv so
they never perturb the payload.  The summary keeps its fixed column
layout including the wall_ms column, whose values live in the sidecar.
"""

from __future__ import annotations

import csv
import json
import os

from .harness import ARTIFACT_VERSION, ORDERING_VERSION

SUMMARY_COLUMNS = ["scenario", "check", "status", "residual", "tolerance", "terms", "wall_ms"]


def check_report_path(out_dir, scenario_name, check):
    return os.path.join(out_dir, f"{scenario_name}_{check}.json")


def write_check_report(out_dir, scenario_name, result):
    os.makedirs(out_dir, exist_ok=True)
    doc = {
        "artifact_version": ARTIFACT_VERSION,
        "ordering_version": ORDERING_VERSION,
        "scenario": scenario_name,
        "check": result.check,
        "status": result.status,
        "residual": result.residual,
        "tolerance": result.tolerance,
        "terms": result.terms,
        "payload": result.payload,
    }
    path = check_report_path(out_dir, scenario_name, result.check)
    with open(path, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    for name, (columns, rows) in sorted(result.tables.items()):
        tpath = os.path.join(out_dir, f"{scenario_name}_{name}.csv")
        with open(tpath, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(rows)
    return path


def write_summary(out_dir, scenario_name, results):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "summary.csv")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for r in results:
            writer.writerow(
                [scenario_name, r.check, r.status, repr(r.residual),
                 repr(r.tolerance), r.terms, ""]
            )
    return path


def write_timings(out_dir, scenario_name, timings):
    """Sidecar with wall-clock data, excluded from byte-identity."""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "timings.csv")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scenario", "check", "wall_ms"])
        for check, ms in timings:
            writer.writerow([scenario_name, check, f"{ms:.1f}"])
    return path
