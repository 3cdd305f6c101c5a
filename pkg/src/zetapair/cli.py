"""Command-line front end.

    zetapair verify --config scenario.ini [--out-dir out] [--threads N] [--seed S]
    zetapair zeta-compare --config ... (and the other single checks)
    zetapair enumerate --config ...    (debug dump of windows/cosets/classes)

Exit codes: 0 all checks within tolerance, 1 any check failed,
2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .config import KNOWN_CHECKS, build_scene, load_scenario
from .conjugacy import class_reps
from .errors import ConfigError, ZetapairError
from .groups import enumerate_elements
from .harness import run_check
from .reports import write_check_report, write_summary, write_timings

SINGLE_CHECKS = tuple(KNOWN_CHECKS)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="zetapair",
        description="verification harness for induced-representation identities "
        "on arithmetic group pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify",) + SINGLE_CHECKS + ("enumerate",):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="scenario INI file")
        p.add_argument("--out-dir", default="reports", help="report directory")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (overrides scenario)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for synthetic scattering matrices")
    args = parser.parse_args(argv)

    try:
        scenario = load_scenario(args.config)
        if args.threads is not None:
            scenario.policy = scenario.policy.replace(threads=args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "enumerate":
            return _enumerate_dump(scenario)
        scene = build_scene(scenario)
        checks = scenario.checks if args.command == "verify" else [args.command]
        results = []
        timings = []
        for check in checks:
            t0 = time.perf_counter()
            result = run_check(check, scene, seed=args.seed)
            ms = (time.perf_counter() - t0) * 1000.0
            timings.append((check, ms))
            results.append(result)
            path = write_check_report(args.out_dir, scenario.name, result)
            print(f"{scenario.name}/{check}: {result.status} "
                  f"(residual {result.residual:.3g}, tolerance {result.tolerance:.3g}) "
                  f"-> {path}")
        write_summary(args.out_dir, scenario.name, results)
        write_timings(args.out_dir, scenario.name, timings)
        failed = [r for r in results if not r.passed]
        if failed:
            print(f"FAILED: {', '.join(r.check for r in failed)}", file=sys.stderr)
            return 1
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ZetapairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _enumerate_dump(scenario):
    scene = build_scene(scenario)
    pair = scene.pair
    pol = scene.policy
    window = enumerate_elements(pair.gamma_tilde, pol.entry_bound)
    sub_window = enumerate_elements(pair.gamma, pol.entry_bound)
    classes = class_reps(pair.gamma_tilde, pol.norm_cutoff, pol)
    doc = {
        "scenario": scenario.name,
        "group": repr(pair.gamma),
        "index": pair.n,
        "cusps": [
            {
                "label": c.label,
                "width": c.width,
                "sigma": repr(c.sigma),
                "stabilizer_generators": [repr(g) for g in c.stab_gens],
            }
            for c in pair.cusps
        ],
        "alphas": [repr(a) for a in pair.alphas],
        "window_size_ambient": len(window),
        "window_size_subgroup": len(sub_window),
        "kappa": scene.singular.kappa,
        "classes_in_norm_cutoff": [
            {"rep": repr(c.rep), "N": c.N, "N0": c.N0, "k": c.k, "m": c.m}
            for c in classes.classes
        ],
    }
    json.dump(doc, sys.stdout, sort_keys=True, indent=2)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
