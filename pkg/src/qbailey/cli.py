"""Command-line front end: verification runs, batch campaigns, JSON reports.

Exit codes: 0 pass, 1 coefficient mismatch, 2 usage/parameter error,
3 internal/truncation error.  Cutoffs are given in halves (lattice units of
q^(1/2)) everywhere.  Parameter syntax: 'c*q^(h/2)' with c a rational
literal, plus the shortcuts 'q', 'q^2', '-q^(1/2)', plain rationals, '0'
and 'inf'.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import BadParam, PoleError, QBaileyError, TruncationUnreachable, UnknownIdentity
from .qparams import parse_qparam
from .catalog import CATALOG, evaluate_identity, identity_names
from .transforms import REGISTRY
from .checks import transform_soundness, composition_checks

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _parse_params(pairs):
    out = {}
    for raw in pairs or []:
        if "=" not in raw:
            raise BadParam(f"parameter must look like name=value, got {raw!r}")
        name, val = raw.split("=", 1)
        out[name.strip()] = val.strip()
    return out


def _coerce_identity_params(name, raw):
    desc = CATALOG[name]
    params = {}
    for key in desc.int_params:
        if key not in raw:
            raise BadParam(f"{name} needs --param {key}=<int>")
        params[key] = int(raw.pop(key))
    for key in desc.qparam_params:
        if key not in raw:
            raise BadParam(f"{name} needs --param {key}=<qparam>")
        params[key] = parse_qparam(raw.pop(key))
    for key in desc.list_params:
        vals = []
        idx = 1
        while f"{key[:-1]}{idx}" in raw or f"{key}{idx}" in raw:
            k = f"{key[:-1]}{idx}" if f"{key[:-1]}{idx}" in raw else f"{key}{idx}"
            vals.append(parse_qparam(raw.pop(k)))
            idx += 1
        params[key] = vals
    if raw:
        raise BadParam(f"unknown parameters for {name}: {sorted(raw)}")
    return params


def _write_report(report_dir, stem, payload):
    if not report_dir:
        return
    path = Path(report_dir)
    path.mkdir(parents=True, exist_ok=True)
    out = path / f"{stem}.json"
    with open(out, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_verify(args) -> int:
    raw = _parse_params(args.param)
    for short in ("m", "r", "i", "k"):
        val = getattr(args, short, None)
        if val is not None:
            raw[short] = str(val)
    name = args.identity
    if name not in CATALOG:
        print(f"unknown identity {name!r}; try: {', '.join(identity_names())}",
              file=sys.stderr)
        return EXIT_USAGE
    params = _coerce_identity_params(name, raw)
    t0 = time.perf_counter()
    report = evaluate_identity(name, params, args.cutoff)
    if args.inject_fault is not None:
        # self-test hook: perturb one LHS coefficient and re-compare
        from .series import Series, first_diff
        lhs = Series(dict(report.lhs.terms), report.lhs.cutoff)
        lhs.terms[args.inject_fault] = lhs.terms.get(args.inject_fault, 0) + 1
        compared, diff = first_diff(lhs, report.rhs, args.cutoff)
        report.lhs = lhs
        report.passed = diff is None
        report.compared = compared
        report.first_divergence = None if diff is None else {
            "exponent_halves": diff[0], "lhs_coeff": diff[1], "rhs_coeff": diff[2]}
    report.runtime_ms = (time.perf_counter() - t0) * 1000.0
    payload = report.to_json()
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        n_matched = len(set(report.lhs.terms) | set(report.rhs.terms))
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{verdict} {name} {report.params} cutoff=x^{args.cutoff} "
              f"({n_matched} coefficients, {report.runtime_ms:.0f} ms)")
        if not report.passed:
            print(f"  first divergence: {report.first_divergence}", file=sys.stderr)
    _write_report(args.report_dir, f"verify_{name}_{int(time.time() * 1000)}", payload)
    return EXIT_PASS if report.passed else EXIT_MISMATCH


def cmd_transform_check(args) -> int:
    name = args.transform
    if name not in REGISTRY:
        print(f"unknown transform {name!r}; try: {', '.join(sorted(REGISTRY))}",
              file=sys.stderr)
        return EXIT_USAGE
    results = transform_soundness(name, trials=args.trials, seed=args.seed,
                                  cutoff=args.cutoff,
                                  n_min=args.n_min, n_max=args.n_max)
    comp = composition_checks(name, seed=args.seed, cutoff=min(args.cutoff, 40))
    ok = all(r["passed"] for r in results) and all(c["passed"] for c in comp)
    payload = {
        "transform": name,
        "seed": args.seed,
        "cutoff_halves": args.cutoff,
        "soundness": results,
        "compositions": comp,
        "passed": ok,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for r in results:
            print(f"{'PASS' if r['passed'] else 'FAIL'} soundness {name} "
                  f"pair={r['pair']} params={r['params']}")
        for c in comp:
            print(f"{'PASS' if c['passed'] else 'FAIL'} composition {c['label']}")
    _write_report(args.report_dir, f"transform_{name}_{args.seed}", payload)
    return EXIT_PASS if ok else EXIT_MISMATCH


def run_entry(entry: dict) -> dict:
    """Execute one batch entry (a verify or transform-check config)."""
    cmd = entry.get("command")
    t0 = time.perf_counter()
    try:
        if cmd == "verify":
            raw = {k: str(v) for k, v in entry.get("params", {}).items()}
            params = _coerce_identity_params(entry["identity"], raw)
            rep = evaluate_identity(entry["identity"], params, int(entry["cutoff"]))
            out = rep.to_json()
            if entry.get("inject_fault") is not None:
                h = int(entry["inject_fault"])
                from .series import Series, first_diff
                lhs = Series(dict(rep.lhs.terms), rep.lhs.cutoff)
                lhs.terms[h] = lhs.terms.get(h, 0) + 1
                _, diff = first_diff(lhs, rep.rhs, int(entry["cutoff"]))
                out["passed"] = diff is None
                if diff is not None:
                    out["first_divergence"] = {
                        "exponent_halves": diff[0],
                        "lhs_coeff": str(diff[1]), "rhs_coeff": str(diff[2])}
        elif cmd == "transform-check":
            results = transform_soundness(entry["transform"],
                                          trials=int(entry.get("trials", 3)),
                                          seed=int(entry.get("seed", 0)),
                                          cutoff=int(entry.get("cutoff", 40)))
            out = {"transform": entry["transform"],
                   "passed": all(r["passed"] for r in results),
                   "soundness": results}
        else:
            return {"entry": entry, "passed": False,
                    "error": f"unknown command {cmd!r}", "usage_error": True}
    except (BadParam, UnknownIdentity) as e:
        return {"entry": entry, "passed": False, "error": str(e), "usage_error": True}
    except QBaileyError as e:
        return {"entry": entry, "passed": False, "error": str(e), "internal_error": True}
    out["entry"] = entry
    out["runtime_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return out


def cmd_batch(args) -> int:
    try:
        with open(args.file) as fh:
            entries = json.load(fh)
        if not isinstance(entries, list):
            raise ValueError("batch file must hold a JSON array")
    except (OSError, ValueError) as e:
        print(f"cannot read batch file: {e}", file=sys.stderr)
        return EXIT_USAGE
    workers = int(os.environ.get("QBAILEY_WORKERS", "1"))
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_entry, entries))
    else:
        results = [run_entry(e) for e in entries]
    n_pass = sum(1 for r in results if r.get("passed"))
    usage = any(r.get("usage_error") for r in results)
    internal = any(r.get("internal_error") for r in results)
    summary = {
        "total": len(entries),
        "passed": n_pass,
        "failed": len(entries) - n_pass,
        "results": results,
    }
    if args.format == "json":
        print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    else:
        print(f"batch: {n_pass}/{len(entries)} passed")
        for r in results:
            if not r.get("passed"):
                print(f"  FAIL {r.get('entry')}: {r.get('error', 'mismatch')}")
    _write_report(args.report_dir, "batch_summary", summary)
    if usage:
        return EXIT_USAGE
    if internal:
        return EXIT_INTERNAL
    return EXIT_PASS if n_pass == len(entries) else EXIT_MISMATCH


def cmd_list(args) -> int:
    identities = [CATALOG[n].to_json() for n in identity_names()]
    transforms = [REGISTRY[n].to_json() for n in sorted(REGISTRY)]
    if args.format == "json":
        print(json.dumps({"identities": identities, "transforms": transforms},
                         indent=2, sort_keys=True))
    else:
        print("identities:")
        for d in identities:
            print(f"  {d['name']:16s} {d['summary']}  [{d['domain']}]")
        print("transforms:")
        for d in transforms:
            print(f"  {d['id']:16s} {d['summary']}  (a -> {d['relative_parameter']})")
    return EXIT_PASS


def build_parser():
    p = argparse.ArgumentParser(prog="qbailey",
                                description="exact q-series identity verifier")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--report-dir", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify one identity at given parameters")
    v.add_argument("--identity", required=True)
    v.add_argument("--cutoff", type=int, required=True,
                   help="truncation order in halves (x = q^(1/2))")
    v.add_argument("--m", type=int, default=None)
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--i", type=int, default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--param", action="append",
                   help="extra parameter name=value (repeatable)")
    v.add_argument("--inject-fault", type=int, default=None, metavar="HALVES",
                   help="self-test: bump the LHS coefficient at this exponent")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform-check", help="run the transform soundness suite")
    t.add_argument("--transform", required=True)
    t.add_argument("--trials", type=int, default=5)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--cutoff", type=int, default=60)
    t.add_argument("--n-min", type=int, default=-6)
    t.add_argument("--n-max", type=int, default=6)
    t.set_defaults(func=cmd_transform_check)

    b = sub.add_parser("batch", help="run a JSON array of configs")
    b.add_argument("--file", required=True)
    b.set_defaults(func=cmd_batch)

    l = sub.add_parser("list", help="list identities and transforms")
    l.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except (BadParam, UnknownIdentity) as e:
        print(f"parameter error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TruncationUnreachable, PoleError) as e:
        print(f"evaluation error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except QBaileyError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
